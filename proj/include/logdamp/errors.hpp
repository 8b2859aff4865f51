#pragma once

#include <stdexcept>
#include <string>

namespace logdamp {

// Base for every failure raised by the library. Callers that only need to
// report can catch this; the subclasses exist so tests and the CLI can tell
// the failure modes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class TailNotBounded : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NonPositiveValues : public Error {
 public:
  using Error::Error;
};

// Invalid user configuration; `field` names the offending key or flag.
class ConfigInvalid : public Error {
 public:
  ConfigInvalid(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace logdamp
