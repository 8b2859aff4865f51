#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logdamp/symbols.hpp"

namespace logdamp {

// Initial-datum families whose Fourier transforms are known in closed form.
//   zero               u = 0
//   gaussian(a)        u = exp(-a |x|^2)
//   zero_mean_pair     u = exp(-|x|^2) - 2^(N/2) exp(-2 |x|^2)     (mass 0)
//   shifted_gaussian   u = exp(-|x - offset e_1|^2)               (non-radial)
enum class ProfileKind { zero, gaussian, zero_mean_pair, shifted_gaussian };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::zero;
  double param = 0.0;  // `a` for gaussian, `offset` for shifted_gaussian

  // Parses "zero", "gaussian:a=1", "zero_mean_pair", "shifted_gaussian:offset=0.5".
  // Throws ConfigInvalid.
  static ProfileSpec parse(std::string_view descriptor);
  std::string descriptor() const;
};

// Fourier convention: hat f(xi) = int f(x) exp(-i x.xi) dx.
class DataProfile {
 public:
  const ProfileSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return dim_; }
  std::string name() const { return spec_.descriptor(); }

  bool is_zero() const noexcept { return spec_.kind == ProfileKind::zero; }
  bool radial() const noexcept { return spec_.kind != ProfileKind::shifted_gaussian; }

  cplx hat(std::span<const double> xi) const;
  // hat at xi = r e_1.
  cplx hat_axis(double r) const;
  // Transform as a function of |xi| and the first coordinate xi_1.
  cplx hat_polar(double r, double xi1) const;

  double mass() const noexcept { return mass_; }     // P1 = int u dx = hat(0)
  double l1() const noexcept { return l1_; }         // ||u||_1
  double l11() const noexcept { return l11_; }       // ||u||_{1,1} = int (1 + |x|) |u| dx
  double l2() const noexcept { return l2_; }         // ||u||_2

 private:
  friend DataProfile make_profile(const ProfileSpec& spec, int dim);
  DataProfile(ProfileSpec spec, int dim) : spec_(spec), dim_(dim) {}

  ProfileSpec spec_;
  int dim_;
  double mass_ = 0.0;
  double l1_ = 0.0;
  double l11_ = 0.0;
  double l2_ = 0.0;
};

DataProfile make_profile(const ProfileSpec& spec, int dim);
DataProfile make_profile(std::string_view descriptor, int dim);

// hat u1(xi) = A(xi) - i B(xi) + P1.
struct Decomposition {
  double A;
  double B;
};

Decomposition decompose(const DataProfile& profile, std::span<const double> xi);

struct ProfileTerms {
  cplx f1;
  cplx f2;
  cplx f3;
  cplx u_hat;  // paper-mode solution with u0 = 0
};

// F2 is either the exact remainder u_hat - F1 - F3 (default), or the
// mean-value expression (4/pi) P1 [pi/4 - sqrt(L)] e^(-L t/2) t cos(mu t) with
// mu = theta pi/4 + (1 - theta) sqrt(L) for a caller-chosen theta.
struct ThetaPolicy {
  std::optional<double> theta;
};

ProfileTerms profile_terms(const DataProfile& profile, std::span<const double> xi, double t,
                           ThetaPolicy policy = {});
ProfileTerms profile_terms(const DataProfile& profile, Frequency freq, double t,
                           ThetaPolicy policy = {});

// Upper bound (4/pi) |P1| |pi/4 - sqrt(L)| e^(-L t/2) t on |F2|.
double f2_bound(const DataProfile& profile, Frequency freq, double t);

}  // namespace logdamp
