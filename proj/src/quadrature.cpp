#include "logdamp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "logdamp/errors.hpp"

namespace logdamp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Kronrod abscissae and weights; the Gauss 7-point rule uses the odd entries.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double err;
  double resabs;
};

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
  }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::string msg = "integrand not finite at r=" + std::to_string(x);
    if (!f.singularity_note.empty()) msg += " (" + f.singularity_note + ")";
    throw NonConvergence(msg);
  }
  return y;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  const double fc = checked(f, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = checked(f, center - absc);
    const double f2 = checked(f, center + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = checked(f, center - absc);
    const double f2 = checked(f, center + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double width = std::abs(half);
  const double value = resk * half;
  resabs *= width;
  resasc *= width;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, value, err, resabs};
}

void check_breakpoints(std::span<const double> bp) {
  if (bp.size() < 2) {
    throw std::invalid_argument("integrate: need at least two breakpoints");
  }
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (!(bp[i] > bp[i - 1]) || !std::isfinite(bp[i]) || !std::isfinite(bp[i - 1])) {
      throw std::invalid_argument("integrate: breakpoints must be finite and increasing");
    }
  }
}

// Smallest Y >= y0 with Y^(N-2) exp(-Y^2) <= bound and Y^2 >= N - 1; the
// expression majorizes int_Y^inf exp(-y^2) y^(N-1) dy there.
double gaussian_cutoff(int dim, double bound, double y0 = 1.0) {
  double y = std::max(y0, std::sqrt(std::max(1.0, dim - 1.0)));
  while ((dim - 2) * std::log(y) - y * y > std::log(bound)) {
    y += 0.25;
  }
  return y;
}

void check_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
}

}  // namespace

QuadResult integrate(const Integrand& f, std::span<const double> breakpoints,
                     const QuadTolerance& tol) {
  check_breakpoints(breakpoints);
  if (tol.abs < 0.0 || tol.rel < 0.0 || (tol.abs == 0.0 && tol.rel == 0.0)) {
    throw std::invalid_argument("integrate: tolerance must be positive");
  }

  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> active;
  std::vector<Panel> frozen;
  double value = 0.0;
  double err = 0.0;
  double resabs = 0.0;
  std::size_t evals = 0;
  std::size_t panels = 0;

  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    Panel p = gauss_kronrod(f, breakpoints[i - 1], breakpoints[i]);
    evals += 15;
    ++panels;
    value += p.value;
    err += p.err;
    resabs += p.resabs;
    active.push(p);
  }

  const auto resum = [&] {
    value = err = resabs = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      const Panel& p = copy.top();
      value += p.value;
      err += p.err;
      resabs += p.resabs;
      copy.pop();
    }
    for (const Panel& p : frozen) {
      value += p.value;
      err += p.err;
      resabs += p.resabs;
    }
  };

  std::size_t since_resum = 0;
  while (true) {
    const double target = std::max(tol.abs, tol.rel * std::abs(value));
    const bool roundoff_limited = err <= 1.5 * 50.0 * kEps * resabs;
    if (err <= target || roundoff_limited || active.empty()) {
      resum();
      if (err <= std::max(tol.abs, tol.rel * std::abs(value)) || roundoff_limited ||
          active.empty()) {
        break;
      }
    }
    if (panels >= tol.max_panels) {
      std::string msg = "integrate: panel budget exhausted (value " + std::to_string(value) +
                        ", error " + std::to_string(err) + ")";
      if (!f.singularity_note.empty()) msg += " (" + f.singularity_note + ")";
      throw NonConvergence(msg);
    }

    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a) || !(mid < worst.b)) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evals += 30;
    ++panels;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    resabs += left.resabs + right.resabs - worst.resabs;
    active.push(left);
    active.push(right);
    if (++since_resum == 256) {
      resum();
      since_resum = 0;
    }
  }
  return {value, err, evals};
}

QuadResult integrate(const Integrand& f, double a, double b, double tol) {
  if (a > b) throw std::invalid_argument("integrate: need a <= b");
  if (a == b) return {0.0, 0.0, 0};
  const double bp[] = {a, b};
  return integrate(f, bp, QuadTolerance{tol, tol});
}

QuadResult integrate_to_infinity(const Integrand& f, std::span<const double> breakpoints,
                                 const QuadTolerance& tol) {
  if (breakpoints.empty()) {
    throw std::invalid_argument("integrate_to_infinity: need a lower limit");
  }
  if (breakpoints.size() > 1) check_breakpoints(breakpoints);
  const double last = breakpoints.back();
  // Beyond `last` the variable x in [last, last + 1) stands for
  // r = last + s / (1 - s) with s = x - last.
  Integrand mapped(
      [&f, last](double x) {
        if (x <= last) return f(x);
        const double s = x - last;
        const double q = 1.0 - s;
        const double r = last + s / q;
        const double y = f(r);
        return y == 0.0 ? 0.0 : y / (q * q);
      },
      f.singularity_note);
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  bp.push_back(last + 0.5);
  bp.push_back(last + 1.0);
  return integrate(mapped, bp, tol);
}

QuadResult integrate_with_tail(const Integrand& f, double a, const TailMajorant& tail,
                               const QuadTolerance& tol) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_with_tail: need a > 0");
  constexpr double kMaxLogRadius = 700.0;
  const double s0 = std::log(a);
  Integrand in_log([&f](double s) {
    const double r = std::exp(s);
    const double y = f(r);
    return y == 0.0 ? 0.0 : y * r;
  }, f.singularity_note);

  QuadResult total;
  double s_lo = s0;
  double span = 1.0;
  while (true) {
    const double s_hi = s0 + span;
    std::vector<double> bp;
    for (double s = s_lo; s < s_hi; s += 1.0) bp.push_back(s);
    bp.push_back(s_hi);
    QuadTolerance piece = tol;
    piece.abs = std::max(tol.abs, 0.1 * tol.rel * std::abs(total.value));
    const QuadResult part = integrate(in_log, bp, piece);
    total.value += part.value;
    total.err_estimate += part.err_estimate;
    total.evals += part.evals;

    const double bound = tail(std::exp(s_hi));
    const double target = std::max(tol.abs, tol.rel * std::abs(total.value));
    if (std::isfinite(bound) && bound >= 0.0 && bound <= 0.1 * target) {
      total.err_estimate += bound;
      return total;
    }
    if (s_hi >= s0 + kMaxLogRadius) {
      throw TailNotBounded("integrate_with_tail: majorant " + std::to_string(bound) +
                           " does not certify target " + std::to_string(target));
    }
    s_lo = s_hi;
    span = std::min(2.0 * span, kMaxLogRadius);
  }
}

std::vector<double> phase_breakpoints(double t, double r_lo, double r_hi,
                                      std::size_t max_points) {
  if (!(t > 0.0) || !(r_hi > r_lo) || r_lo < 0.0) {
    throw std::invalid_argument("phase_breakpoints: need t > 0 and 0 <= r_lo < r_hi");
  }
  constexpr double kQuarter = std::numbers::pi / 4.0;
  std::vector<double> out{r_lo};
  const double phase_lo = t * std::sqrt(std::log1p(r_lo * r_lo));
  auto k = static_cast<long long>(std::floor(phase_lo / kQuarter)) + 1;
  while (out.size() < max_points) {
    const double y = k * kQuarter / t;
    const double r = std::sqrt(std::expm1(y * y));
    if (!(r < r_hi)) break;
    if (r > out.back()) out.push_back(r);
    ++k;
  }
  if (out.size() >= max_points) {
    throw NonConvergence("phase_breakpoints: more than " + std::to_string(max_points) +
                         " quarter periods requested");
  }
  out.push_back(r_hi);
  return out;
}

double surface_area(int dim) {
  check_dim(dim);
  const double half = 0.5 * dim;
  return std::exp(std::log(2.0) + half * std::log(std::numbers::pi) - std::lgamma(half));
}

QuadResult integral_Ip_result(double p, double t, const QuadTolerance& tol) {
  if (!(p > -1.0)) throw std::invalid_argument("integral_Ip: need p > -1");
  Integrand f(
      [p, t](double r) {
        const double w = std::exp(-t * std::log1p(r * r));
        return p == 0.0 ? w : w * std::pow(r, p);
      },
      p < 0.0 ? "r^p singular at r = 0" : "");
  std::vector<double> bp{0.0};
  if (t > 1.0) {
    for (double c : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double x = c / std::sqrt(t);
      if (x < 1.0) bp.push_back(x);
    }
  }
  bp.push_back(1.0);
  return integrate(f, bp, tol);
}

double integral_Ip(double p, double t) {
  return integral_Ip_result(p, t, QuadTolerance{0.0, 1e-13}).value;
}

QuadResult integral_Jp_result(double p, double t, const QuadTolerance& tol) {
  if (!(p > -1.0)) throw std::invalid_argument("integral_Jp: need p > -1");
  if (!(t > 1.0)) throw std::invalid_argument("integral_Jp: need t > 1");
  Integrand f([p, t](double r) {
    return std::exp(-t * std::log1p(r * r) + p * std::log(r));
  });
  // (1 + r^2)^(-t) r^p <= r^(p - 2t) for r >= 1.
  const double decay = 2.0 * t - p - 1.0;
  TailMajorant tail = [decay](double radius) {
    if (!(decay > 0.0)) return std::numeric_limits<double>::infinity();
    return std::exp(-decay * std::log(radius)) / decay;
  };
  return integrate_with_tail(f, 1.0, tail, tol);
}

double integral_Jp(double p, double t) {
  return integral_Jp_result(p, t, QuadTolerance{0.0, 1e-13}).value;
}

QuadResult optimality_integral_result(int dim, double t, const QuadTolerance& tol) {
  if (dim < 3) throw std::invalid_argument("optimality_integral: need N >= 3");
  if (!(t > 0.5 * dim + 1.0)) {
    throw std::invalid_argument("optimality_integral: need t > N/2 + 1");
  }
  const double power = dim - 1.0;
  const auto envelope = [t, power](double r) {
    return r == 0.0 ? 0.0 : std::exp(-t * std::log1p(r * r) + power * std::log(r));
  };
  Integrand f(
      [t, envelope](double r) {
        const double s = std::sin(t * std::sqrt(std::log1p(r * r)));
        return envelope(r) * s * s;
      },
      "sin^2(t sqrt(log(1+r^2))) oscillates on a 1/t scale");

  // sin^2 averages to 1/2, so half the envelope integral sizes the budget.
  const double estimate = 0.5 * integral_Ip(power, t);
  const double negligible = 1e-2 * tol.rel * estimate;
  const double outer = integral_Jp(power, t);

  std::vector<double> bp;
  double dropped = 0.0;
  if (outer <= negligible) {
    dropped += outer;
    const auto pts = phase_breakpoints(t, 0.0, 1.0);
    const double peak = std::sqrt(power / (2.0 * t - power));
    for (double r : pts) {
      bp.push_back(r);
      if (r > peak && r < 1.0) {
        const double rest = envelope(r) * (1.0 - r);
        if (rest <= negligible) {
          dropped += rest;
          break;
        }
      }
    }
  } else {
    // (1+r^2)^(-t) r^(N-1) <= r^(N-1-2t) beyond R >= 1.
    const double decay = 2.0 * t - dim;
    double radius = 2.0;
    while (std::exp(-decay * std::log(radius)) / decay > negligible) {
      radius *= 2.0;
      if (radius > 1e150) throw TailNotBounded("optimality_integral: tail not certified");
    }
    dropped += std::exp(-decay * std::log(radius)) / decay;
    bp = phase_breakpoints(t, 0.0, radius);
  }
  QuadTolerance local = tol;
  local.max_panels = tol.max_panels + bp.size();
  QuadResult res = integrate(f, bp, local);
  const double omega = surface_area(dim);
  return {omega * res.value, omega * (res.err_estimate + dropped), res.evals};
}

double optimality_integral(int dim, double t) {
  return optimality_integral_result(dim, t, QuadTolerance{0.0, 1e-12}).value;
}

QuadResult substitution_oracle_result(int dim, double t, const QuadTolerance& tol) {
  if (dim < 3) throw std::invalid_argument("substitution_oracle: need N >= 3");
  if (!(t > 0.5 * dim + 1.0)) {
    throw std::invalid_argument("substitution_oracle: need t > N/2 + 1");
  }
  const double half_excess = 0.5 * (dim - 2);
  Integrand g([t, half_excess](double y) {
    if (y == 0.0) return 0.0;
    const double y2 = y * y;
    const double s = std::sin(t * y);
    return y * std::exp((1.0 - t) * y2 + half_excess * std::log(std::expm1(y2))) * s * s;
  });

  // y e^((1-t) y^2) (e^(y^2) - 1)^((N-2)/2) <= y e^(-c y^2), c = t - N/2, whose
  // tail beyond Y is e^(-c Y^2) / (2c).
  const double c = t - 0.5 * dim;
  const double scale = 0.25 * std::tgamma(0.5 * dim) * std::pow(t, -0.5 * dim);
  const double negligible = 1e-3 * tol.rel * scale;
  const double cutoff = std::sqrt(std::max(0.0, -std::log(2.0 * c * negligible)) / c);
  const double dropped = std::exp(-c * cutoff * cutoff) / (2.0 * c);

  const double quarter = std::numbers::pi / (4.0 * t);
  std::vector<double> bp;
  for (long long k = 0; k * quarter < cutoff; ++k) bp.push_back(k * quarter);
  bp.push_back(cutoff);
  if (bp.size() >= 2 && bp[bp.size() - 1] <= bp[bp.size() - 2]) bp.pop_back();

  QuadTolerance local = tol;
  local.max_panels = tol.max_panels + bp.size();
  QuadResult res = integrate(g, bp, local);
  const double omega = surface_area(dim);
  return {omega * res.value, omega * (res.err_estimate + dropped), res.evals};
}

double substitution_oracle(int dim, double t) {
  return substitution_oracle_result(dim, t, QuadTolerance{0.0, 1e-12}).value;
}

double a_const(int dim) {
  check_dim(dim);
  const double bound = 1e-16;
  const double cutoff = gaussian_cutoff(dim, bound, 6.0);
  Integrand g([dim](double y) { return std::exp(-y * y) * std::pow(y, dim - 1); });
  std::vector<double> bp;
  for (double y = 0.0; y < cutoff; y += 0.5) bp.push_back(y);
  bp.push_back(cutoff);
  return integrate(g, bp, QuadTolerance{0.0, 1e-14}).value;
}

double f_osc(int dim, double t) {
  check_dim(dim);
  if (!(t >= 0.0)) throw std::invalid_argument("f_osc: need t >= 0");
  const double root = std::sqrt(t);
  const double cutoff = gaussian_cutoff(dim, 1e-16, 6.0);
  Integrand g([dim, root](double y) {
    const double c = std::cos(root * y);
    return std::exp(-y * y) * std::pow(y, dim - 1) * c * c;
  });
  const double quarter = root > 0.0 ? std::numbers::pi / (4.0 * root) : cutoff;
  const double step = std::min(quarter, 0.5);
  std::vector<double> bp;
  for (long long k = 0; k * step < cutoff; ++k) bp.push_back(k * step);
  bp.push_back(cutoff);
  if (bp[bp.size() - 1] <= bp[bp.size() - 2]) bp.pop_back();
  QuadTolerance tol{1e-15, 1e-12};
  tol.max_panels += bp.size();
  return integrate(g, bp, tol).value;
}

}  // namespace logdamp
