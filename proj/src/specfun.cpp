#include "hyperchord/specfun.hpp"

#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace hyperchord::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

using detail::describe;

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw DomainError(describe(std::string(name) + " must be positive and finite", v));
  }
}

void require_unit(UnitPoint pt) {
  if (!(std::isfinite(pt.x) && std::isfinite(pt.complement)) || pt.x < 0.0 || pt.x > 1.0 ||
      pt.complement < 0.0 || pt.complement > 1.0) {
    throw DomainError(describe("incomplete beta argument must lie in [0, 1]", pt.x));
  }
}

// ln(x^a (1-x)^b / (a B(a, b))), the common prefactor of the continued
// fraction and of the a -> a + 1 recurrence.
double log_front(UnitPoint pt, double a, double b) {
  return a * std::log(pt.x) + b * std::log(pt.complement) - std::log(a) - log_beta(a, b);
}

// Continued fraction for I_x(a, b) / front, valid for x < (a + 1) / (a + b + 2).
double beta_fraction(double x, double a, double b, const ToleranceConfig& tol) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  const double eps = std::max(kEps, 1e-3 * tol.rel_tol);

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= tol.max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "incomplete beta continued fraction did not converge in " << tol.max_iter
      << " iterations (x=" << x << ", a=" << a << ", b=" << b << ")";
  throw ConvergenceError(msg.str());
}

// Solves I_z(a, b) = target for z in [0, 1/2], given I_{1/2}(a, b) >= target.
// Newton steps inside a shrinking bracket, bisecting (geometrically while the
// bracket spans orders of magnitude) whenever Newton leaves it.
double solve_lower_half(double target, double a, double b, const ToleranceConfig& tol) {
  double lo = 0.0;
  double hi = 0.5;
  const double log_b = log_beta(a, b);

  // Leading-order tail inversion: I_z ~ z^a / (a B(a, b)).
  double z = std::exp((std::log(target) + std::log(a) + log_b) / a);
  if (!(z > lo && z < hi)) z = 0.5 * hi;

  const double f_tol = std::max(4.0 * kEps * target, 1e-2 * tol.abs_tol);
  for (int it = 0; it < tol.max_iter; ++it) {
    const double f = reg_inc_beta(UnitPoint{z, 1.0 - z}, a, b, tol) - target;
    if (std::fabs(f) <= f_tol) return z;
    if (f < 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    if (hi - lo <= 2.0 * kEps * hi) return 0.5 * (lo + hi);

    const double log_slope = (a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z) - log_b;
    double next = z - f / std::exp(log_slope);
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      if (lo == 0.0) {
        next = 0.125 * hi;
      } else if (hi > 4.0 * lo) {
        next = std::sqrt(lo * hi);
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    z = next;
  }
  throw ConvergenceError(describe("inverse incomplete beta did not converge", target));
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_iter < 1) {
    throw DomainError("tolerance config requires rel_tol > 0, abs_tol > 0, max_iter >= 1");
  }
}

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
  return boost::math::lgamma(x);
}

double gamma_ratio(double z, double delta) {
  require_positive(z, "gamma_ratio base");
  if (!std::isfinite(delta) || z + delta <= 0.0) {
    throw DomainError(describe("gamma_ratio requires z + delta > 0", delta));
  }
  if (delta == 0.0) return 1.0;
  return 1.0 / boost::math::tgamma_delta_ratio(z, delta);
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta a");
  require_positive(b, "log_beta b");
  const double small = std::min(a, b);
  const double large = std::max(a, b);
  // B(a, b) = Gamma(small) * Gamma(large) / Gamma(large + small).
  const double ratio = boost::math::tgamma_delta_ratio(large, small);
  if (std::isnormal(ratio)) {
    return boost::math::lgamma(small) + std::log(ratio);
  }
  return boost::math::lgamma(a) + boost::math::lgamma(b) - boost::math::lgamma(a + b);
}

double reg_inc_beta(double x, double a, double b, const ToleranceConfig& tol) {
  return reg_inc_beta(UnitPoint::from_x(x), a, b, tol);
}

double reg_inc_beta(UnitPoint pt, double a, double b, const ToleranceConfig& tol) {
  tol.validate();
  require_unit(pt);
  require_positive(a, "incomplete beta a");
  require_positive(b, "incomplete beta b");
  if (pt.x == 0.0) return 0.0;
  if (pt.complement == 0.0) return 1.0;

  double result;
  if (pt.x < (a + 1.0) / (a + b + 2.0)) {
    const double front = std::exp(log_front(pt, a, b));
    result = front == 0.0 ? 0.0 : front * beta_fraction(pt.x, a, b, tol);
  } else {
    const UnitPoint swapped{pt.complement, pt.x};
    const double front = std::exp(log_front(swapped, b, a));
    result = front == 0.0 ? 1.0 : 1.0 - front * beta_fraction(swapped.x, b, a, tol);
  }
  return std::clamp(result, 0.0, 1.0);
}

double inv_reg_inc_beta(double p, double a, double b, const ToleranceConfig& tol) {
  return inv_reg_inc_beta_point(p, 1.0 - p, a, b, tol).x;
}

UnitPoint inv_reg_inc_beta_point(double p, double p_complement, double a, double b,
                                 const ToleranceConfig& tol) {
  tol.validate();
  if (!(p >= 0.0 && p <= 1.0) || !(p_complement >= 0.0 && p_complement <= 1.0)) {
    throw DomainError(describe("probability must lie in [0, 1]", p));
  }
  require_positive(a, "incomplete beta a");
  require_positive(b, "incomplete beta b");
  if (p == 0.0) return {0.0, 1.0};
  if (p_complement == 0.0) return {1.0, 0.0};

  const double at_half = reg_inc_beta(UnitPoint{0.5, 0.5}, a, b, tol);
  if (p <= at_half) {
    const double x = solve_lower_half(p, a, b, tol);
    return {x, 1.0 - x};
  }
  // I_x(a, b) = p  <=>  I_{1-x}(b, a) = 1 - p, with 1 - x <= 1/2.
  const double y = solve_lower_half(p_complement, b, a, tol);
  return {1.0 - y, y};
}

double reg_inc_beta_step(double i_prev, double x, double a, double b) {
  if (!(i_prev >= 0.0 && i_prev <= 1.0)) {
    throw DomainError(describe("previous incomplete beta value must lie in [0, 1]", i_prev));
  }
  require_unit(UnitPoint::from_x(x));
  require_positive(a, "incomplete beta a");
  require_positive(b, "incomplete beta b");
  if (x == 0.0 || x == 1.0) return i_prev;
  const double term = std::exp(log_front(UnitPoint::from_x(x), a, b));
  return std::clamp(i_prev - term, 0.0, 1.0);
}

IncBetaLadder::IncBetaLadder(UnitPoint point, double a, double b, const ToleranceConfig& tol)
    : log_x_(std::log(point.x)),
      b_(b),
      a_(a),
      value_(reg_inc_beta(point, a, b, tol)),
      log_term_(point.x == 0.0 || point.complement == 0.0
                    ? -std::numeric_limits<double>::infinity()
                    : log_front(point, a, b)) {}

void IncBetaLadder::step() {
  if (std::isfinite(log_term_)) {
    value_ = std::clamp(value_ - std::exp(log_term_), 0.0, 1.0);
    log_term_ += log_x_ + std::log((a_ + b_) / (a_ + 1.0));
  }
  a_ += 1.0;
}

}  // namespace hyperchord::specfun
