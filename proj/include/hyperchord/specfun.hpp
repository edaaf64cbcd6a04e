#pragma once

// Special-function kernel: log-gamma, log-beta, the regularized incomplete
// beta function I_x(a, b), its inverse, and the a -> a + 1 recurrence.
//
// Every routine is a pure function of its arguments. Arguments that would
// lose precision when formed as 1 - x (the chord and dot-product laws both
// produce x extremely close to 1 in high dimension) can be passed as a
// UnitPoint carrying x and 1 - x independently.

#include "hyperchord/errors.hpp"

namespace hyperchord::specfun {

struct ToleranceConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 500;

  // Throws DomainError unless rel_tol > 0, abs_tol > 0 and max_iter >= 1.
  void validate() const;
};

// A point of [0, 1] stored together with its complement. Both members are
// kept so that neither has to be recovered by cancellation.
struct UnitPoint {
  double x = 0.0;
  double complement = 1.0;

  static UnitPoint from_x(double x) { return {x, 1.0 - x}; }
  static UnitPoint from_complement(double y) { return {1.0 - y, y}; }
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), evaluated through
/// a gamma ratio when one argument dominates so that large a keeps full
/// relative accuracy.
double log_beta(double a, double b);

/// Gamma(z + delta) / Gamma(z) for z > 0, z + delta > 0.
double gamma_ratio(double z, double delta);

/// Regularized incomplete beta function I_x(a, b).
///
/// Continued fraction (modified Lentz) on whichever of I_x(a, b) and
/// 1 - I_{1-x}(b, a) converges faster; x = 0 and x = 1 return exactly 0 and 1.
/// Throws DomainError for x outside [0, 1] or non-positive a, b and
/// ConvergenceError when the fraction does not settle within tol.max_iter.
double reg_inc_beta(double x, double a, double b, const ToleranceConfig& tol = {});
double reg_inc_beta(UnitPoint point, double a, double b, const ToleranceConfig& tol = {});

/// Inverse of x -> I_x(a, b): the x in [0, 1] with I_x(a, b) = p.
double inv_reg_inc_beta(double p, double a, double b, const ToleranceConfig& tol = {});

/// Same inverse, returning x and 1 - x each to full relative precision.
/// `p_complement` must equal 1 - p; passing it separately preserves accuracy
/// when p is close to 1.
UnitPoint inv_reg_inc_beta_point(double p, double p_complement, double a, double b,
                                 const ToleranceConfig& tol = {});

/// I_x(a + 1, b) from I_x(a, b):
///   I_x(a + 1, b) = I_x(a, b) - x^a (1 - x)^b / (a B(a, b)).
double reg_inc_beta_step(double i_prev, double x, double a, double b);

/// Walks I_x(a + k, b) for k = 0, 1, 2, ... at a fixed x, one recurrence step
/// at a time. The correction term is carried in log space and updated by
/// ln(x (a + b) / (a + 1)), so each step costs a single exp.
class IncBetaLadder {
 public:
  IncBetaLadder(UnitPoint point, double a, double b, const ToleranceConfig& tol = {});

  double value() const { return value_; }
  double a() const { return a_; }
  void step();

 private:
  double log_x_;
  double b_;
  double a_;
  double value_;
  double log_term_;  // ln(x^a (1-x)^b / (a B(a, b))); -inf at x in {0, 1}
};

}  // namespace hyperchord::specfun
