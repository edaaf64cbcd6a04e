#include "hyperchord/dot.hpp"

#include <cmath>
#include <string>

#include "detail.hpp"
#include "hyperchord/specfun.hpp"

namespace hyperchord {
namespace {

using detail::describe;
using specfun::UnitPoint;

constexpr double kHalf = 0.5;

}  // namespace

DotProductDistribution::DotProductDistribution(int dim) : dim_(dim) {
  if (dim < 2) {
    throw DomainError("dot-product distribution needs dimension >= 2 (got " + std::to_string(dim) +
                      ")");
  }
}

double DotProductDistribution::cdf(double c) const {
  if (std::isnan(c)) throw DomainError("dot-product cdf evaluated at NaN");
  if (c <= -1.0) return 0.0;
  if (c >= 1.0) return 1.0;
  const UnitPoint arg{(1.0 - c) * (1.0 + c), c * c};
  const double half = kHalf * specfun::reg_inc_beta(arg, shape(), kHalf);
  return c <= 0.0 ? half : 1.0 - half;
}

double DotProductDistribution::pdf(double c) const {
  if (std::isnan(c)) throw DomainError("dot-product pdf evaluated at NaN");
  const double m = std::fabs(c);
  if (m > 1.0) return 0.0;
  const double exponent = shape() - 1.0;
  const double log_norm = -specfun::log_beta(shape(), kHalf);
  if (m == 1.0) {
    if (exponent < 0.0) {
      throw SingularityError(describe("dot-product density diverges at the support end", c));
    }
    return exponent > 0.0 ? 0.0 : std::exp(log_norm);
  }
  if (exponent == 0.0) return std::exp(log_norm);
  return std::exp(log_norm + exponent * std::log((1.0 - m) * (1.0 + m)));
}

double DotProductDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(describe("probability outside [0, 1]", p));
  if (p == 0.0) return -1.0;
  if (p == 1.0) return 1.0;
  const bool lower = p <= 0.5;
  const double target = lower ? 2.0 * p : 2.0 * (1.0 - p);
  const double target_c = lower ? 1.0 - 2.0 * p : 2.0 * p - 1.0;
  // I_{1-c^2} = target; the solver's complement is c^2 itself.
  const UnitPoint arg = specfun::inv_reg_inc_beta_point(target, target_c, shape(), kHalf);
  const double magnitude = std::sqrt(arg.complement);
  return lower ? 0.0 - magnitude : magnitude;
}

double DotProductDistribution::even_moment(int lambda) const {
  if (lambda < 1) {
    throw DomainError("even moment index must be >= 1 (got " + std::to_string(lambda) + ")");
  }
  // B(lambda + 1/2, a) / B(1/2, a) = prod_{j < lambda} (1/2 + j) / (a + 1/2 + j)
  const double a = shape();
  double result = 1.0;
  for (int j = 0; j < lambda; ++j) result *= (0.5 + j) / (a + 0.5 + j);
  return result;
}

double DotProductDistribution::moment(int k) const {
  if (k < 1) throw DomainError("moment order must be >= 1 (got " + std::to_string(k) + ")");
  return k % 2 == 1 ? 0.0 : even_moment(k / 2);
}

}  // namespace hyperchord
