#include "hyperchord/chord.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "hyperchord/specfun.hpp"

namespace hyperchord {
namespace {

using detail::chord_argument;
using detail::describe;
using specfun::UnitPoint;

constexpr double kHalf = 0.5;

}  // namespace

ChordDistribution::ChordDistribution(int dim, double radius) : dim_(dim), radius_(radius) {
  if (dim < 2) {
    throw DomainError("chord distribution needs dimension >= 2 (got " + std::to_string(dim) + ")");
  }
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw DomainError(describe("chord distribution needs a positive finite radius", radius));
  }
}

double ChordDistribution::scaled_chord(double d) const {
  if (!std::isfinite(d) || d < 0.0 || d > 2.0 * radius_) {
    throw DomainError(describe("chord length outside [0, 2R]", d));
  }
  return d / radius_;
}

double ChordDistribution::cap_radius(double d) const {
  const double half = 0.5 * scaled_chord(d);
  // a = sqrt(d^2 - d^4 / 4R^2) = d sqrt(1 - (d/2R)^2)
  return d * std::sqrt(std::max(0.0, (1.0 - half) * (1.0 + half)));
}

double ChordDistribution::cap_height(double d) const {
  const double t = scaled_chord(d);
  return 0.5 * t * d;
}

double ChordDistribution::colatitude(double d) const {
  // arccos(1 - d^2 / 2R^2), written as 2 arcsin(d / 2R) to keep precision near d = 0.
  const double half = 0.5 * scaled_chord(d);
  return 2.0 * std::asin(std::min(half, 1.0));
}

double ChordDistribution::cap_area_fraction(double phi) const {
  if (!std::isfinite(phi) || phi < 0.0 || phi > std::numbers::pi) {
    throw DomainError(describe("colatitude outside [0, pi]", phi));
  }
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double half = kHalf * specfun::reg_inc_beta(UnitPoint{s * s, c * c}, shape(), kHalf);
  return phi <= 0.5 * std::numbers::pi ? half : 1.0 - half;
}

double ChordDistribution::cdf(double d) const {
  if (std::isnan(d)) throw DomainError("chord cdf evaluated at NaN");
  if (d <= 0.0) return 0.0;
  if (d >= 2.0 * radius_) return 1.0;
  const double t = d / radius_;
  const double half = kHalf * specfun::reg_inc_beta(chord_argument(t), shape(), kHalf);
  return t * t <= 2.0 ? half : 1.0 - half;
}

double ChordDistribution::pdf(double d) const {
  if (std::isnan(d)) throw DomainError("chord pdf evaluated at NaN");
  if (d < 0.0 || d > 2.0 * radius_) return 0.0;
  const double t = d / radius_;
  const double exponent = shape() - 1.0;  // (N - 3) / 2
  const UnitPoint arg = chord_argument(t);
  const double log_norm = -std::log(radius_) - specfun::log_beta(shape(), kHalf);

  if (t == 0.0) {
    // t x^((N-3)/2) ~ t^(N-2) as t -> 0: finite (1 / pi R) on the circle, zero above.
    return dim_ == 2 ? std::exp(log_norm) : 0.0;
  }
  if (arg.x == 0.0) {
    if (exponent < 0.0) {
      throw SingularityError(describe("chord density diverges at d = 2R", d));
    }
    return exponent > 0.0 ? 0.0 : t * std::exp(log_norm);
  }
  const double half = 0.5 * t;
  const double log_x = 2.0 * std::log(t) + std::log((1.0 - half) * (1.0 + half));
  return t * std::exp(log_norm + exponent * log_x);
}

double ChordDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(describe("probability outside [0, 1]", p));
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 2.0 * radius_;

  // Invert on the branch of the cdf holding p, then recover t^2 from
  // x = t^2 (1 - t^2/4):  t^2 = 2 (1 -+ sqrt(1 - x)).
  const bool lower = p <= 0.5;
  const double target = lower ? 2.0 * p : 2.0 * (1.0 - p);
  const double target_c = lower ? 1.0 - 2.0 * p : 2.0 * p - 1.0;
  const UnitPoint arg = specfun::inv_reg_inc_beta_point(target, target_c, shape(), kHalf);
  const double root = std::sqrt(arg.complement);
  const double t2 = lower ? 2.0 * arg.x / (1.0 + root) : 2.0 * (1.0 + root);
  return std::min(radius_ * std::sqrt(t2), 2.0 * radius_);
}

double ChordDistribution::moment(int k) const {
  if (k < 1) throw DomainError("moment order must be >= 1 (got " + std::to_string(k) + ")");
  // u = d^2 / 4R^2 is Beta(a, a) distributed, so
  //   E[d^k] = (2R)^k Gamma(a + k/2) Gamma(2a) / (Gamma(a) Gamma(2a + k/2)).
  // Gamma ratios keep this O(1) where the two beta functions would over/underflow.
  const double a = shape();
  double ratio = 1.0;
  if (k % 2 == 0) {
    for (int j = 0; j < k / 2; ++j) ratio *= (a + j) / (2.0 * a + j);
  } else {
    ratio = specfun::gamma_ratio(a, 0.5 * k) / specfun::gamma_ratio(2.0 * a, 0.5 * k);
  }
  return std::pow(2.0 * radius_, k) * ratio;
}

double ChordDistribution::mean() const { return moment(1); }

double ChordDistribution::variance() const {
  const double mu = mean();
  return moment(2) - mu * mu;
}

double ChordDistribution::bertrand_probability() const { return cdf(radius_); }

double ChordDistribution::closed_form_cdf(double d) const {
  if (dim_ < 2 || dim_ > 5) {
    throw UnsupportedDimensionError("closed-form chord cdf exists only for N in {2, 3, 4, 5} (got " +
                                    std::to_string(dim_) + ")");
  }
  if (std::isnan(d)) throw DomainError("chord cdf evaluated at NaN");
  if (d <= 0.0) return 0.0;
  if (d >= 2.0 * radius_) return 1.0;

  const double r2 = radius_ * radius_;
  const double d2 = d * d;
  const double cos_phi = 1.0 - d2 / (2.0 * r2);
  switch (dim_) {
    case 2:
      return std::acos(cos_phi) / std::numbers::pi;
    case 3:
      return d2 / (4.0 * r2);
    case 4:
      // (phi - sin phi cos phi) / pi, with sin phi = (d/R) sqrt(1 - d^2/4R^2)
      return std::acos(cos_phi) / std::numbers::pi -
             d / (std::numbers::pi * radius_) * cos_phi * std::sqrt(1.0 - d2 / (4.0 * r2));
    default: {
      const double r4 = r2 * r2;
      return 3.0 * d2 * d2 / (16.0 * r4) - 3.0 * d2 * d2 * d2 / (96.0 * r4 * r2);
    }
  }
}

}  // namespace hyperchord
