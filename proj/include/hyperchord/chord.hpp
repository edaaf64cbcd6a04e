#pragma once

#include "hyperchord/errors.hpp"

namespace hyperchord {

/// Law of the Euclidean distance between two points drawn independently and
/// uniformly from the surface {x in R^N : |x| = R}. N counts ambient
/// coordinates, so N = 2 is the circle. Support is [0, 2R].
///
/// With x = (d/R)^2 (1 - (d/2R)^2) and a = (N - 1)/2:
///   F(d) = 1/2 I_x(a, 1/2)       for d <= sqrt(2) R
///   F(d) = 1 - 1/2 I_x(a, 1/2)   for d >= sqrt(2) R
/// Everything is computed from the scaled chord t = d / R, so the law with
/// radius R at d agrees bit-for-bit with the unit law at d / R.
class ChordDistribution {
 public:
  /// Throws DomainError unless dim >= 2 and radius is positive and finite.
  ChordDistribution(int dim, double radius = 1.0);

  int dim() const { return dim_; }
  double radius() const { return radius_; }
  /// First incomplete-beta parameter (N - 1) / 2.
  double shape() const { return 0.5 * (dim_ - 1); }

  // Cap geometry for a chord of length d from the cap's pole to its rim.
  // Each throws DomainError for d outside [0, 2R].
  double cap_radius(double d) const;
  double cap_height(double d) const;
  double colatitude(double d) const;
  /// Fraction of the sphere's surface covered by a cap of colatitude phi.
  double cap_area_fraction(double phi) const;

  /// Clamps to 0 below the support and 1 above it.
  double cdf(double d) const;
  /// Zero outside the support. For N = 2 the density diverges as d -> 2R and
  /// evaluating exactly there throws SingularityError; at d = 0 it takes its
  /// finite limit 1 / (pi R).
  double pdf(double d) const;
  /// Inverse of cdf on [0, 1]; quantile(0.5) is sqrt(2) R.
  double quantile(double p) const;

  /// E[d^k], k >= 1.
  double moment(int k) const;
  double mean() const;
  double variance() const;
  /// P(d <= R).
  double bertrand_probability() const;

  /// Elementary closed form of the cdf, available for N in {2, 3, 4, 5} only
  /// (UnsupportedDimensionError otherwise). Independent of the incomplete
  /// beta path and used to cross-check it.
  double closed_form_cdf(double d) const;

 private:
  double scaled_chord(double d) const;

  int dim_;
  double radius_;
};

}  // namespace hyperchord
