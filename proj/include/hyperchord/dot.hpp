#pragma once

#include "hyperchord/errors.hpp"

namespace hyperchord {

/// Law of c = <u1, u2> for independent uniform unit vectors in R^N.
/// Follows from the chord law through d^2 = 2 - 2c on the unit sphere:
///   F(c) = 1/2 I_{1-c^2}((N-1)/2, 1/2)       for c <= 0
///   F(c) = 1 - 1/2 I_{1-c^2}((N-1)/2, 1/2)   for c >= 0
/// Support is [-1, 1]; other radii are handled by normalizing first.
class DotProductDistribution {
 public:
  explicit DotProductDistribution(int dim);

  int dim() const { return dim_; }
  double shape() const { return 0.5 * (dim_ - 1); }

  double cdf(double c) const;
  /// (1 - c^2)^((N-3)/2) / B((N-1)/2, 1/2). SingularityError at c = +-1 for N = 2.
  double pdf(double c) const;
  double quantile(double p) const;

  /// E[c^(2 lambda)], lambda >= 1.
  double even_moment(int lambda) const;
  /// E[c^k]; odd orders vanish by symmetry.
  double moment(int k) const;
  double mean() const { return 0.0; }
  double variance() const { return even_moment(1); }

 private:
  int dim_;
};

}  // namespace hyperchord
