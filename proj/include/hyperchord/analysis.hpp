#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperchord/chord.hpp"
#include "hyperchord/errors.hpp"

namespace hyperchord {

/// Non-empty multiset of non-negative chord lengths with provenance.
class DistanceSample {
 public:
  /// Throws ValidationError on an empty input or any negative / non-finite value.
  explicit DistanceSample(std::vector<double> values, std::string source = {});

  std::span<const double> values() const { return values_; }
  const std::string& source() const { return source_; }
  bool sorted() const { return sorted_; }
  std::size_t size() const { return values_.size(); }

  /// The same sample in ascending order (a copy unless already sorted).
  DistanceSample sorted_copy() const;

 private:
  std::vector<double> values_;
  std::string source_;
  bool sorted_;
};

double empirical_cdf(const DistanceSample& sample, double d);

/// sup_d |F_n(d) - F(d)|, evaluated at every distinct sample value from both
/// sides of the empirical jump, so ties are handled exactly.
double ks_statistic(const DistanceSample& sample, const ChordDistribution& dist);

// Asymptotic Kolmogorov distribution of sqrt(n) D_n.
//
// The survival series 2 sum (-1)^(k-1) exp(-2 k^2 t^2) is used for t >= 1 and
// the theta-function form 1 - sqrt(2 pi)/t sum exp(-(2k-1)^2 pi^2 / 8t^2)
// below that; both are summed until the next term is under 1e-17, which bounds
// the truncation error.
double kolmogorov_survival(double t);
/// c with kolmogorov_survival(c) = alpha, alpha in (0, 1).
double kolmogorov_critical(double alpha);

enum class GofVerdict { Consistent, Rejected };

struct GofReport {
  double statistic = 0.0;       ///< KS distance
  double p_bound = 1.0;         ///< asymptotic p-value
  std::size_t n = 0;
  int null_dim = 2;
  double null_radius = 1.0;
  double alpha = 0.01;
  double critical_value = 0.0;  ///< c(alpha) / sqrt(n)
  GofVerdict verdict = GofVerdict::Consistent;
};

inline constexpr std::size_t kMinGofSample = 8;

/// KS test of `sample` against `dist`. Rejects iff statistic > c(alpha)/sqrt(n).
/// Needs n >= 8; below that the asymptotic p-value is not meaningful.
GofReport gof_test(const DistanceSample& sample, const ChordDistribution& dist, double alpha);

/// quantile(1 - 1/q) - quantile(1/q), the length of the central (q-2)/q mass.
double quantile_range(const ChordDistribution& dist, int q);

struct QuantileTable {
  struct Cell {
    int dim;
    int q;
    double range;
  };
  double radius = 1.0;
  std::vector<int> dims;
  std::vector<int> qs;
  std::vector<Cell> cells;  ///< row-major over (dims, qs)

  double at(int dim, int q) const;
};

inline const std::vector<int> kDefaultTableDims{2, 3, 4, 8, 16, 32, 64, 128, 256};
inline const std::vector<int> kDefaultTableQs{3, 4, 6, 8, 16};

QuantileTable quantile_table(const std::vector<int>& dims, const std::vector<int>& qs,
                             double radius = 1.0);

/// KS statistic of an ascending sample against ChordDistribution(N, radius)
/// for every N in `dims` (ascending, >= 2). Dimensions up to 64 share one
/// pass that climbs N two at a time with the incomplete-beta recurrence.
std::vector<double> ks_statistic_grid(std::span<const double> sorted_values, double radius,
                                      std::span<const int> dims);

/// 2..64 followed by the powers of two 128..4096.
std::vector<int> dimension_grid();

struct DimensionEstimate {
  int best_dim = 2;
  double ks_at_best = 0.0;
  int lower_bound = 2;
  std::optional<int> upper_bound;  ///< empty when the passing set reaches the grid edge
  double radius_estimate = 1.0;
  bool radius_estimated = true;
  double critical_value = 0.0;
  bool consistent = true;  ///< whether any grid dimension passes at alpha
  std::size_t n = 0;
};

inline constexpr std::size_t kMinDimensionSample = 30;

/// Radius from the second moment (E[d^2] = 2R^2 for every N) unless given,
/// then the KS-minimizing N over dimension_grid(). Bounds are the contiguous
/// run of grid dimensions around the best one whose KS statistic stays below
/// c(alpha)/sqrt(n); when even the best fails, both bounds equal best_dim and
/// `consistent` is false.
DimensionEstimate estimate_dimension(const DistanceSample& sample,
                                     std::optional<double> radius = std::nullopt,
                                     double alpha = 0.01);

enum class FigureKind { Bertrand, Mean, Variance };

struct SeriesPoint {
  int dim;
  double value;
};

std::vector<SeriesPoint> figure_series(FigureKind kind, const std::vector<int>& dims,
                                       double radius = 1.0);

enum class CurveKind { Cdf, Pdf };

/// Curve family on `points` equally spaced chords over [0, 2R], one column
/// per dimension. Density cells at an integrable singularity hold +inf.
struct CurveFamily {
  std::vector<double> grid;
  std::vector<int> dims;
  std::vector<std::vector<double>> columns;
};

CurveFamily curve_family(CurveKind kind, const std::vector<int>& dims, double radius, int points);

}  // namespace hyperchord
