#include "hyperchord/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "hyperchord/specfun.hpp"

namespace hyperchord {
namespace {

using detail::describe;

constexpr int kLadderMaxDim = 64;
constexpr double kSeriesCutoff = 1e-17;

// Distinct values of an ascending sequence with the number of entries
// strictly below (lo) and at-or-below (hi) each.
struct Step {
  double value;
  std::size_t lo;
  std::size_t hi;
};

std::vector<Step> distinct_steps(std::span<const double> sorted) {
  std::vector<Step> steps;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    steps.push_back({sorted[i], i, j});
    i = j;
  }
  return steps;
}

double step_gap(const Step& s, double n, double f) {
  return std::max(static_cast<double>(s.hi) / n - f, f - static_cast<double>(s.lo) / n);
}

// Exact sup of step_gap over all steps for a monotone cdf, evaluating it only
// where needed. Between two evaluated steps i < j the cdf lies in [F_i, F_j],
// which bounds every gap strictly inside; blocks whose bound cannot beat the
// running maximum are never evaluated.
template <typename Cdf>
double pruned_sup(const std::vector<Step>& steps, double n, Cdf&& cdf) {
  constexpr std::size_t kStride = 64;
  const std::size_t m = steps.size();
  std::vector<std::size_t> knots;
  for (std::size_t i = 0; i < m; i += kStride) knots.push_back(i);
  if (knots.back() != m - 1) knots.push_back(m - 1);

  std::vector<double> f(knots.size());
  double sup = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    f[k] = cdf(steps[knots[k]].value);
    sup = std::max(sup, step_gap(steps[knots[k]], n, f[k]));
  }

  auto bound = [&](std::size_t i, std::size_t j, double fi, double fj) {
    return std::max(static_cast<double>(steps[j - 1].hi) / n - fi,
                    fj - static_cast<double>(steps[i + 1].lo) / n);
  };
  struct Block {
    std::size_t i, j;
    double fi, fj;
  };
  std::vector<Block> todo;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) todo.push_back({knots[k], knots[k + 1], f[k], f[k + 1]});
  while (!todo.empty()) {
    const Block b = todo.back();
    todo.pop_back();
    if (b.j - b.i < 2 || bound(b.i, b.j, b.fi, b.fj) <= sup) continue;
    const std::size_t mid = b.i + (b.j - b.i) / 2;
    const double fm = cdf(steps[mid].value);
    sup = std::max(sup, step_gap(steps[mid], n, fm));
    todo.push_back({b.i, mid, b.fi, fm});
    todo.push_back({mid, b.j, fm, b.fj});
  }
  return sup;
}

}  // namespace

DistanceSample::DistanceSample(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.empty()) throw ValidationError("distance sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(describe("distance #" + std::to_string(i + 1) +
                                         " must be finite and non-negative",
                                     v));
    }
  }
  sorted_ = std::is_sorted(values_.begin(), values_.end());
}

DistanceSample DistanceSample::sorted_copy() const {
  if (sorted_) return *this;
  std::vector<double> copy = values_;
  std::sort(copy.begin(), copy.end());
  return DistanceSample(std::move(copy), source_);
}

double empirical_cdf(const DistanceSample& sample, double d) {
  const auto values = sample.values();
  std::size_t count;
  if (sample.sorted()) {
    count = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), d) - values.begin());
  } else {
    count = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [d](double v) { return v <= d; }));
  }
  return static_cast<double>(count) / static_cast<double>(values.size());
}

double ks_statistic(const DistanceSample& sample, const ChordDistribution& dist) {
  const DistanceSample ordered = sample.sorted_copy();
  const double n = static_cast<double>(ordered.size());
  const double sup = pruned_sup(distinct_steps(ordered.values()), n, [&dist](double d) { return dist.cdf(d); });
  return std::clamp(sup, 0.0, 1.0);
}

double kolmogorov_survival(double t) {
  if (std::isnan(t)) throw DomainError("Kolmogorov survival evaluated at NaN");
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  if (t >= 1.0) {
    double sign = 1.0;
    for (int k = 1;; ++k) {
      const double term = std::exp(-2.0 * k * k * t * t);
      sum += sign * term;
      if (term < kSeriesCutoff) break;
      sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
  }
  const double w = -std::numbers::pi * std::numbers::pi / (8.0 * t * t);
  for (int k = 1;; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double term = std::exp(odd * odd * w);
    sum += term;
    if (term < kSeriesCutoff) break;
  }
  const double cdf = std::sqrt(2.0 * std::numbers::pi) / t * sum;
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(describe("alpha must lie in (0, 1)", alpha));
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GofReport gof_test(const DistanceSample& sample, const ChordDistribution& dist, double alpha) {
  if (sample.size() < kMinGofSample) {
    throw ValidationError("goodness-of-fit needs at least " + std::to_string(kMinGofSample) +
                          " values (got " + std::to_string(sample.size()) + ")");
  }
  GofReport report;
  report.n = sample.size();
  report.alpha = alpha;
  report.null_dim = dist.dim();
  report.null_radius = dist.radius();
  report.statistic = ks_statistic(sample, dist);
  const double root_n = std::sqrt(static_cast<double>(report.n));
  report.critical_value = kolmogorov_critical(alpha) / root_n;
  report.p_bound = kolmogorov_survival(root_n * report.statistic);
  report.verdict =
      report.statistic > report.critical_value ? GofVerdict::Rejected : GofVerdict::Consistent;
  return report;
}

double quantile_range(const ChordDistribution& dist, int q) {
  if (q < 3) throw DomainError("quantile range needs q >= 3 (got " + std::to_string(q) + ")");
  const double p = 1.0 / q;
  return dist.quantile(1.0 - p) - dist.quantile(p);
}

double QuantileTable::at(int dim, int q) const {
  for (const Cell& c : cells) {
    if (c.dim == dim && c.q == q) return c.range;
  }
  throw std::out_of_range("no quantile-table cell for N=" + std::to_string(dim) +
                          ", q=" + std::to_string(q));
}

QuantileTable quantile_table(const std::vector<int>& dims, const std::vector<int>& qs,
                             double radius) {
  if (dims.empty() || qs.empty()) throw ValidationError("quantile table needs dims and qs");
  QuantileTable table;
  table.radius = radius;
  table.dims = dims;
  table.qs = qs;
  table.cells.reserve(dims.size() * qs.size());
  for (int dim : dims) {
    const ChordDistribution law(dim, radius);
    for (int q : qs) table.cells.push_back({dim, q, quantile_range(law, q)});
  }
  return table;
}

std::vector<int> dimension_grid() {
  std::vector<int> grid;
  for (int n = 2; n <= kLadderMaxDim; ++n) grid.push_back(n);
  for (int n = 128; n <= 4096; n *= 2) grid.push_back(n);
  return grid;
}

std::vector<double> ks_statistic_grid(std::span<const double> sorted_values, double radius,
                                      std::span<const int> dims) {
  if (sorted_values.empty()) throw ValidationError("distance sample is empty");
  if (!std::is_sorted(dims.begin(), dims.end()) || (!dims.empty() && dims.front() < 2)) {
    throw DomainError("dimension grid must be ascending with every N >= 2");
  }
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw DomainError(describe("radius must be positive and finite", radius));
  }

  std::vector<int> slot(kLadderMaxDim + 1, -1);
  int max_even = 0;
  int max_odd = 0;
  std::vector<std::pair<std::size_t, ChordDistribution>> direct;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    const int dim = dims[j];
    if (dim <= kLadderMaxDim) {
      slot[dim] = static_cast<int>(j);
      (dim % 2 == 0 ? max_even : max_odd) = dim;
    } else {
      direct.emplace_back(j, ChordDistribution(dim, radius));
    }
  }

  const double n = static_cast<double>(sorted_values.size());
  std::vector<double> sup(dims.size(), 0.0);
  auto update = [&](std::size_t j, const Step& s, double f) {
    sup[j] = std::max(sup[j], step_gap(s, n, f));
  };

  const std::vector<Step> steps = distinct_steps(sorted_values);
  for (const auto& [j, law] : direct) {
    sup[j] = pruned_sup(steps, n, [&law](double d) { return law.cdf(d); });
  }
  if (max_even == 0 && max_odd == 0) {
    for (double& v : sup) v = std::clamp(v, 0.0, 1.0);
    return sup;
  }

  for (const Step& s : steps) {
    const double t = s.value / radius;
    if (s.value <= 0.0 || t >= 2.0) {
      const double f = s.value <= 0.0 ? 0.0 : 1.0;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] <= kLadderMaxDim) update(j, s, f);
      }
      continue;
    }
    const specfun::UnitPoint arg = detail::chord_argument(t);
    const bool lower = t * t <= 2.0;
    auto climb = [&](int first_dim, int last_dim) {
      if (last_dim < first_dim) return;
      specfun::IncBetaLadder ladder(arg, 0.5 * (first_dim - 1), 0.5);
      for (int dim = first_dim; dim <= last_dim; dim += 2) {
        if (slot[dim] >= 0) {
          const double half = 0.5 * ladder.value();
          update(static_cast<std::size_t>(slot[dim]), s, lower ? half : 1.0 - half);
        }
        ladder.step();
      }
    };
    climb(2, max_even);
    climb(3, max_odd);
  }
  for (double& v : sup) v = std::clamp(v, 0.0, 1.0);
  return sup;
}

DimensionEstimate estimate_dimension(const DistanceSample& sample, std::optional<double> radius,
                                     double alpha) {
  if (sample.size() < kMinDimensionSample) {
    throw ValidationError("dimension estimation needs at least " +
                          std::to_string(kMinDimensionSample) + " values (got " +
                          std::to_string(sample.size()) + ")");
  }
  const DistanceSample ordered = sample.sorted_copy();
  const auto values = ordered.values();
  if (values.front() == values.back()) {
    throw ValidationError("degenerate distance sample: all values equal (zero variance)");
  }

  DimensionEstimate est;
  est.n = values.size();
  if (radius) {
    if (!(std::isfinite(*radius) && *radius > 0.0)) {
      throw DomainError(describe("radius must be positive and finite", *radius));
    }
    est.radius_estimate = *radius;
    est.radius_estimated = false;
  } else {
    double m2 = 0.0;
    for (double v : values) m2 += v * v;
    m2 /= static_cast<double>(values.size());
    est.radius_estimate = std::sqrt(0.5 * m2);
    est.radius_estimated = true;
  }

  const std::vector<int> grid = dimension_grid();
  const std::vector<double> ks = ks_statistic_grid(values, est.radius_estimate, grid);
  const auto best = static_cast<std::size_t>(std::min_element(ks.begin(), ks.end()) - ks.begin());
  est.best_dim = grid[best];
  est.ks_at_best = ks[best];
  est.critical_value = kolmogorov_critical(alpha) / std::sqrt(static_cast<double>(est.n));
  est.consistent = est.ks_at_best < est.critical_value;

  if (!est.consistent) {
    est.lower_bound = est.best_dim;
    est.upper_bound = est.best_dim;
    return est;
  }
  std::size_t lo = best;
  while (lo > 0 && ks[lo - 1] < est.critical_value) --lo;
  std::size_t hi = best;
  while (hi + 1 < grid.size() && ks[hi + 1] < est.critical_value) ++hi;
  est.lower_bound = grid[lo];
  if (hi + 1 < grid.size()) {
    est.upper_bound = grid[hi];
  } else {
    est.upper_bound.reset();
  }
  return est;
}

std::vector<SeriesPoint> figure_series(FigureKind kind, const std::vector<int>& dims,
                                       double radius) {
  if (dims.empty()) throw ValidationError("figure series needs at least one dimension");
  std::vector<SeriesPoint> series;
  series.reserve(dims.size());
  for (int dim : dims) {
    const ChordDistribution law(dim, radius);
    double value = 0.0;
    switch (kind) {
      case FigureKind::Bertrand:
        value = law.bertrand_probability();
        break;
      case FigureKind::Mean:
        value = law.mean();
        break;
      case FigureKind::Variance:
        value = law.variance();
        break;
    }
    series.push_back({dim, value});
  }
  return series;
}

CurveFamily curve_family(CurveKind kind, const std::vector<int>& dims, double radius, int points) {
  if (dims.empty()) throw ValidationError("curve family needs at least one dimension");
  if (points < 2) throw ValidationError("curve family needs at least 2 grid points");
  CurveFamily family;
  family.dims = dims;
  family.grid.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    family.grid[i] = i + 1 == points ? 2.0 * radius : 2.0 * radius * i / (points - 1);
  }
  for (int dim : dims) {
    const ChordDistribution law(dim, radius);
    std::vector<double> column;
    column.reserve(family.grid.size());
    for (double d : family.grid) {
      if (kind == CurveKind::Cdf) {
        column.push_back(law.cdf(d));
        continue;
      }
      try {
        column.push_back(law.pdf(d));
      } catch (const SingularityError&) {
        column.push_back(std::numeric_limits<double>::infinity());
      }
    }
    family.columns.push_back(std::move(column));
  }
  return family;
}

}  // namespace hyperchord
