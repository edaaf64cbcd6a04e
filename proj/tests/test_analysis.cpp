#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hyperchord/analysis.hpp"
#include "hyperchord/sampling.hpp"
#include "table1.hpp"

using namespace hyperchord;

namespace {

DistanceSample draw(int dim, double radius, std::size_t n, std::uint64_t seed) {
  return DistanceSample(sample_chords({.dim = dim, .radius = radius, .count = n, .seed = seed}),
                        "self");
}

// Brute-force KS: sup over the sample points of both one-sided gaps, counted directly.
double ks_brute(const std::vector<double>& values, const ChordDistribution& law) {
  const double n = values.size();
  double worst = 0.0;
  for (double v : values) {
    const double below = std::count_if(values.begin(), values.end(), [v](double x) { return x < v; });
    const double upto = std::count_if(values.begin(), values.end(), [v](double x) { return x <= v; });
    worst = std::max({worst, upto / n - law.cdf(v), law.cdf(v) - below / n});
  }
  return worst;
}

}  // namespace

TEST_CASE("DistanceSample validation") {
  CHECK_THROWS_AS(DistanceSample({}), ValidationError);
  CHECK_THROWS_AS(DistanceSample({1.0, -0.5}), ValidationError);
  CHECK_THROWS_AS(DistanceSample({1.0, INFINITY}), ValidationError);
  CHECK_THROWS_AS(DistanceSample({std::nan("")}), ValidationError);
  const DistanceSample s({3.0, 1.0, 2.0}, "x");
  CHECK(s.size() == 3);
  CHECK(s.source() == "x");
  CHECK_FALSE(s.sorted());
  const DistanceSample o = s.sorted_copy();
  CHECK(o.sorted());
  CHECK(o.values()[0] == 1.0);
  CHECK(DistanceSample({0.0, 0.0, 1.0}).sorted());
}

TEST_CASE("empirical cdf") {
  for (const DistanceSample& s : {DistanceSample({1.0, 2.0, 3.0}), DistanceSample({3.0, 1.0, 2.0})}) {
    CHECK(empirical_cdf(s, 0.5) == 0.0);
    CHECK(empirical_cdf(s, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(empirical_cdf(s, 2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(empirical_cdf(s, 2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(empirical_cdf(s, 3.0) == 1.0);
  }
  CHECK(empirical_cdf(DistanceSample({1.0, 1.0, 1.0, 2.0}), 1.0) == 0.75);
}

TEST_CASE("ks statistic examples") {
  for (int dim : {2, 3, 17}) {
    CHECK(std::fabs(ks_statistic(DistanceSample({std::sqrt(2.0)}), ChordDistribution(dim)) - 0.5) < 1e-12);
  }
  const DistanceSample n2 = draw(2, 1.0, 10'000, 5);
  CHECK(ks_statistic(n2, ChordDistribution(32)) > 0.3);
  CHECK(ks_statistic(n2, ChordDistribution(2)) < 1.63 / 100.0);
}

TEST_CASE("ks statistic matches brute force, with and without ties") {
  std::vector<double> v = sample_chords({.dim = 4, .radius = 1.0, .count = 500, .seed = 8});
  for (std::size_t i = 0; i < v.size(); i += 3) v[i] = std::round(v[i] * 20.0) / 20.0;
  v.push_back(1.0);
  v.push_back(1.0);
  v.push_back(2.5);  // beyond 2R
  for (int dim : {2, 4, 9}) {
    const ChordDistribution law(dim);
    CHECK(std::fabs(ks_statistic(DistanceSample(v), law) - ks_brute(v, law)) < 1e-15);
  }
}

TEST_CASE("ks grid agrees with the direct statistic") {
  std::vector<double> v = sample_chords({.dim = 11, .radius = 1.5, .count = 2000, .seed = 4});
  v.push_back(0.0);
  v.push_back(3.0);
  v.push_back(3.5);
  std::sort(v.begin(), v.end());
  const auto grid = dimension_grid();
  REQUIRE(grid.size() == 63 + 6);
  CHECK(grid.front() == 2);
  CHECK(grid.back() == 4096);
  const auto ks = ks_statistic_grid(v, 1.5, grid);
  const DistanceSample s(v);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    INFO("N=" << grid[j]);
    CHECK(std::fabs(ks[j] - ks_statistic(s, ChordDistribution(grid[j], 1.5))) < 1e-10);
  }
  const std::vector<int> sparse{3, 8, 9, 40, 300};
  const auto ks2 = ks_statistic_grid(v, 1.5, sparse);
  for (std::size_t j = 0; j < sparse.size(); ++j) {
    CHECK(std::fabs(ks2[j] - ks_statistic(s, ChordDistribution(sparse[j], 1.5))) < 1e-10);
  }
  const std::vector<int> unsorted{4, 3};
  CHECK_THROWS_AS(ks_statistic_grid(v, 1.5, unsorted), DomainError);
  CHECK_THROWS_AS(ks_statistic_grid(v, 0.0, sparse), DomainError);
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(-1.0) == 1.0);
  CHECK(std::fabs(kolmogorov_critical(0.05) - 1.3580986393225505) < 1e-9);
  CHECK(std::fabs(kolmogorov_critical(0.01) - 1.6276236115189504) < 1e-9);
  CHECK(std::fabs(kolmogorov_survival(1.3580986393225505) - 0.05) < 1e-12);
  // branches meet continuously at t = 1
  CHECK(std::fabs(kolmogorov_survival(1.0 - 1e-12) - kolmogorov_survival(1.0)) < 1e-11);
  CHECK(std::fabs(kolmogorov_survival(1.0) - 0.26999967167735456) < 1e-14);
  double prev = 1.0;
  for (double t = 0.05; t < 4.0; t += 0.05) {
    const double s = kolmogorov_survival(t);
    CHECK(s <= prev);
    prev = s;
  }
  CHECK_THROWS_AS(kolmogorov_critical(0.0), DomainError);
  CHECK_THROWS_AS(kolmogorov_critical(1.0), DomainError);
}

TEST_CASE("goodness of fit") {
  const DistanceSample matching = draw(5, 2.0, 100'000, 12);
  const GofReport ok = gof_test(matching, ChordDistribution(5, 2.0), 0.01);
  CHECK(ok.verdict == GofVerdict::Consistent);
  CHECK(ok.n == 100'000);
  CHECK(ok.null_dim == 5);
  CHECK(ok.null_radius == 2.0);
  CHECK(ok.p_bound > 0.01);
  CHECK(std::fabs(ok.critical_value - kolmogorov_critical(0.01) / std::sqrt(1e5)) < 1e-15);

  const GofReport bad = gof_test(draw(3, 1.0, 100'000, 13), ChordDistribution(4), 0.01);
  CHECK(bad.verdict == GofVerdict::Rejected);
  CHECK(bad.p_bound < 0.01);

  const DistanceSample constant(std::vector<double>(30, 1.0));
  for (int dim : {2, 3, 8, 64}) {
    CHECK(gof_test(constant, ChordDistribution(dim), 0.01).verdict == GofVerdict::Rejected);
  }
  CHECK_THROWS_AS(gof_test(DistanceSample({1.0, 1.2}), ChordDistribution(3), 0.01), ValidationError);
  CHECK_THROWS_AS(gof_test(matching, ChordDistribution(3), 1.5), DomainError);
}

TEST_CASE("goodness of fit is calibrated") {
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = gof_test(draw(6, 1.0, 10'000, 1000 + seed), ChordDistribution(6), 0.05);
    rejected += r.verdict == GofVerdict::Rejected;
  }
  CHECK(rejected >= 2);
  CHECK(rejected <= 20);
}

TEST_CASE("quantile ranges") {
  CHECK(std::fabs(quantile_range(ChordDistribution(2), 4) - 1.0824) < 5e-5);
  CHECK(std::fabs(quantile_range(ChordDistribution(3), 3) - 0.4783) < 5e-5);
  CHECK(std::fabs(quantile_range(ChordDistribution(256), 16) - 0.1358) < 5e-5);
  CHECK(std::fabs(quantile_range(ChordDistribution(2, 2.0), 3) - 2.0 * quantile_range(ChordDistribution(2), 3)) < 1e-12);
  CHECK_THROWS_AS(quantile_range(ChordDistribution(2), 2), DomainError);

  const auto table = quantile_table(kDefaultTableDims, kDefaultTableQs);
  REQUIRE(table.cells.size() == 45);
  double worst = 0.0;
  for (std::size_t i = 0; i < testing::kTableDims.size(); ++i) {
    for (std::size_t j = 0; j < testing::kTableQs.size(); ++j) {
      const double got = table.at(testing::kTableDims[i], testing::kTableQs[j]);
      worst = std::max(worst, std::fabs(got - testing::expected_cell(i, j)));
    }
  }
  CHECK(worst <= 5e-4);
  CHECK(std::fabs(table.at(8, 16) - testing::kCellN8Q16) < 1e-5);
  for (int q : kDefaultTableQs) {
    for (std::size_t i = 1; i < kDefaultTableDims.size(); ++i) {
      CHECK(table.at(kDefaultTableDims[i], q) < table.at(kDefaultTableDims[i - 1], q));
    }
  }
  CHECK_THROWS_AS(table.at(5, 3), std::out_of_range);
  CHECK_THROWS_AS(quantile_table({}, {3}), ValidationError);
}

TEST_CASE("dimension estimation examples") {
  {
    const auto est = estimate_dimension(draw(8, 1.0, 100'000, 21));
    CHECK(est.best_dim == 8);
    CHECK(std::fabs(est.radius_estimate - 1.0) < 0.01);
    CHECK(est.radius_estimated);
    CHECK(est.consistent);
    CHECK(est.lower_bound <= 8);
    REQUIRE(est.upper_bound.has_value());
    CHECK(*est.upper_bound >= 8);
  }
  {
    const auto est = estimate_dimension(draw(2, 5.0, 100'000, 22));
    CHECK(est.best_dim == 2);
    CHECK(std::fabs(est.radius_estimate - 5.0) < 0.05);
  }
  {
    const auto est = estimate_dimension(draw(3, 1.0, 100'000, 23), 1.0);
    CHECK(est.best_dim == 3);
    CHECK(est.radius_estimate == 1.0);
    CHECK_FALSE(est.radius_estimated);
  }
}

TEST_CASE("dimension estimation edge cases") {
  CHECK_THROWS_AS(estimate_dimension(draw(3, 1.0, 29, 1)), ValidationError);
  CHECK_THROWS_AS(estimate_dimension(DistanceSample(std::vector<double>(30, 1.0))), ValidationError);
  CHECK_THROWS_AS(estimate_dimension(draw(3, 1.0, 100, 1), -1.0), DomainError);

  // very high dimension: the passing run reaches the grid edge
  const auto high = estimate_dimension(draw(4096, 1.0, 2000, 5));
  CHECK(high.consistent);
  CHECK_FALSE(high.upper_bound.has_value());
  CHECK(high.lower_bound <= high.best_dim);

  // chords wider than 2R fit nothing
  std::vector<double> wide(500);
  for (std::size_t i = 0; i < wide.size(); ++i) wide[i] = (i % 2 == 0) ? 0.01 : 1.99;
  const auto none = estimate_dimension(DistanceSample(wide), 1.0);
  CHECK_FALSE(none.consistent);
  CHECK(none.lower_bound == none.best_dim);
  REQUIRE(none.upper_bound.has_value());
  CHECK(*none.upper_bound == none.best_dim);
}

TEST_CASE("figure series") {
  const auto bert = figure_series(FigureKind::Bertrand, {2, 3, 4});
  CHECK(std::fabs(bert[0].value - 1.0 / 3.0) < 1e-15);
  CHECK(bert[1].dim == 3);
  const auto mean = figure_series(FigureKind::Mean, {2, 3});
  CHECK(std::fabs(mean[0].value - 4.0 / std::numbers::pi) < 1e-14);
  CHECK(std::fabs(mean[1].value - 4.0 / 3.0) < 1e-14);
  CHECK(figure_series(FigureKind::Variance, {1 << 16})[0].value < 1e-4);

  std::vector<int> dims;
  for (int n = 2; n <= 64; ++n) dims.push_back(n);
  const auto b = figure_series(FigureKind::Bertrand, dims);
  const auto m = figure_series(FigureKind::Mean, dims);
  const auto v = figure_series(FigureKind::Variance, dims);
  for (std::size_t i = 1; i < dims.size(); ++i) {
    CHECK(b[i].value < b[i - 1].value);
    CHECK(m[i].value > m[i - 1].value);
    CHECK(v[i].value < v[i - 1].value);
  }
  CHECK_THROWS_AS(figure_series(FigureKind::Mean, {}), ValidationError);
}

TEST_CASE("curve families") {
  const auto cdf = curve_family(CurveKind::Cdf, {2}, 1.0, 3);
  REQUIRE(cdf.grid.size() == 3);
  CHECK(cdf.grid[0] == 0.0);
  CHECK(cdf.grid[2] == 2.0);
  CHECK(cdf.columns[0][0] == 0.0);
  CHECK(cdf.columns[0][2] == 1.0);
  CHECK(std::fabs(cdf.columns[0][1] - 1.0 / 3.0) < 1e-15);

  const auto pdf = curve_family(CurveKind::Pdf, {2, 3, 4}, 2.0, 101);
  CHECK(std::isinf(pdf.columns[0].back()));
  CHECK(std::fabs(pdf.columns[1].back() - 0.5) < 1e-15);
  CHECK(pdf.columns[2].back() == 0.0);
  CHECK_THROWS_AS(curve_family(CurveKind::Cdf, {2}, 1.0, 1), ValidationError);
}
