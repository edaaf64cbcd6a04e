// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hyperchord/analysis.hpp"
#include "hyperchord/chord.hpp"
#include "hyperchord/dot.hpp"
#include "hyperchord/sampling.hpp"
#include "oracles.hpp"
#include "table1.hpp"

using namespace hyperchord;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

const double kSqrt2 = std::sqrt(2.0);

std::vector<int> invariance_dims() {
  std::vector<int> dims;
  for (int n = 2; n <= 64; ++n) dims.push_back(n);
  dims.push_back(1 << 10);
  dims.push_back(1 << 16);
  return dims;
}

Outcome table_reproduction() {
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run({"table"}, out, err) != cli::kExitOk) return {false, "table command failed: " + err.str()};
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  double worst = 0.0;
  std::size_t rows = 0;
  int within = 0;
  std::string worst_cell;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string f;
    std::getline(fields, f, ',');
    if (rows >= 9 || std::stoi(f) != testing::kTableDims[rows]) return {false, "unexpected row " + line};
    for (std::size_t j = 0; j < 5; ++j) {
      if (!std::getline(fields, f, ',')) return {false, "short row " + line};
      const double err = std::fabs(std::stod(f) - testing::kTable[rows][j]);
      within += err <= 5e-4;
      if (err > worst) {
        worst = err;
        char cell[96];
        std::snprintf(cell, sizeof cell, "N=%d q=%d got %.5f, printed %.4f", testing::kTableDims[rows],
                      testing::kTableQs[j], std::stod(f), testing::kTable[rows][j]);
        worst_cell = cell;
      }
    }
    ++rows;
  }
  char buf[192];
  std::snprintf(buf, sizeof buf, "%d/45 cells within 5e-4, max |error| = %.2e (%s)", within, worst,
                worst_cell.c_str());
  return {rows == 9 && worst <= 5e-4, buf};
}

Outcome median_invariance() {
  double worst = 0.0;
  for (int dim : invariance_dims()) {
    for (double radius : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::fabs(ChordDistribution(dim, radius).cdf(kSqrt2 * radius) - 0.5));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |F(sqrt2 R) - 1/2| = %.2e", worst);
  return {worst <= 1e-12, buf};
}

Outcome second_moment() {
  double worst_abs = 0.0;
  for (int dim : invariance_dims()) {
    for (double radius : {0.1, 1.0, 10.0}) {
      worst_abs = std::max(worst_abs, std::fabs(ChordDistribution(dim, radius).moment(2) - 2.0 * radius * radius));
    }
  }
  double worst_rel = 0.0;
  for (int dim = 2; dim <= 32; ++dim) {
    for (double radius : {0.1, 1.0, 10.0}) {
      const ChordDistribution law(dim, radius);
      const double quad =
          testing::integrate([&](double d) { return d * d * law.pdf(d); }, 0.0, 2.0 * radius);
      worst_rel = std::max(worst_rel, std::fabs(quad - 2.0 * radius * radius) / (2.0 * radius * radius));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |mu2 - 2R^2| = %.2e, max quadrature rel. error = %.2e", worst_abs, worst_rel);
  return {worst_abs <= 1e-12 && worst_rel <= 1e-8, buf};
}

Outcome closed_forms() {
  double worst = 0.0;
  for (int dim = 2; dim <= 5; ++dim) {
    const ChordDistribution law(dim, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double d = 2.0 * (i + 0.5) / 1000.0;
      worst = std::max(worst, std::fabs(law.cdf(d) - law.closed_form_cdf(d)));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "4 x 1000 points, max |difference| = %.2e", worst);
  return {worst <= 1e-10, buf};
}

Outcome bertrand() {
  const double p2 = ChordDistribution(2).bertrand_probability();
  const double p3 = ChordDistribution(3).bertrand_probability();
  std::vector<int> dims;
  for (int n = 2; n <= 64; ++n) dims.push_back(n);
  std::ostringstream out;
  std::ostringstream err;
  bool decreasing = cli::run({"figures", "--kind", "bertrand", "--dims", "2..64"}, out, err) == cli::kExitOk;
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  double prev = 2.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    decreasing = decreasing && v < prev;
    prev = v;
    ++rows;
  }
  decreasing = decreasing && rows == 63;
  const bool ok = std::fabs(p2 - 1.0 / 3.0) <= 1e-12 && std::fabs(p3 - 0.25) <= 1e-12 && decreasing;
  char buf[128];
  std::snprintf(buf, sizeof buf, "P2 = %.15f, P3 = %.15f, series strictly decreasing: %s", p2, p3,
                decreasing ? "yes" : "no");
  return {ok, buf};
}

Outcome asymptotics() {
  const ChordDistribution law(1'000'000, 1.0);
  const double mean = law.mean();
  const double var = law.variance();
  const bool ok = mean >= kSqrt2 - 1e-5 && mean < kSqrt2 && var > 0.0 && var < 3e-6;
  char buf[128];
  std::snprintf(buf, sizeof buf, "sqrt2 - mean = %.3e, variance = %.3e", kSqrt2 - mean, var);
  return {ok, buf};
}

Outcome monte_carlo() {
  std::string detail;
  bool ok = true;
  for (int dim : {2, 3, 8, 32}) {
    const DistanceSample sample(
        sample_chords({.dim = dim, .radius = 1.0, .count = 100'000, .seed = 7000u + dim}));
    const GofReport r = gof_test(sample, ChordDistribution(dim), 0.01);
    ok = ok && r.verdict == GofVerdict::Consistent;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%sN=%d KS=%.4f", detail.empty() ? "" : ", ", dim, r.statistic);
    detail += buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " (critical %.4f)", kolmogorov_critical(0.01) / std::sqrt(1e5));
  return {ok, detail + buf};
}

Outcome dot_law() {
  double worst_id = 0.0;
  for (int dim : {2, 3, 8, 32}) {
    const DotProductDistribution dot(dim);
    const ChordDistribution chord(dim, 1.0);
    for (int i = 0; i <= 100; ++i) {
      const double c = -1.0 + 0.02 * i;
      worst_id = std::max(worst_id, std::fabs(dot.cdf(c) + chord.cdf(std::sqrt(2.0 - 2.0 * c)) - 1.0));
    }
  }
  double worst_m = 0.0;
  for (int dim : {2, 3, 8, 32, 1000}) {
    worst_m = std::max(worst_m, std::fabs(DotProductDistribution(dim).even_moment(1) - 1.0 / dim));
  }
  double worst_pdf = 0.0;
  for (int i = 0; i < 1000; ++i) {
    worst_pdf = std::max(worst_pdf, std::fabs(DotProductDistribution(3).pdf(-1.0 + 2.0 * (i + 0.5) / 1000) - 0.5));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "identity %.2e, even_moment(1) %.2e, N=3 pdf %.2e", worst_id, worst_m, worst_pdf);
  return {worst_id <= 1e-12 && worst_m <= 1e-12 && worst_pdf <= 1e-12, buf};
}

Outcome regressions() {
  const ChordDistribution circle(2, 1.0);
  const double mass = testing::integrate([&](double d) { return circle.pdf(d); }, 0.0, 2.0);
  const DotProductDistribution dot(5);
  const bool ends = dot.cdf(-1.0) == 0.0 && dot.cdf(1.0) == 1.0 && DotProductDistribution(2).cdf(-1.0) == 0.0 &&
                    DotProductDistribution(2).cdf(1.0) == 1.0;
  const double f2 = ChordDistribution(2).cdf(1.0);
  const double f3 = ChordDistribution(3).cdf(1.0);
  const bool order = std::fabs(f2 - 1.0 / 3.0) <= 1e-12 && std::fabs(f3 - 0.25) <= 1e-12 && f2 > f3;
  char buf[160];
  std::snprintf(buf, sizeof buf, "(a) N=2 mass - 1 = %.2e; (b) dot cdf endpoints exact: %s; (c) F2(R) > F3(R): %s",
                mass - 1.0, ends ? "yes" : "no", order ? "yes" : "no");
  return {std::fabs(mass - 1.0) <= 1e-9 && ends && order, buf};
}

Outcome estimator_round_trip() {
  constexpr int kSeeds = 20;
  std::string detail;
  bool ok = true;
  for (int dim : {2, 3, 8, 32}) {
    int hits = 0;
    std::vector<int> misses;
    for (int s = 0; s < kSeeds; ++s) {
      const DistanceSample sample(sample_chords(
          {.dim = dim, .radius = 1.0, .count = 100'000, .seed = 100'000u * dim + s}));
      const DimensionEstimate est = estimate_dimension(sample);
      const bool hit = est.best_dim == dim && std::fabs(est.radius_estimate - 1.0) < 0.02;
      hits += hit;
      if (!hit) misses.push_back(est.best_dim);
    }
    ok = ok && hits * 100 >= 95 * kSeeds;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%sN=%d %d/%d", detail.empty() ? "" : ", ", dim, hits, kSeeds);
    detail += buf;
    if (!misses.empty()) {
      detail += " (got";
      for (int m : misses) detail += " " + std::to_string(m);
      detail += ")";
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"table reproduction", table_reproduction},
      {"median invariance", median_invariance},
      {"second-moment invariance", second_moment},
      {"closed-form equivalence", closed_forms},
      {"Bertrand values", bertrand},
      {"asymptotics", asymptotics},
      {"Monte Carlo agreement", monte_carlo},
      {"dot-product law", dot_law},
      {"inconsistency regressions", regressions},
      {"estimator round trip", estimator_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-26s %.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
