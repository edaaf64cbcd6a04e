#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperchord/analysis.hpp"
#include "hyperchord/chord.hpp"
#include "hyperchord/distance_io.hpp"
#include "hyperchord/dot.hpp"
#include "hyperchord/sampling.hpp"

namespace hyperchord::cli {
namespace {

using nlohmann::json;

// Raised for flag combinations CLI11 cannot express; reported as usage errors.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { Csv, Json };

Format default_format() {
  const char* env = std::getenv(kFormatEnv);
  if (env != nullptr && std::string_view(env) == "json") return Format::Json;
  return Format::Csv;
}

// Writes to --output when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ValidationError("cannot open output file: " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string dist = "chord";
  std::string fn;
  int dim = 0;
  double radius = 1.0;
  std::vector<double> at;
};

int order_of(double k) {
  if (!(k >= 1.0) || std::floor(k) != k || k > 1e6) {
    throw DomainError("moment order must be a positive integer (got " + format_number(k) + ")");
  }
  return static_cast<int>(k);
}

std::vector<double> eval_chord(const EvalArgs& a) {
  const ChordDistribution law(a.dim, a.radius);
  const std::map<std::string, std::function<double(double)>> pointwise{
      {"pdf", [&](double v) { return law.pdf(v); }},
      {"cdf", [&](double v) { return law.cdf(v); }},
      {"quantile", [&](double v) { return law.quantile(v); }},
      {"moment", [&](double v) { return law.moment(order_of(v)); }},
  };
  if (auto it = pointwise.find(a.fn); it != pointwise.end()) {
    if (a.at.empty()) throw UsageError("--fn " + a.fn + " needs --at");
    std::vector<double> out;
    for (double v : a.at) out.push_back(it->second(v));
    return out;
  }
  if (!a.at.empty()) throw UsageError("--fn " + a.fn + " takes no --at");
  if (a.fn == "mean") return {law.mean()};
  if (a.fn == "variance") return {law.variance()};
  return {law.bertrand_probability()};
}

std::vector<double> eval_dot(const EvalArgs& a) {
  const DotProductDistribution law(a.dim);
  if (a.fn == "bertrand") throw UsageError("--fn bertrand applies to --dist chord only");
  const std::map<std::string, std::function<double(double)>> pointwise{
      {"pdf", [&](double v) { return law.pdf(v); }},
      {"cdf", [&](double v) { return law.cdf(v); }},
      {"quantile", [&](double v) { return law.quantile(v); }},
      {"moment", [&](double v) { return law.moment(order_of(v)); }},
  };
  if (auto it = pointwise.find(a.fn); it != pointwise.end()) {
    if (a.at.empty()) throw UsageError("--fn " + a.fn + " needs --at");
    std::vector<double> out;
    for (double v : a.at) out.push_back(it->second(v));
    return out;
  }
  if (!a.at.empty()) throw UsageError("--fn " + a.fn + " takes no --at");
  return {a.fn == "mean" ? law.mean() : law.variance()};
}

// ---------------------------------------------------------------- table

void emit_table(std::ostream& out, const QuantileTable& table, Format format) {
  if (format == Format::Json) {
    json cells = json::array();
    for (const auto& c : table.cells) cells.push_back({{"dim", c.dim}, {"q", c.q}, {"range", c.range}});
    write_json(out, {{"schema", "table/1"},
                     {"radius", table.radius},
                     {"dims", table.dims},
                     {"qs", table.qs},
                     {"cells", cells}});
    return;
  }
  out << "dim";
  for (int q : table.qs) out << ",q" << q;
  out << '\n';
  for (int dim : table.dims) {
    out << dim;
    for (int q : table.qs) out << ',' << format_number(table.at(dim, q));
    out << '\n';
  }
}

// ---------------------------------------------------------------- gof / dim

json gof_json(const GofReport& r, const std::string& source, bool radius_estimated) {
  return {{"schema", "gof/1"},
          {"source", source},
          {"n", r.n},
          {"statistic", r.statistic},
          {"p_bound", r.p_bound},
          {"alpha", r.alpha},
          {"critical_value", r.critical_value},
          {"null_dim", r.null_dim},
          {"null_radius", r.null_radius},
          {"radius_estimated", radius_estimated},
          {"verdict", r.verdict == GofVerdict::Rejected ? "rejected" : "consistent"}};
}

json dim_json(const DimensionEstimate& e, const std::string& source, double alpha) {
  return {{"schema", "dim/1"},
          {"source", source},
          {"n", e.n},
          {"best_dim", e.best_dim},
          {"lower_bound", e.lower_bound},
          {"upper_bound", e.upper_bound ? json(*e.upper_bound) : json(nullptr)},
          {"radius_estimate", e.radius_estimate},
          {"radius_estimated", e.radius_estimated},
          {"ks_at_best", e.ks_at_best},
          {"critical_value", e.critical_value},
          {"alpha", alpha},
          {"consistent", e.consistent}};
}

double second_moment_radius(const DistanceSample& sample) {
  double m2 = 0.0;
  for (double v : sample.values()) m2 += v * v;
  m2 /= static_cast<double>(sample.size());
  if (!(m2 > 0.0)) throw ValidationError("cannot estimate a radius from an all-zero sample");
  return std::sqrt(0.5 * m2);
}

// ---------------------------------------------------------------- figures

void emit_series(std::ostream& out, const std::string& kind, const std::vector<SeriesPoint>& s) {
  out << "dim," << kind << '\n';
  for (const auto& p : s) out << p.dim << ',' << format_number(p.value) << '\n';
}

void emit_curves(std::ostream& out, const std::string& prefix, const CurveFamily& family) {
  out << 'd';
  for (int dim : family.dims) out << ',' << prefix << "_N" << dim;
  out << '\n';
  for (std::size_t i = 0; i < family.grid.size(); ++i) {
    out << format_number(family.grid[i]);
    for (const auto& column : family.columns) out << ',' << format_number(column[i]);
    out << '\n';
  }
}

std::vector<int> dims_or(const std::string& text, std::vector<int> fallback) {
  return text.empty() ? fallback : parse_int_list(text);
}

std::vector<int> range_list(int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<int> parse_int_list(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
      throw UsageError("bad integer '" + std::string(s) + "' in list '" + text + "'");
    }
    return v;
  };
  std::vector<int> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const int lo = to_int(item.substr(0, dots));
      const int hi = to_int(item.substr(dots + 2));
      if (hi < lo) throw UsageError("empty range '" + std::string(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_int(item));
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chord-length and dot-product laws on the N-sphere", "hyperchord"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"csv", "json"};

  // eval
  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a distribution function");
  eval_cmd->add_option("--dist", eval.dist, "chord or dot")->check(CLI::IsMember({"chord", "dot"}));
  eval_cmd->add_option("--fn", eval.fn, "Function to evaluate")
      ->required()
      ->check(CLI::IsMember({"pdf", "cdf", "quantile", "mean", "variance", "moment", "bertrand"}));
  eval_cmd->add_option("--dim", eval.dim, "Dimension N >= 2")->required();
  auto* eval_radius = eval_cmd->add_option("--radius", eval.radius, "Sphere radius (chord only)");
  eval_cmd->add_option("--at", eval.at, "Evaluation point(s); moment order for --fn moment")
      ->delimiter(',');

  // table
  std::string table_dims;
  std::string table_qs;
  double table_radius = 1.0;
  std::string table_format;
  std::string table_output;
  auto* table_cmd = app.add_subcommand("table", "Inter-quantile range table");
  table_cmd->add_option("--dims", table_dims, "Dimensions, e.g. 2,3,4 or 2..8");
  table_cmd->add_option("--qs", table_qs, "Quantile orders q >= 3");
  table_cmd->add_option("--radius", table_radius, "Sphere radius");
  table_cmd->add_option("--format", table_format, "csv or json")->check(CLI::IsMember(formats));
  table_cmd->add_option("--output", table_output, "Output file (default stdout)");

  // sample
  std::string sample_kind = "chord";
  std::string sample_method = "pairwise";
  SampleSpec spec;
  std::string sample_output;
  auto* sample_cmd = app.add_subcommand("sample", "Draw seeded samples");
  sample_cmd->add_option("--kind", sample_kind, "chord, dot or point")
      ->check(CLI::IsMember({"chord", "dot", "point"}));
  sample_cmd->add_option("--dim", spec.dim, "Dimension N >= 2")->required();
  auto* sample_radius = sample_cmd->add_option("--radius", spec.radius, "Sphere radius");
  sample_cmd->add_option("--count", spec.count, "Number of values")->required();
  sample_cmd->add_option("--seed", spec.seed, "64-bit seed");
  sample_cmd->add_option("--method", sample_method, "pairwise or inverse-cdf")
      ->check(CLI::IsMember({"pairwise", "inverse-cdf"}));
  sample_cmd->add_option("--threads", spec.workers, "Worker threads (0 = all cores)");
  sample_cmd->add_option("--output", sample_output, "Output file (default stdout)");

  // gof
  std::string gof_input;
  int gof_dim = 0;
  double gof_radius = 1.0;
  bool gof_estimate = false;
  double gof_alpha = 0.01;
  auto* gof_cmd = app.add_subcommand("gof", "KS goodness-of-fit audit of a distance file");
  gof_cmd->add_option("--input", gof_input, "Distance file")->required();
  gof_cmd->add_option("--dim", gof_dim, "Null dimension N")->required();
  auto* gof_radius_opt = gof_cmd->add_option("--radius", gof_radius, "Null radius");
  auto* gof_estimate_opt =
      gof_cmd->add_flag("--estimate-radius", gof_estimate, "Estimate R from the second moment");
  gof_radius_opt->excludes(gof_estimate_opt);
  gof_cmd->add_option("--alpha", gof_alpha, "Significance level");

  // dim
  std::string dim_input;
  std::optional<double> dim_radius;
  double dim_alpha = 0.01;
  auto* dim_cmd = app.add_subcommand("dim", "Estimate dimension and radius from a distance file");
  dim_cmd->add_option("--input", dim_input, "Distance file")->required();
  dim_cmd->add_option("--radius", dim_radius, "Known radius (estimated when omitted)");
  dim_cmd->add_option("--alpha", dim_alpha, "Significance level for the bounds");

  // figures
  std::string fig_kind;
  std::string fig_dims;
  double fig_radius = 1.0;
  int fig_points = 101;
  std::string fig_output;
  auto* fig_cmd = app.add_subcommand("figures", "Plot-ready CSV series");
  fig_cmd->add_option("--kind", fig_kind, "bertrand, mean, variance, cdf-curves or pdf-curves")
      ->required()
      ->check(CLI::IsMember({"bertrand", "mean", "variance", "cdf-curves", "pdf-curves"}));
  fig_cmd->add_option("--dims", fig_dims, "Dimensions, e.g. 2..64");
  fig_cmd->add_option("--radius", fig_radius, "Sphere radius");
  fig_cmd->add_option("--points", fig_points, "Grid size for curve families");
  fig_cmd->add_option("--output", fig_output, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hyperchord: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) {
      if (eval.dist == "dot" && eval_radius->count() > 0) {
        throw UsageError("--radius applies to --dist chord only");
      }
      const auto values = eval.dist == "chord" ? eval_chord(eval) : eval_dot(eval);
      for (double v : values) out << format_number(v) << '\n';
      return kExitOk;
    }

    if (table_cmd->parsed()) {
      const Format format = table_format.empty() ? default_format()
                            : table_format == "json" ? Format::Json
                                                     : Format::Csv;
      const auto table = quantile_table(dims_or(table_dims, kDefaultTableDims),
                                        dims_or(table_qs, kDefaultTableQs), table_radius);
      Sink sink(table_output, out);
      emit_table(*sink, table, format);
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      spec.method = sample_method == "pairwise" ? ChordMethod::PairwisePoints : ChordMethod::InverseCdf;
      spec.validate();
      Sink sink(sample_output, out);
      if (sample_kind == "chord") {
        for (double v : sample_chords(spec)) *sink << format_number(v) << '\n';
      } else if (sample_kind == "dot") {
        if (sample_radius->count() > 0) throw UsageError("--radius does not apply to --kind dot");
        for (double v : sample_dot_products(spec.dim, spec.count, spec.seed, spec.method, spec.workers)) {
          *sink << format_number(v) << '\n';
        }
      } else {
        if (spec.method != ChordMethod::PairwisePoints) {
          throw UsageError("--method inverse-cdf does not apply to --kind point");
        }
        const auto coords = sample_sphere_points(spec.dim, spec.radius, spec.count, spec.seed, spec.workers);
        for (std::size_t i = 0; i < spec.count; ++i) {
          for (int k = 0; k < spec.dim; ++k) {
            if (k > 0) *sink << ',';
            *sink << format_number(coords[i * spec.dim + k]);
          }
          *sink << '\n';
        }
      }
      return kExitOk;
    }

    if (gof_cmd->parsed()) {
      if (gof_radius_opt->count() == 0 && !gof_estimate) {
        throw UsageError("gof needs --radius or --estimate-radius");
      }
      const DistanceSample sample = read_distance_file(gof_input);
      const double radius = gof_estimate ? second_moment_radius(sample) : gof_radius;
      const GofReport report = gof_test(sample, ChordDistribution(gof_dim, radius), gof_alpha);
      write_json(out, gof_json(report, sample.source(), gof_estimate));
      return report.verdict == GofVerdict::Rejected ? kExitRejected : kExitOk;
    }

    if (dim_cmd->parsed()) {
      const DistanceSample sample = read_distance_file(dim_input);
      const DimensionEstimate est = estimate_dimension(sample, dim_radius, dim_alpha);
      write_json(out, dim_json(est, sample.source(), dim_alpha));
      return kExitOk;
    }

    if (fig_cmd->parsed()) {
      Sink sink(fig_output, out);
      if (fig_kind == "cdf-curves" || fig_kind == "pdf-curves") {
        const bool cdf = fig_kind == "cdf-curves";
        const auto family = curve_family(cdf ? CurveKind::Cdf : CurveKind::Pdf,
                                         dims_or(fig_dims, {2, 3, 4, 8, 16, 32}), fig_radius, fig_points);
        emit_curves(*sink, cdf ? "cdf" : "pdf", family);
      } else {
        const FigureKind kind = fig_kind == "bertrand" ? FigureKind::Bertrand
                                : fig_kind == "mean"   ? FigureKind::Mean
                                                       : FigureKind::Variance;
        emit_series(*sink, fig_kind, figure_series(kind, dims_or(fig_dims, range_list(2, 64)), fig_radius));
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "hyperchord: error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "hyperchord: no subcommand\n";
  return kExitUsage;
}

}  // namespace hyperchord::cli
