#include "hyperchord/distance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

namespace hyperchord {
namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

DistanceSample parse_distances(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string raw;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (header_allowed && line == "distance") {
      header_allowed = false;
      continue;
    }
    header_allowed = false;

    std::string_view digits = line;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || end != digits.data() + digits.size()) {
      fail(source, line_no, "not a decimal number: '" + std::string(line) + "'");
    }
    if (!std::isfinite(value)) fail(source, line_no, "distance must be finite");
    if (value < 0.0) fail(source, line_no, "distance must be non-negative: " + std::string(line));
    values.push_back(value);
  }
  if (in.bad()) throw ValidationError(source + ": read error");
  if (values.empty()) throw ValidationError(source + ": no distances found");
  return DistanceSample(std::move(values), source);
}

DistanceSample read_distance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open distance file: " + path.string());
  return parse_distances(in, path.string());
}

}  // namespace hyperchord
