#pragma once

#include <algorithm>
#include <sstream>
#include <string>

#include "hyperchord/specfun.hpp"

namespace hyperchord::detail {

inline std::string describe(const std::string& what, double value) {
  std::ostringstream out;
  out.precision(17);
  out << what << " (got " << value << ")";
  return out.str();
}

// Incomplete-beta argument of the chord law at scaled chord t = d / R:
//   x = t^2 (1 - t^2/4),   1 - x = (1 - t^2/2)^2.
// Both are formed directly so neither end of the support suffers cancellation.
inline specfun::UnitPoint chord_argument(double t) {
  const double half = 0.5 * t;
  const double x = t * t * ((1.0 - half) * (1.0 + half));
  const double c = 1.0 - 0.5 * t * t;
  return {std::min(x, 1.0), c * c};
}

}  // namespace hyperchord::detail
