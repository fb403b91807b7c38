#pragma once

#include <iosfwd>
#include <string>

#include "billiards/geometry.hpp"

namespace billiards {

// Line-oriented polygon files:
//
//   # comment
//   polygon <name>
//   vertex <x> <y>          (repeated, counterclockwise)
//   angle <corner> <m>/<n>  (optional; corner angle is pi*m/n)
//
// Anything after the expected fields on a line, other than a comment, is an
// error.

Polygon parse_polygon(std::istream& in, const Tolerances& tol = kDefaultTolerances);
Polygon parse_polygon_text(const std::string& text, const Tolerances& tol = kDefaultTolerances);
Polygon load_polygon(const std::string& path, const Tolerances& tol = kDefaultTolerances);

/// Writes p in the same format; coordinates use 17 significant digits.
std::string format_polygon(const Polygon& p);

}  // namespace billiards
