#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace billiards::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the command line tool. Returns 0 on success, 1 on domain, geometry
/// or parse errors and 2 on usage errors; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// "deg:<x>" or radians.
double parse_angle(const std::string& text);
/// "frac:<t>" (fraction of the side length) or arc length.
double parse_position(const std::string& text, double sideLength);

}  // namespace billiards::cli
