#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

/// Reasons a vertex chain is rejected as a billiard table.
enum class PolygonDefect {
  TooFewVertices,
  DuplicateVertex,
  SelfIntersection,
  Clockwise,
  StraightAngle,
  DegenerateAngle,
  AngleSpecMismatch,
  NotClosed,
};

const char* to_string(PolygonDefect d);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(PolygonDefect defect, const std::string& what)
      : std::runtime_error(what), defect_(defect) {}
  PolygonDefect defect() const noexcept { return defect_; }

 private:
  PolygonDefect defect_;
};

/// A precondition of an operation does not hold (irrational polygon where a
/// rational one is required, side-count mismatch, point off the boundary...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (polygon files, angle/position arguments).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace billiards
