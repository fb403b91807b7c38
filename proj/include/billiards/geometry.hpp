#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billiards/errors.hpp"
#include "billiards/tolerances.hpp"

namespace billiards {

using Point = Eigen::Vector2d;
using Vector = Eigen::Vector2d;

/// Exact fraction num/den in lowest terms with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction make_fraction(std::int64_t num, std::int64_t den);

/// Closest fraction to x with denominator at most maxDenominator, found from
/// the continued-fraction convergents of x and the last semiconvergent.
Fraction best_rational(double x, std::int64_t maxDenominator);

/// 2-D cross product (z component).
inline double cross(const Vector& a, const Vector& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Wraps a 1-based cyclic index into 1..k.
inline int wrap_index(int i, int k) { return ((i - 1) % k + k) % k + 1; }

double signed_area(const std::vector<Point>& vertices);

/// Euclidean distance between closed segments [a,b] and [c,d].
double segment_distance(const Point& a, const Point& b, const Point& c, const Point& d);

/// Distance from point p to the closed segment [a,b].
double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// Reflection of the plane across the line through a and b.
Eigen::Isometry2d reflection_across(const Point& a, const Point& b);

/// Validated simple counterclockwise polygon.
///
/// Corners and sides use the 1-based numbering e_i = [p_i, p_{i+1}]; every
/// accessor taking an index wraps it cyclically. Instances are immutable.
class Polygon {
 public:
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  const Point& corner(int i) const { return vertices_[wrap_index(i, size()) - 1]; }
  const Point& side_start(int i) const { return corner(i); }
  const Point& side_end(int i) const { return corner(i + 1); }
  double side_length(int i) const { return lengths_[wrap_index(i, size()) - 1]; }
  /// Unit vector along e_i, pointing toward increasing arc length.
  const Vector& tangent(int i) const { return tangents_[wrap_index(i, size()) - 1]; }
  /// Unit inward normal of e_i (left normal of the tangent).
  Vector inward_normal(int i) const {
    const Vector& t = tangent(i);
    return {-t.y(), t.x()};
  }
  /// Interior angle at corner p_i, in (0, 2pi).
  double angle(int i) const { return angles_[wrap_index(i, size()) - 1]; }
  /// Arc length of the boundary from p_1 to p_i.
  double arc_offset(int i) const { return offsets_[wrap_index(i, size()) - 1]; }
  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }

  /// Declared exact angle m/n (meaning pi*m/n) at corner i, if any.
  const std::optional<Fraction>& angle_spec(int i) const {
    return specs_[wrap_index(i, size()) - 1];
  }
  const std::vector<std::optional<Fraction>>& angle_specs() const { return specs_; }
  bool has_angle_specs() const;

 private:
  friend Polygon validate_polygon(std::vector<Point>, std::vector<std::optional<Fraction>>,
                                  std::string, const Tolerances&);
  Polygon() = default;

  std::string name_;
  std::vector<Point> vertices_;
  std::vector<double> lengths_;
  std::vector<Vector> tangents_;
  std::vector<double> angles_;
  std::vector<double> offsets_;
  std::vector<std::optional<Fraction>> specs_;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
};

/// Checks the vertex chain and returns a polygon, or throws GeometryError.
/// Clockwise input is rejected, never reversed.
Polygon validate_polygon(std::vector<Point> vertices,
                         std::vector<std::optional<Fraction>> angleSpecs = {},
                         std::string name = {},
                         const Tolerances& tol = kDefaultTolerances);

/// Builds a polygon from exact interior angles (fractions of pi) and side
/// lengths. Either all k lengths are given (closure is checked) or the first
/// k-2, in which case the last two are solved from the closing condition.
Polygon polygon_from_angles(const std::vector<Fraction>& angles,
                            const std::vector<double>& lengths,
                            std::string name = {},
                            const Tolerances& tol = kDefaultTolerances);

struct AngleClass {
  enum class Kind { Rational, Irrational, Undecided };
  Kind kind = Kind::Undecided;
  /// Per-corner fractions m_i/n_i (angle = pi*m_i/n_i); filled when rational.
  std::vector<Fraction> fractions;
  /// lcm of the denominators when rational, 0 otherwise.
  std::int64_t N = 0;
  /// Corners (1-based) that did not resolve within tolerance.
  std::vector<int> unresolved;
};

const char* to_string(AngleClass::Kind k);

AngleClass classify_rationality(const Polygon& p, std::int64_t maxDenominator = 100,
                                double tol = kDefaultTolerances.angle);

/// Point on the boundary: side index 1..k and arc length from p_i.
struct BoundaryPoint {
  int side = 1;
  double position = 0.0;
};

/// Canonical form: a corner is represented as (i, 0), never as (i-1, |e_{i-1}|).
BoundaryPoint canonicalize(const Polygon& p, BoundaryPoint b,
                           const Tolerances& tol = kDefaultTolerances);
bool is_corner(const Polygon& p, const BoundaryPoint& b, const Tolerances& tol = kDefaultTolerances);

Point boundary_to_plane(const Polygon& p, const BoundaryPoint& b);
BoundaryPoint plane_to_boundary(const Polygon& p, const Point& x,
                                const Tolerances& tol = kDefaultTolerances);

/// Normalized arc-length coordinate of b on the circle R/Z, starting at p_1.
double arc_coordinate(const Polygon& p, const BoundaryPoint& b);

}  // namespace billiards
