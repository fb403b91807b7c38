#include "billiards/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace billiards {

const char* to_string(PolygonDefect d) {
  switch (d) {
    case PolygonDefect::TooFewVertices: return "too few vertices";
    case PolygonDefect::DuplicateVertex: return "duplicate vertex";
    case PolygonDefect::SelfIntersection: return "self-intersection";
    case PolygonDefect::Clockwise: return "clockwise orientation";
    case PolygonDefect::StraightAngle: return "straight angle";
    case PolygonDefect::DegenerateAngle: return "degenerate angle";
    case PolygonDefect::AngleSpecMismatch: return "angle declaration mismatch";
    case PolygonDefect::NotClosed: return "chain does not close";
  }
  return "unknown";
}

const char* to_string(AngleClass::Kind k) {
  switch (k) {
    case AngleClass::Kind::Rational: return "rational";
    case AngleClass::Kind::Irrational: return "irrational";
    case AngleClass::Kind::Undecided: return "undecided";
  }
  return "unknown";
}

Fraction make_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Fraction best_rational(double x, std::int64_t maxDenominator) {
  if (maxDenominator < 1) throw DomainError("maxDenominator must be positive");
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double af = std::floor(r);
    if (std::abs(af) > 1e15) break;
    const auto a = static_cast<std::int64_t>(af);
    if (q1 != 0 && a > (maxDenominator - q0) / q1) break;
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > maxDenominator) break;
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - af;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  const std::int64_t t = (maxDenominator - q0) / q1;
  const Fraction semi = make_fraction(p0 + t * p1, q0 + t * q1);
  const Fraction conv = make_fraction(p1, q1);
  return std::abs(semi.value() - x) < std::abs(conv.value() - x) ? semi : conv;
}

double signed_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double segment_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

Eigen::Isometry2d reflection_across(const Point& a, const Point& b) {
  const Vector u = (b - a).normalized();
  Eigen::Matrix2d m;
  m << 2 * u.x() * u.x() - 1, 2 * u.x() * u.y(),
       2 * u.x() * u.y(), 2 * u.y() * u.y() - 1;
  Eigen::Isometry2d iso = Eigen::Isometry2d::Identity();
  iso.linear() = m;
  iso.translation() = a - m * a;
  return iso;
}

bool Polygon::has_angle_specs() const {
  return std::any_of(specs_.begin(), specs_.end(), [](const auto& s) { return s.has_value(); });
}

namespace {

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

}  // namespace

Polygon validate_polygon(std::vector<Point> vertices, std::vector<std::optional<Fraction>> specs,
                         std::string name, const Tolerances& tol) {
  const int k = static_cast<int>(vertices.size());
  if (k < 3) throw GeometryError(PolygonDefect::TooFewVertices, "polygon needs at least 3 vertices");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if ((vertices[i] - vertices[j]).norm() <= tol.snap)
        throw GeometryError(PolygonDefect::DuplicateVertex,
                            "duplicate vertex " + point_str(vertices[i]) + " at corners " +
                                std::to_string(i + 1) + " and " + std::to_string(j + 1));

  for (int i = 0; i < k; ++i) {
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;  // adjacent through the wrap
      const double d = segment_distance(vertices[i], vertices[(i + 1) % k], vertices[j],
                                        vertices[(j + 1) % k]);
      if (d <= tol.snap)
        throw GeometryError(PolygonDefect::SelfIntersection,
                            "sides " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " intersect");
    }
  }

  const double area = signed_area(vertices);
  if (area <= 0.0)
    throw GeometryError(PolygonDefect::Clockwise,
                        "vertices are listed clockwise (signed area " + std::to_string(area) +
                            "); list them counterclockwise");

  Polygon p;
  p.name_ = std::move(name);
  p.vertices_ = std::move(vertices);
  p.lengths_.resize(k);
  p.tangents_.resize(k);
  p.angles_.resize(k);
  p.offsets_.resize(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    const Vector e = p.vertices_[(i + 1) % k] - p.vertices_[i];
    p.lengths_[i] = e.norm();
    p.tangents_[i] = e / p.lengths_[i];
    p.offsets_[i] = acc;
    acc += p.lengths_[i];
  }
  p.perimeter_ = acc;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      p.diameter_ = std::max(p.diameter_, (p.vertices_[i] - p.vertices_[j]).norm());

  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < k; ++i) {
    const Vector& in = p.tangents_[(i + k - 1) % k];
    const Vector& out = p.tangents_[i];
    const double turn = std::atan2(cross(in, out), in.dot(out));
    const double interior = pi - turn;
    p.angles_[i] = interior;
    if (interior <= tol.angle || interior >= 2 * pi - tol.angle)
      throw GeometryError(PolygonDefect::DegenerateAngle,
                          "corner " + std::to_string(i + 1) + " at " + point_str(p.vertices_[i]) +
                              " has a zero angle");
    if (std::abs(interior - pi) <= tol.angle)
      throw GeometryError(PolygonDefect::StraightAngle,
                          "corner " + std::to_string(i + 1) + " at " + point_str(p.vertices_[i]) +
                              " has angle pi (collinear sides)");
  }

  specs.resize(k);
  for (int i = 0; i < k; ++i) {
    if (!specs[i]) continue;
    const Fraction f = *specs[i];
    if (f.den <= 0 || f.num <= 0 || std::gcd(f.num, f.den) != 1)
      throw GeometryError(PolygonDefect::AngleSpecMismatch,
                          "angle declaration at corner " + std::to_string(i + 1) +
                              " is not a positive fraction in lowest terms");
    if (std::abs(pi * f.value() - p.angles_[i]) > tol.angle)
      throw GeometryError(PolygonDefect::AngleSpecMismatch,
                          "declared angle pi*" + std::to_string(f.num) + "/" +
                              std::to_string(f.den) + " at corner " + std::to_string(i + 1) +
                              " does not match the coordinates");
  }
  p.specs_ = std::move(specs);
  return p;
}

Polygon polygon_from_angles(const std::vector<Fraction>& angles, const std::vector<double>& lengths,
                            std::string name, const Tolerances& tol) {
  const int k = static_cast<int>(angles.size());
  if (k < 3) throw GeometryError(PolygonDefect::TooFewVertices, "polygon needs at least 3 angles");
  if (static_cast<int>(lengths.size()) != k && static_cast<int>(lengths.size()) != k - 2)
    throw DomainError("need k or k-2 side lengths");

  // Angles must sum to (k-2)*pi exactly.
  std::int64_t num = 0, den = 1;
  std::vector<Fraction> reduced;
  for (const Fraction& a : angles) {
    const Fraction f = make_fraction(a.num, a.den);
    reduced.push_back(f);
    const std::int64_t l = std::lcm(den, f.den);
    num = num * (l / den) + f.num * (l / f.den);
    den = l;
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  if (den != 1 || num != k - 2)
    throw GeometryError(PolygonDefect::NotClosed, "interior angles do not sum to (k-2)*pi");

  constexpr double pi = std::numbers::pi;
  // heading[i] is the direction of side i+1 (0-based storage).
  std::vector<Vector> dirs(k);
  double heading = 0.0;
  for (int i = 0; i < k; ++i) {
    dirs[i] = Vector(std::cos(heading), std::sin(heading));
    heading += pi - pi * reduced[(i + 1) % k].value();
  }

  std::vector<double> len = lengths;
  if (static_cast<int>(len.size()) == k - 2) {
    Vector rhs = Vector::Zero();
    for (int i = 0; i < k - 2; ++i) rhs -= len[i] * dirs[i];
    Eigen::Matrix2d m;
    m.col(0) = dirs[k - 2];
    m.col(1) = dirs[k - 1];
    if (std::abs(m.determinant()) < 1e-12)
      throw GeometryError(PolygonDefect::NotClosed, "last two sides are parallel; give all lengths");
    const Vector sol = m.partialPivLu().solve(rhs);
    if (sol.x() <= tol.snap || sol.y() <= tol.snap)
      throw GeometryError(PolygonDefect::NotClosed,
                          "side lengths admit no closed polygon with these angles");
    len.push_back(sol.x());
    len.push_back(sol.y());
  }
  for (double l : len)
    if (!(l > tol.snap)) throw GeometryError(PolygonDefect::NotClosed, "side lengths must be positive");

  std::vector<Point> v(k);
  Point cur = Point::Zero();
  for (int i = 0; i < k; ++i) {
    v[i] = cur;
    cur += len[i] * dirs[i];
  }
  if (cur.norm() > 1e-9 * std::max(1.0, std::accumulate(len.begin(), len.end(), 0.0)))
    throw GeometryError(PolygonDefect::NotClosed, "side lengths do not close the polygon");

  std::vector<std::optional<Fraction>> specs(reduced.begin(), reduced.end());
  return validate_polygon(std::move(v), std::move(specs), std::move(name), tol);
}

AngleClass classify_rationality(const Polygon& p, std::int64_t maxDenominator, double tol) {
  if (maxDenominator < 2) throw DomainError("maxDenominator must be at least 2");
  constexpr double pi = std::numbers::pi;
  AngleClass out;
  std::vector<Fraction> fr;
  bool irrational = false;
  for (int i = 1; i <= p.size(); ++i) {
    if (const auto& s = p.angle_spec(i)) {
      fr.push_back(*s);
      continue;
    }
    const double a = p.angle(i);
    const Fraction f = best_rational(a / pi, maxDenominator);
    const double err = std::abs(a - pi * f.value());
    if (err <= tol && f.num > 0) {
      fr.push_back(f);
    } else {
      out.unresolved.push_back(i);
      if (err > 10 * tol) irrational = true;
    }
  }
  if (out.unresolved.empty()) {
    out.kind = AngleClass::Kind::Rational;
    out.fractions = std::move(fr);
    out.N = 1;
    for (const Fraction& f : out.fractions) out.N = std::lcm(out.N, f.den);
  } else {
    out.kind = irrational ? AngleClass::Kind::Irrational : AngleClass::Kind::Undecided;
  }
  return out;
}

BoundaryPoint canonicalize(const Polygon& p, BoundaryPoint b, const Tolerances& tol) {
  b.side = wrap_index(b.side, p.size());
  if (std::abs(b.position - p.side_length(b.side)) <= tol.snap) return {wrap_index(b.side + 1, p.size()), 0.0};
  if (std::abs(b.position) <= tol.snap) return {b.side, 0.0};
  return b;
}

bool is_corner(const Polygon& p, const BoundaryPoint& b, const Tolerances& tol) {
  return b.position <= tol.snap || b.position >= p.side_length(b.side) - tol.snap;
}

Point boundary_to_plane(const Polygon& p, const BoundaryPoint& b) {
  return p.side_start(b.side) + b.position * p.tangent(b.side);
}

BoundaryPoint plane_to_boundary(const Polygon& p, const Point& x, const Tolerances& tol) {
  int best = 0;
  double bestDist = std::numeric_limits<double>::infinity();
  double bestPos = 0.0;
  for (int i = 1; i <= p.size(); ++i) {
    const double len = p.side_length(i);
    const double s = std::clamp((x - p.side_start(i)).dot(p.tangent(i)), 0.0, len);
    const double d = (x - (p.side_start(i) + s * p.tangent(i))).norm();
    if (d < bestDist) {
      bestDist = d;
      best = i;
      bestPos = s;
    }
  }
  if (bestDist > tol.snap)
    throw DomainError("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                      ") is not on the boundary (distance " + std::to_string(bestDist) + ")");
  return canonicalize(p, {best, bestPos}, tol);
}

double arc_coordinate(const Polygon& p, const BoundaryPoint& b) {
  double c = (p.arc_offset(b.side) + b.position) / p.perimeter();
  c -= std::floor(c);
  return c >= 1.0 ? 0.0 : c;
}

}  // namespace billiards
