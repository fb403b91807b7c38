#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

/// Element (x, theta) of the billiard phase space. theta is measured from the
/// inward normal of the base side, positive toward increasing arc length.
struct PhasePoint {
  BoundaryPoint base;
  double theta = 0.0;
};

/// Throws DomainError unless u sits on a side interior with |theta| < pi/2.
void check_phase_point(const Polygon& p, const PhasePoint& u,
                       const Tolerances& tol = kDefaultTolerances);

/// Unit plane vector of the direction of u.
Vector direction_of(const Polygon& p, const PhasePoint& u);

/// Phase point at b moving in plane direction dir (must point inward).
PhasePoint phase_point_from_direction(const Polygon& p, const BoundaryPoint& b, const Vector& dir);

/// Angle of v in [0, 2pi).
double plane_angle(const Vector& v);

/// The time-reversed phase point: same base, opposite tangential component.
inline PhasePoint reversed(const PhasePoint& u) { return {u.base, -u.theta}; }

struct CornerHit {
  int corner = 0;
  /// True when the ray only passes within snap tolerance of the corner
  /// instead of meeting it up to roundoff.
  bool toleranceLimited = false;
  Point where = Point::Zero();
};

struct Tangency {
  int side = 0;
};

using StepOutcome = std::variant<PhasePoint, CornerHit, Tangency>;
using Termination = std::variant<CornerHit, Tangency>;

/// One application of the billiard map. Scans every side, so non-convex
/// tables are handled; a ray within snap tolerance of any corner is a
/// CornerHit, never continued.
StepOutcome step(const Polygon& p, const PhasePoint& u, const Tolerances& tol = kDefaultTolerances);

struct Orbit {
  /// u_0 = start, u_1 = T u_0, ... ; points.front() is the start.
  std::vector<PhasePoint> points;
  /// planeDirections[i]: plane angle in [0, 2pi) of the segment leaving points[i].
  std::vector<double> planeDirections;
  std::optional<Termination> terminated;

  const PhasePoint& start() const { return points.front(); }
  /// Number of free-flight segments, including a final corner-bound one.
  std::size_t segments() const;
};

/// Applies step up to n times; stops at the first corner hit or tangency.
Orbit iterate(const Polygon& p, const PhasePoint& u, std::size_t n,
              const Tolerances& tol = kDefaultTolerances);

struct UnfoldedPath {
  /// chain[i] maps P onto the copy containing segment i; chain[0] = identity.
  std::vector<Eigen::Isometry2d> chain;
  Point origin = Point::Zero();
  Vector direction = Vector::UnitX();
  /// Sides hit at u_1, u_2, ...
  std::vector<int> crossedSides;
  /// Bounce points (and a terminal corner, if any) carried to the unfolded plane.
  std::vector<Point> unfoldedPoints;
};

UnfoldedPath unfold(const Polygon& p, const Orbit& o);

struct Rho {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho = 0.0;
};

/// rho1 is +inf for points on different sides.
Rho rho(const PhasePoint& u, const PhasePoint& v);

/// Representatives of the circular clusters of angles (mod 2pi); two angles
/// belong to one cluster when chained by gaps <= tol.
std::vector<double> cluster_angles(std::vector<double> angles, double tol);

/// Number of distinct plane directions (floors) visited by the orbit.
std::size_t floor_count(const Polygon& p, const Orbit& o, double tol = 1e-8);

}  // namespace billiards
