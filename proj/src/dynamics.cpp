#include "billiards/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace billiards {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

void check_phase_point(const Polygon& p, const PhasePoint& u, const Tolerances& tol) {
  if (u.base.side < 1 || u.base.side > p.size())
    throw DomainError("side index " + std::to_string(u.base.side) + " out of range");
  if (!(u.base.position > tol.snap && u.base.position < p.side_length(u.base.side) - tol.snap))
    throw DomainError("phase point base is a corner or off its side");
  if (!(std::abs(u.theta) < kPi / 2)) throw DomainError("theta must lie in (-pi/2, pi/2)");
}

Vector direction_of(const Polygon& p, const PhasePoint& u) {
  return std::cos(u.theta) * p.inward_normal(u.base.side) + std::sin(u.theta) * p.tangent(u.base.side);
}

PhasePoint phase_point_from_direction(const Polygon& p, const BoundaryPoint& b, const Vector& dir) {
  const double dn = dir.dot(p.inward_normal(b.side));
  if (!(dn > 0)) throw DomainError("direction does not point into the polygon");
  return {b, std::atan2(dir.dot(p.tangent(b.side)), dn)};
}

double plane_angle(const Vector& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0) a += 2 * kPi;
  return a >= 2 * kPi ? 0.0 : a;
}

StepOutcome step(const Polygon& p, const PhasePoint& u, const Tolerances& tol) {
  check_phase_point(p, u, tol);
  if (std::abs(u.theta) >= kPi / 2 - tol.angle) return Tangency{u.base.side};

  const Point o = boundary_to_plane(p, u.base);
  const Vector d = direction_of(p, u);
  const int k = p.size();

  double bestLambda = std::numeric_limits<double>::infinity();
  double bestMu = 0.0;
  int bestSide = 0;
  for (int j = 1; j <= k; ++j) {
    if (j == u.base.side) continue;
    const Vector e = p.side_end(j) - p.side_start(j);
    const double denom = cross(d, e);
    if (denom == 0.0) continue;
    const Vector w = p.side_start(j) - o;
    const double lambda = cross(w, e) / denom;
    const double mu = cross(w, d) / denom;
    const double slack = tol.snap / p.side_length(j);
    if (lambda <= 0.0 || mu < -slack || mu > 1.0 + slack) continue;
    if (lambda < bestLambda) {
      bestLambda = lambda;
      bestMu = mu;
      bestSide = j;
    }
  }
  if (bestSide == 0) throw DomainError("ray left the polygon (numerical failure)");

  // Any corner within snap of the flight segment ends the orbit.
  int corner = 0;
  double cornerProj = std::numeric_limits<double>::infinity();
  double cornerDist = 0.0;
  for (int c = 1; c <= k; ++c) {
    const Vector w = p.corner(c) - o;
    const double proj = w.dot(d);
    if (proj <= 0.0 || proj > bestLambda + tol.snap) continue;
    const double dist = std::abs(cross(d, w));
    if (dist <= tol.snap && proj < cornerProj) {
      corner = c;
      cornerProj = proj;
      cornerDist = dist;
    }
  }
  if (corner != 0) {
    const double roundoff = 64 * kEps * (p.diameter() + o.norm() + p.corner(corner).norm());
    return CornerHit{corner, cornerDist > roundoff, p.corner(corner)};
  }

  const double len = p.side_length(bestSide);
  const double s = std::clamp(bestMu * len, 0.0, len);
  const Vector n = p.inward_normal(bestSide);
  const Vector out = d - 2.0 * d.dot(n) * n;
  const double theta = std::atan2(out.dot(p.tangent(bestSide)), out.dot(n));
  if (std::abs(theta) >= kPi / 2 - tol.angle) return Tangency{bestSide};
  return PhasePoint{{bestSide, s}, theta};
}

std::size_t Orbit::segments() const {
  if (points.empty()) return 0;
  const bool cornerEnd = terminated && std::holds_alternative<CornerHit>(*terminated);
  return points.size() - 1 + (cornerEnd ? 1 : 0);
}

Orbit iterate(const Polygon& p, const PhasePoint& u, std::size_t n, const Tolerances& tol) {
  check_phase_point(p, u, tol);
  Orbit o;
  o.points.reserve(n + 1);
  o.planeDirections.reserve(n + 1);
  o.points.push_back(u);
  o.planeDirections.push_back(plane_angle(direction_of(p, u)));
  for (std::size_t i = 0; i < n; ++i) {
    StepOutcome r = step(p, o.points.back(), tol);
    if (auto* next = std::get_if<PhasePoint>(&r)) {
      o.points.push_back(*next);
      o.planeDirections.push_back(plane_angle(direction_of(p, *next)));
    } else if (auto* c = std::get_if<CornerHit>(&r)) {
      o.terminated = *c;
      break;
    } else {
      o.terminated = std::get<Tangency>(r);
      break;
    }
  }
  return o;
}

UnfoldedPath unfold(const Polygon& p, const Orbit& o) {
  if (o.segments() < 1) throw DomainError("unfold needs an orbit with at least one segment");
  UnfoldedPath path;
  path.origin = boundary_to_plane(p, o.start().base);
  path.direction = direction_of(p, o.start());
  path.chain.push_back(Eigen::Isometry2d::Identity());
  path.unfoldedPoints.push_back(path.origin);
  for (std::size_t i = 1; i < o.points.size(); ++i) {
    const int side = o.points[i].base.side;
    const Point x = boundary_to_plane(p, o.points[i].base);
    path.unfoldedPoints.push_back(path.chain.back() * x);
    path.crossedSides.push_back(side);
    if (i < o.segments())
      path.chain.push_back(path.chain.back() * reflection_across(p.side_start(side), p.side_end(side)));
  }
  if (o.terminated)
    if (const auto* c = std::get_if<CornerHit>(&*o.terminated))
      path.unfoldedPoints.push_back(path.chain.back() * c->where);
  return path;
}

Rho rho(const PhasePoint& u, const PhasePoint& v) {
  Rho r;
  r.rho1 = u.base.side == v.base.side ? std::abs(u.base.position - v.base.position)
                                      : std::numeric_limits<double>::infinity();
  r.rho2 = std::abs(u.theta - v.theta);
  r.rho = std::max(r.rho1, r.rho2);
  return r;
}

std::vector<double> cluster_angles(std::vector<double> angles, double tol) {
  if (angles.empty()) return {};
  for (double& a : angles) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> reps{angles.front()};
  for (std::size_t i = 1; i < angles.size(); ++i)
    if (angles[i] - angles[i - 1] > tol) reps.push_back(angles[i]);
  if (reps.size() > 1 && angles.front() + 2 * kPi - angles.back() <= tol) reps.erase(reps.begin());
  return reps;
}

std::size_t floor_count(const Polygon&, const Orbit& o, double tol) {
  return cluster_angles(o.planeDirections, tol).size();
}

}  // namespace billiards
