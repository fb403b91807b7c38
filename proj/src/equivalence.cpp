#include "billiards/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "billiards/diagonals.hpp"

namespace billiards {

namespace {

constexpr double kPi = std::numbers::pi;

double signed_gap(double a, double b) { return std::remainder(a - b, 2 * kPi); }

std::vector<double> arc_coordinates(const Polygon& p, const Orbit& o, std::size_t n) {
  std::vector<double> xs;
  const std::size_t m = std::min(n, o.points.size());
  xs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) xs.push_back(arc_coordinate(p, o.points[i].base));
  return xs;
}

}  // namespace

void check_leader_pair(const LeaderPair& lp) {
  if (lp.P.size() != lp.Q.size())
    throw DomainError("polygons have different side counts (" + std::to_string(lp.P.size()) + " vs " +
                      std::to_string(lp.Q.size()) + ")");
}

std::optional<std::size_t> codes_agree(const LeaderPair& lp, std::size_t n, const Tolerances& tol) {
  check_leader_pair(lp);
  const Code a = code_of(lp.P, lp.u, n, tol);
  const Code b = code_of(lp.Q, lp.v, n, tol);
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i)
    if (a.symbols[i] != b.symbols[i]) return i;
  if (a.size() != b.size()) return common;
  return std::nullopt;
}

PhasePoint transport(const Polygon& Q, const Eigen::Affine2d& map, const Polygon& P, const PhasePoint& u,
                     const Tolerances& tol) {
  const Point y = map * boundary_to_plane(P, u.base);
  const Vector d = (map.linear() * direction_of(P, u)).normalized();
  return phase_point_from_direction(Q, plane_to_boundary(Q, y, tol), d);
}

DensityReport boundary_density(const Polygon& p, const PhasePoint& u, std::size_t n, const Tolerances& tol) {
  if (n < 1) throw DomainError("boundary_density needs n >= 1");
  const Orbit o = iterate(p, u, n - 1, tol);
  std::vector<double> xs = arc_coordinates(p, o, n);
  std::sort(xs.begin(), xs.end());
  DensityReport r;
  r.points = xs.size();
  double gap = 1.0 - xs.back() + xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) gap = std::max(gap, xs[i] - xs[i - 1]);
  r.maxGapFraction = gap;
  r.maxGap = gap * p.perimeter();
  return r;
}

std::vector<std::size_t> index_set(const Polygon& p, const PhasePoint& u, int side, double theta,
                                   std::size_t n, double dirTol, const Tolerances& tol) {
  const Orbit o = iterate(p, u, n, tol);
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < o.points.size(); ++m)
    if (o.points[m].base.side == side && std::abs(signed_gap(o.planeDirections[m], theta)) <= dirTol)
      out.push_back(m);
  return out;
}

GSample g_function(const LeaderPair& lp, int side, double theta, std::size_t n, double clusterGap,
                   const Tolerances& tol) {
  check_leader_pair(lp);
  const Orbit a = iterate(lp.P, lp.u, n, tol);
  const Orbit b = iterate(lp.Q, lp.v, n, tol);
  GSample g;
  g.side = side;
  g.theta = theta;
  for (std::size_t m = 0; m < a.points.size(); ++m)
    if (a.points[m].base.side == side && std::abs(signed_gap(a.planeDirections[m], theta)) <= 1e-7)
      g.indices.push_back(m);
  if (g.indices.empty()) throw DomainError("index set is empty");
  for (std::size_t m : g.indices) {
    if (m >= b.points.size() || b.points[m].base.side != side)
      throw DomainError("codes disagree at index " + std::to_string(m));
    g.pairs.push_back({a.points[m].base.position, b.points[m].base.position, b.planeDirections[m]});
  }
  std::vector<std::array<double, 3>> sorted = g.pairs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x[1] < y[1]; });
  const double gapLen = clusterGap * lp.Q.side_length(side);
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i][1] - sorted[i - 1][1] <= gapLen) continue;
    double lo = 0.0, hi = 0.0;
    for (std::size_t j = begin; j < i; ++j) {
      const double d = signed_gap(sorted[j][2], sorted[begin][2]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    g.maxSpread = std::max(g.maxSpread, hi - lo);
    ++g.components;
    begin = i;
  }
  return g;
}

PointingReport pointing_count(const Polygon& p, const PhasePoint& u, int corner, std::size_t n, double delta,
                              const Tolerances& tol) {
  if (classify_rationality(p).kind != AngleClass::Kind::Rational)
    throw DomainError("pointing_count needs a rational polygon");
  if (!(delta > 0)) throw DomainError("delta must be positive");
  const double theta = plane_angle(direction_of(p, u));
  if (is_exceptional(p, theta, 8).exceptional)
    throw DomainError("start direction is exceptional (parallel to a generalized diagonal)");
  const Orbit o = iterate(p, u, n, tol);
  const std::vector<double> reps = cluster_angles(o.planeDirections, 1e-8);
  auto cls = [&reps](double a) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < reps.size(); ++i)
      if (std::abs(signed_gap(a, reps[i])) < std::abs(signed_gap(a, reps[best]))) best = i;
    return best;
  };

  PointingReport r;
  r.corner = corner;
  const Point c = p.corner(corner);
  std::array<std::set<std::pair<int, std::size_t>>, 3> families;
  for (std::size_t i = o.points.size() / 10; i + 1 < o.points.size(); ++i) {
    const Point a = boundary_to_plane(p, o.points[i].base);
    const Point b = boundary_to_plane(p, o.points[i + 1].base);
    const double d = point_segment_distance(c, a, b);
    if (d > delta || (c - a).dot(b - a) <= 0) continue;
    // Only segments heading into the corner: the reversed direction must lie
    // inside the interior wedge at c.
    const double back = std::remainder(o.planeDirections[i] + kPi - plane_angle(p.tangent(corner)), 2 * kPi);
    const double wedge = back < 0 ? back + 2 * kPi : back;
    if (wedge <= 1e-9 || wedge >= p.angle(corner) - 1e-9) continue;
    const std::pair<int, std::size_t> key{o.points[i].base.side, cls(o.planeDirections[i])};
    for (int level = 0; level < 3; ++level)
      if (d <= delta / static_cast<double>(1 << level)) families[level].insert(key);
  }
  for (int level = 0; level < 3; ++level) r.counts[level] = families[level].size();
  r.count = r.counts[2];
  r.conclusive = r.counts[0] == r.counts[1] && r.counts[1] == r.counts[2];
  return r;
}

OrderComparison order_agree(const LeaderPair& lp, std::size_t n, const Tolerances& tol) {
  check_leader_pair(lp);
  const std::size_t steps = n == 0 ? 0 : n - 1;
  const Orbit a = iterate(lp.P, lp.u, steps, tol);
  const Orbit b = iterate(lp.Q, lp.v, steps, tol);
  const std::size_t m = std::min(a.points.size(), b.points.size());
  const std::vector<double> xs = arc_coordinates(lp.P, a, m);
  const std::vector<double> ys = arc_coordinates(lp.Q, b, m);
  return same_combinatorial_order(xs, ys);
}

const char* to_string(SimilarityVerdict::Kind k) {
  switch (k) {
    case SimilarityVerdict::Kind::Similar: return "similar";
    case SimilarityVerdict::Kind::AffinelySimilar: return "affinelySimilar";
    case SimilarityVerdict::Kind::SameAngles: return "sameAngles";
    case SimilarityVerdict::Kind::Distinct: return "distinct";
  }
  return "?";
}

namespace {

SimilarityVerdict verdict_for_rotation(const Polygon& P, const Polygon& Q, int r, double angleTol,
                                       double ratioTol) {
  const int k = P.size();
  SimilarityVerdict v;
  v.rotation = r;
  for (int i = 1; i <= k; ++i)
    if (std::abs(P.angle(i) - Q.angle(i + r)) > angleTol) {
      v.witness = i;
      return v;
    }
  v.kind = SimilarityVerdict::Kind::SameAngles;

  auto ratio = [&](int i) { return Q.side_length(i + r) / P.side_length(i); };
  auto same = [&](double x, double y) { return std::abs(x - y) <= ratioTol * std::max(x, y); };
  const double a = ratio(1);
  int firstOff = 0;
  for (int i = 2; i <= k && firstOff == 0; ++i)
    if (!same(ratio(i), a)) firstOff = i;
  if (firstOff == 0) {
    v.kind = SimilarityVerdict::Kind::Similar;
    v.a = a;
    return v;
  }
  v.witness = firstOff;

  // Rectilinear case: every angle is pi/2 or 3pi/2.
  for (int i = 1; i <= k; ++i) {
    const double q = P.angle(i) / (kPi / 2);
    if (std::abs(q - std::round(q)) > angleTol) return v;
  }
  const double phi1 = plane_angle(P.tangent(1));
  double h = 0.0, w = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double d = std::remainder(plane_angle(P.tangent(i)) - phi1, kPi);
    double& slot = std::abs(d) < kPi / 4 ? h : w;
    if (slot == 0.0)
      slot = ratio(i);
    else if (!same(slot, ratio(i)))
      return v;
  }
  v.kind = SimilarityVerdict::Kind::AffinelySimilar;
  v.a = h;
  v.b = w;
  v.witness = 0;
  return v;
}

}  // namespace

SimilarityVerdict similarity_verdict(const Polygon& P, const Polygon& Q, double angleTol, double ratioTol) {
  if (P.size() != Q.size()) throw DomainError("polygons have different side counts");
  SimilarityVerdict best = verdict_for_rotation(P, Q, 0, angleTol, ratioTol);
  for (int r = 1; r < P.size(); ++r) {
    const SimilarityVerdict v = verdict_for_rotation(P, Q, r, angleTol, ratioTol);
    if (v.kind > best.kind) best = v;
  }
  return best;
}

}  // namespace billiards
