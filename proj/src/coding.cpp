#include "billiards/coding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace billiards {

Code code_of(const Orbit& o) {
  Code c;
  c.symbols.reserve(o.points.size());
  for (const PhasePoint& u : o.points) c.symbols.push_back(u.base.side);
  c.complete = !o.terminated.has_value();
  return c;
}

Code code_of(const Polygon& p, const PhasePoint& u, std::size_t n, const Tolerances& tol) {
  if (n == 0) return {};
  Code c = code_of(iterate(p, u, n - 1, tol));
  c.complete = c.symbols.size() == n;
  return c;
}

// ---------------------------------------------------------------------------
// Prefix cells

namespace {

using Vec2 = Eigen::Vector2d;

std::vector<Vec2> clip(const std::vector<Vec2>& poly, const HalfPlane& h) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& P = poly[i];
    const Vec2& Q = poly[(i + 1) % n];
    const double hp = h.eval(P.x(), P.y());
    const double hq = h.eval(Q.x(), Q.y());
    if (hp >= 0) out.push_back(P);
    if ((hp >= 0) != (hq >= 0)) {
      const double t = hp / (hp - hq);
      Vec2 X = P + t * (Q - P);
      // Keep the new vertex inside the edge's bounding box.
      X.x() = std::clamp(X.x(), std::min(P.x(), Q.x()), std::max(P.x(), Q.x()));
      X.y() = std::clamp(X.y(), std::min(P.y(), Q.y()), std::max(P.y(), Q.y()));
      out.push_back(X);
    }
  }
  return out;
}

double area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

/// Builds cells of increasing depth, calling visit(cell) after each depth in ms.
void build_cells(const Polygon& p, const PhasePoint& u, const std::vector<std::size_t>& ms,
                 const Tolerances& tol, const std::function<void(const PrefixCell&)>& visit) {
  if (ms.empty()) return;
  if (!std::is_sorted(ms.begin(), ms.end()) || ms.front() < 1)
    throw DomainError("prefix depths must be ascending and >= 1");
  const std::size_t mMax = ms.back();
  const Orbit o = iterate(p, u, mMax - 1, tol);
  if (o.points.size() < mMax)
    throw DomainError("orbit ends after " + std::to_string(o.points.size()) +
                      " symbols; prefix of length " + std::to_string(mMax) + " unavailable");

  PrefixCell cell;
  cell.side = u.base.side;
  cell.sideLength = p.side_length(cell.side);
  const double cap = PrefixCell::kTauCap;
  cell.vertices = {{0.0, -cap}, {cell.sideLength, -cap}, {cell.sideLength, cap}, {0.0, cap}};
  cell.constraints = {{1.0, 0.0, 0.0}, {-1.0, 0.0, cell.sideLength}};

  const Point origin = p.side_start(cell.side);
  const Vector t = p.tangent(cell.side);
  const Vector nrm = p.inward_normal(cell.side);
  const double s0 = u.base.position;
  const double tau0 = std::tan(u.theta);

  Eigen::Isometry2d chain = Eigen::Isometry2d::Identity();
  std::size_t next = 0;
  for (std::size_t depth = 1; depth <= mMax; ++depth) {
    if (depth >= 2) {
      const int side = o.points[depth - 1].base.side;
      for (const Point& corner : {p.side_start(side), p.side_end(side)}) {
        const Vector w = chain * corner - origin;
        const double at = w.dot(t), an = w.dot(nrm);
        // Sign of the corner relative to the line through (s, tau): s + an*tau - at.
        const double f0 = s0 + an * tau0 - at;
        if (f0 == 0.0) {
          cell.degenerate = true;
          continue;
        }
        const double sg = f0 > 0 ? 1.0 : -1.0;
        const HalfPlane h{sg, sg * an, -sg * at};
        cell.constraints.push_back(h);
        cell.vertices = clip(cell.vertices, h);
      }
      chain = chain * reflection_across(p.side_start(side), p.side_end(side));
    }
    cell.depth = depth;
    if (next < ms.size() && depth == ms[next]) {
      PrefixCell snapshot = cell;
      if (snapshot.vertices.size() < 3 || std::abs(area(snapshot.vertices)) == 0.0)
        snapshot.degenerate = true;
      while (next < ms.size() && ms[next] == depth) {
        visit(snapshot);
        ++next;
      }
    }
  }
}

}  // namespace

bool PrefixCell::contains(double s, double tau) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const HalfPlane& h) { return h.eval(s, tau) > 0; });
}

bool PrefixCell::tau_unbounded() const {
  return std::any_of(vertices.begin(), vertices.end(),
                     [](const Eigen::Vector2d& v) { return std::abs(v.y()) >= kTauCap; });
}

PrefixCell prefix_cell(const Polygon& p, const PhasePoint& u, std::size_t m, const Tolerances& tol) {
  PrefixCell out;
  build_cells(p, u, {m}, tol, [&](const PrefixCell& c) { out = c; });
  return out;
}

EpsilonReport epsilon_of_cell(const PrefixCell& cell, const PhasePoint& u) {
  if (cell.degenerate) throw DomainError("prefix cell has empty interior");
  EpsilonReport r;
  r.m = cell.depth;
  for (const auto& v : cell.vertices) {
    r.eps1 = std::max(r.eps1, std::abs(v.x() - u.base.position));
    r.eps2 = std::max(r.eps2, std::abs(std::atan(v.y()) - u.theta));
  }
  r.eps = std::max(r.eps1, r.eps2);
  return r;
}

EpsilonReport epsilon(const Polygon& p, const PhasePoint& u, std::size_t m, const Tolerances& tol) {
  return epsilon_of_cell(prefix_cell(p, u, m, tol), u);
}

std::vector<EpsilonReport> epsilon_profile(const Polygon& p, const PhasePoint& u,
                                           const std::vector<std::size_t>& ms,
                                           const Tolerances& tol) {
  std::vector<EpsilonReport> out;
  build_cells(p, u, ms, tol, [&](const PrefixCell& c) { out.push_back(epsilon_of_cell(c, u)); });
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> separation_index(const Code& a, const Code& b) {
  if (a.symbols.empty() || b.symbols.empty() || a.symbols[0] != b.symbols[0])
    throw DomainError("codes must share their first symbol");
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t l = 1; l < n; ++l)
    if (a.symbols[l] != b.symbols[l]) return l;
  return std::nullopt;
}

namespace {

bool open_segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

IntersectionReport intersect_before_separation(const Polygon& p, const Orbit& o1, const Orbit& o2) {
  IntersectionReport r;
  const Code c1 = code_of(o1), c2 = code_of(o2);
  r.separation = separation_index(c1, c2);
  r.separationObserved = r.separation.has_value();
  const std::size_t common = std::min(o1.points.size(), o2.points.size());
  // Segment k0 joins points k0 and k0+1; with separation l we need k0 < l.
  const std::size_t limit = r.separation ? *r.separation : common - 1;
  for (std::size_t k0 = 0; k0 < limit && k0 + 1 < common; ++k0) {
    const Point a = boundary_to_plane(p, o1.points[k0].base);
    const Point b = boundary_to_plane(p, o1.points[k0 + 1].base);
    const Point c = boundary_to_plane(p, o2.points[k0].base);
    const Point d = boundary_to_plane(p, o2.points[k0 + 1].base);
    if (open_segments_cross(a, b, c, d)) {
      r.intersects = true;
      r.k0 = k0;
      break;
    }
  }
  return r;
}

RecurrenceStats recurrence_gaps(const Code& c, std::size_t m) {
  RecurrenceStats r;
  if (m == 0 || c.size() < m + 1) return r;
  const auto& s = c.symbols;
  const std::boyer_moore_horspool_searcher searcher(s.begin(), s.begin() + static_cast<long>(m));
  auto it = s.begin() + 1;
  while (true) {
    it = std::search(it, s.end(), searcher);
    if (it == s.end()) break;
    r.returns.push_back(static_cast<std::size_t>(it - s.begin()));
    ++it;
  }
  if (!r.returns.empty()) {
    std::size_t prev = 0, gap = 0;
    for (std::size_t n : r.returns) {
      gap = std::max(gap, n - prev);
      prev = n;
    }
    r.maxGap = gap;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Combinatorial order

bool in_closed_arc(double z, double from, double to) {
  auto ccw = [](double x, double base) {
    double d = x - base;
    if (d < 0) d += 1.0;
    return d;
  };
  return ccw(z, from) <= ccw(to, from);
}

namespace {

void check_distinct(std::span<const double> v, double dupTol, const char* which) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] - s[i - 1] <= dupTol)
      throw DomainError(std::string("duplicate points in ") + which + "; circular order undefined");
  if (s.size() > 1 && s.front() + 1.0 - s.back() <= dupTol)
    throw DomainError(std::string("duplicate points in ") + which + "; circular order undefined");
}

std::vector<std::size_t> ccw_ranking(std::span<const double> v) {
  std::vector<double> key(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double d = v[i] - v[0];
    if (d < 0) d += 1.0;
    key[i] = d;
  }
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  return idx;
}

}  // namespace

OrderComparison same_combinatorial_order(std::span<const double> xs, std::span<const double> ys,
                                         double dupTol) {
  if (xs.size() != ys.size()) throw DomainError("sequences differ in length");
  check_distinct(xs, dupTol, "first sequence");
  check_distinct(ys, dupTol, "second sequence");
  OrderComparison r;
  if (xs.size() < 3) return r;
  const auto ox = ccw_ranking(xs);
  const auto oy = ccw_ranking(ys);
  if (ox == oy) return r;
  std::vector<std::size_t> rankY(ys.size());
  for (std::size_t i = 0; i < oy.size(); ++i) rankY[oy[i]] = i;
  r.same = false;
  for (std::size_t i = 0; i + 1 < ox.size(); ++i) {
    if (rankY[ox[i]] > rankY[ox[i + 1]]) {
      r.witness = std::array<std::size_t, 3>{ox[i], 0, ox[i + 1]};
      break;
    }
  }
  return r;
}

OrderComparison same_combinatorial_order_naive(std::span<const double> xs,
                                               std::span<const double> ys, double dupTol) {
  if (xs.size() != ys.size()) throw DomainError("sequences differ in length");
  check_distinct(xs, dupTol, "first sequence");
  check_distinct(ys, dupTol, "second sequence");
  OrderComparison r;
  const std::size_t n = xs.size();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k)
        if (in_closed_arc(xs[k], xs[l], xs[m]) != in_closed_arc(ys[k], ys[l], ys[m])) {
          r.same = false;
          r.witness = std::array<std::size_t, 3>{k, l, m};
          return r;
        }
  return r;
}

}  // namespace billiards
