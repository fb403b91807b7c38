#include "billiards/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "billiards/csv.hpp"

namespace billiards {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a >= 2 * kPi ? 0.0 : a;
}

double angle_gap(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2 * kPi - d);
}

/// Reflection of plane angle a in a line at angle phi.
double reflect_angle(double a, double phi) { return wrap_angle(2 * phi - a); }

AngleClass require_rational(const Polygon& p) {
  AngleClass cls = classify_rationality(p);
  if (cls.kind != AngleClass::Kind::Rational)
    throw DomainError(std::string("polygon is not rational (classified ") + to_string(cls.kind) + ")");
  return cls;
}

// Minimal union-find.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int DirectionOrbit::find(double theta, double tol) const {
  for (std::size_t i = 0; i < angles.size(); ++i)
    if (angle_gap(angles[i], theta) <= tol) return static_cast<int>(i);
  return -1;
}

DirectionOrbit direction_orbit(const Polygon& p, double theta) {
  return direction_orbit(p, require_rational(p), theta);
}

DirectionOrbit direction_orbit(const Polygon& p, const AngleClass& cls, double theta) {
  if (cls.kind != AngleClass::Kind::Rational) throw DomainError("direction orbit needs a rational polygon");
  constexpr double tol = 1e-9;
  DirectionOrbit d;
  d.N = cls.N;
  d.baseTheta = wrap_angle(theta);
  d.angles.push_back(d.baseTheta);
  const int k = p.size();
  std::vector<double> phi(k);
  for (int j = 1; j <= k; ++j) phi[j - 1] = plane_angle(p.tangent(j));

  for (std::size_t a = 0; a < d.angles.size(); ++a) {
    std::vector<int> row(k);
    for (int j = 0; j < k; ++j) {
      const double r = reflect_angle(d.angles[a], phi[j]);
      int idx = d.find(r, tol);
      if (idx < 0) {
        if (static_cast<std::int64_t>(d.angles.size()) >= 2 * d.N)
          throw DomainError("direction orbit exceeds 2N angles; angle data inconsistent");
        d.angles.push_back(r);
        idx = static_cast<int>(d.angles.size()) - 1;
      }
      row[j] = idx;
    }
    d.reflection.push_back(std::move(row));
  }
  d.stabilizer = 2 * d.N / static_cast<std::int64_t>(d.angles.size());
  return d;
}

Surface build_surface(const Polygon& p) { return build_surface(p, require_rational(p)); }

Surface build_surface(const Polygon& p, const AngleClass& cls) {
  if (cls.kind != AngleClass::Kind::Rational) throw DomainError("surface needs a rational polygon");
  const int k = p.size();
  const double test = plane_angle(p.tangent(1)) + kPi / (4.0 * static_cast<double>(cls.N));
  const DirectionOrbit d = direction_orbit(p, cls, test);
  if (static_cast<std::int64_t>(d.size()) != 2 * cls.N)
    throw std::logic_error("test direction has a nontrivial stabilizer");

  Surface s;
  s.N = cls.N;
  s.sides = k;
  const int copies = static_cast<int>(d.size());
  s.copyDirections = d.angles;
  // Orientation: parity of the number of reflections reaching each angle.
  s.counterclockwise.assign(copies, false);
  std::vector<bool> seen(copies, false);
  std::vector<int> queue{0};
  seen[0] = true;
  s.counterclockwise[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int a = queue[q];
    for (int j = 0; j < k; ++j) {
      const int b = d.reflection[a][j];
      if (!seen[b]) {
        seen[b] = true;
        s.counterclockwise[b] = !s.counterclockwise[a];
        queue.push_back(b);
      }
    }
  }
  s.glue.assign(copies, std::vector<int>(k));
  for (int c = 0; c < copies; ++c)
    for (int j = 0; j < k; ++j) s.glue[c][j] = d.reflection[c][j] + 1;

  // Corner classes: corner j of copy c is shared by the copies glued along
  // sides j-1 and j.
  Dsu corners(copies * k);
  auto id = [k](int copy0, int corner1) { return copy0 * k + (corner1 - 1); };
  for (int c = 0; c < copies; ++c)
    for (int j = 1; j <= k; ++j) {
      const int other = s.glue[c][j - 1] - 1;
      corners.unite(id(c, j), id(other, j));
      corners.unite(id(c, wrap_index(j + 1, k)), id(other, wrap_index(j + 1, k)));
    }
  std::vector<int> classSize(copies * k, 0);
  for (int c = 0; c < copies; ++c)
    for (int j = 1; j <= k; ++j) ++classSize[corners.find(id(c, j))];
  std::vector<bool> emitted(copies * k, false);
  for (int j = 1; j <= k; ++j)
    for (int c = 0; c < copies; ++c) {
      const int root = corners.find(id(c, j));
      if (emitted[root]) continue;
      emitted[root] = true;
      ConePoint cp;
      cp.corner = j;
      cp.copies = classSize[root];
      cp.totalAngle = cp.copies * p.angle(j);
      cp.m = cls.fractions[j - 1].num;
      cp.n = cls.fractions[j - 1].den;
      s.conePoints.push_back(cp);
    }

  s.faces = copies;
  s.edges = copies * k / 2;
  s.vertices = static_cast<int>(s.conePoints.size());
  s.euler = s.vertices - s.edges + s.faces;
  s.genus = (2 - s.euler) / 2;

  Dsu faces(copies);
  for (int c = 0; c < copies; ++c)
    for (int j = 0; j < k; ++j) faces.unite(c, s.glue[c][j] - 1);
  s.connected = true;
  for (int c = 0; c < copies; ++c) s.connected = s.connected && faces.find(c) == faces.find(0);
  s.orientable = true;
  for (int c = 0; c < copies; ++c)
    for (int j = 0; j < k; ++j)
      s.orientable = s.orientable && s.counterclockwise[c] != s.counterclockwise[s.glue[c][j] - 1];

  const auto problems = check_surface(p, cls, s);
  if (!problems.empty()) throw std::logic_error("surface invariant violated: " + problems.front());
  return s;
}

std::vector<std::string> check_surface(const Polygon& p, const AngleClass& cls, const Surface& s) {
  std::vector<std::string> out;
  const int k = p.size();
  if (s.copies() != 2 * s.N) out.push_back("copy count is not 2N");
  for (int c = 1; c <= s.copies(); ++c)
    for (int j = 1; j <= k; ++j) {
      const int o = s.partner(c, j);
      if (o < 1 || o > s.copies() || s.partner(o, j) != c)
        out.push_back("gluing of copy " + std::to_string(c) + " side " + std::to_string(j) +
                      " is not an involution");
      if (o == c) out.push_back("side glued to itself");
    }
  for (const ConePoint& cp : s.conePoints) {
    const std::int64_t n = cls.fractions[cp.corner - 1].den;
    const std::int64_t m = cls.fractions[cp.corner - 1].num;
    if (cp.copies != 2 * n)
      out.push_back("corner " + std::to_string(cp.corner) + " joins " + std::to_string(cp.copies) +
                    " copies, expected " + std::to_string(2 * n));
    if (std::abs(cp.totalAngle - 2 * kPi * static_cast<double>(m)) > 1e-9)
      out.push_back("cone angle at corner " + std::to_string(cp.corner) + " is not 2*pi*m");
  }
  if (s.euler != s.vertices - s.edges + s.faces) out.push_back("Euler characteristic mismatch");
  if (s.euler % 2 != 0) out.push_back("odd Euler characteristic");
  if (!s.connected) out.push_back("surface is disconnected");
  if (!s.orientable) out.push_back("surface is not orientable");
  return out;
}

std::string format_surface(const Polygon& p, const Surface& s) {
  std::ostringstream os;
  os << "polygon " << (p.name().empty() ? "unnamed" : p.name()) << "\n";
  os << "N " << s.N << "\n";
  os << "copies " << s.copies() << "\n";
  os << "gluing\n";
  for (int c = 1; c <= s.copies(); ++c) {
    os << "  copy " << c << " (" << (s.counterclockwise[c - 1] ? "ccw" : "cw")
       << ", direction " << fmt17(s.copyDirections[c - 1]) << "):";
    for (int j = 1; j <= s.sides; ++j) os << " " << j << "->" << s.partner(c, j);
    os << "\n";
  }
  os << "cone points\n";
  for (const ConePoint& cp : s.conePoints)
    os << "  corner " << cp.corner << " copies " << cp.copies << " angle " << fmt17(cp.totalAngle)
       << " (2pi*" << fmt17(cp.totalAngle / (2 * kPi)) << ")\n";
  os << "vertices " << s.vertices << "\n";
  os << "edges " << s.edges << "\n";
  os << "faces " << s.faces << "\n";
  os << "euler " << s.euler << "\n";
  os << "genus " << s.genus << "\n";
  return os.str();
}

int Skeleton::find(int side, int angleIndex) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].side == side && (edges[i].angleIndex == angleIndex || edges[i].partnerIndex == angleIndex))
      return static_cast<int>(i);
  return -1;
}

Skeleton skeleton(const Polygon& p, const DirectionOrbit& d, double angleTol) {
  Skeleton sk;
  for (int j = 1; j <= p.size(); ++j) {
    const Vector n = p.inward_normal(j);
    for (std::size_t a = 0; a < d.size(); ++a) {
      const int b = d.reflection[a][j - 1];
      if (static_cast<int>(a) > b) continue;
      SkeletonEdge e;
      e.side = j;
      e.angleIndex = static_cast<int>(a);
      e.partnerIndex = b;
      e.direction = d.angles[a];
      const Vector dir(std::cos(d.angles[a]), std::sin(d.angles[a]));
      const double c = std::abs(dir.dot(n));
      e.zeroMeasure = c <= std::sin(angleTol) || static_cast<int>(a) == b;
      e.muLength = e.zeroMeasure ? 0.0 : p.side_length(j) * c;
      sk.totalMu += e.muLength;
      sk.edges.push_back(e);
    }
  }
  return sk;
}

double uniform_discrepancy(std::vector<double> x) {
  if (x.empty()) return 1.0;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, (static_cast<double>(i) + 1) / n - x[i]);
    d = std::max(d, x[i] - static_cast<double>(i) / n);
  }
  return d;
}

BirkhoffReport birkhoff_side_distribution(const Polygon& p, const PhasePoint& u, std::size_t n,
                                          std::size_t bins, const Tolerances& tol) {
  if (bins == 0) throw DomainError("need at least one histogram bin");
  const DirectionOrbit d = direction_orbit(p, plane_angle(direction_of(p, u)));
  const Orbit o = iterate(p, u, n, tol);
  BirkhoffReport r;
  r.skeleton = skeleton(p, d);
  const int k = p.size();
  r.sideHits.assign(k, 0);
  r.histograms.assign(k, std::vector<std::size_t>(bins, 0));
  std::vector<std::vector<double>> positions(k);
  std::vector<std::size_t> edgeCounts(r.skeleton.edges.size(), 0);

  for (std::size_t i = 1; i < o.points.size(); ++i) {
    const PhasePoint& x = o.points[i];
    const int j = x.base.side;
    const double frac = x.base.position / p.side_length(j);
    ++r.hits;
    ++r.sideHits[j - 1];
    positions[j - 1].push_back(frac);
    r.histograms[j - 1][std::min(bins - 1, static_cast<std::size_t>(frac * static_cast<double>(bins)))]++;
    const int a = d.find(o.planeDirections[i]);
    const int e = a < 0 ? -1 : r.skeleton.find(j, a);
    if (e < 0)
      ++r.unmatched;
    else
      ++edgeCounts[e];
  }
  for (int j = 0; j < k; ++j) r.discrepancy.push_back(uniform_discrepancy(positions[j]));
  for (std::size_t e = 0; e < r.skeleton.edges.size(); ++e) {
    BirkhoffClass c;
    c.side = r.skeleton.edges[e].side;
    c.edge = static_cast<int>(e);
    c.count = edgeCounts[e];
    c.frequency = r.hits ? static_cast<double>(c.count) / static_cast<double>(r.hits) : 0.0;
    c.muShare = r.skeleton.totalMu > 0 ? r.skeleton.edges[e].muLength / r.skeleton.totalMu : 0.0;
    r.classes.push_back(c);
  }
  return r;
}

}  // namespace billiards
