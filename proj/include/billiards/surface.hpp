#pragma once

#include <string>
#include <vector>

#include "billiards/dynamics.hpp"

namespace billiards {

/// Orbit of a plane direction under the group generated by reflections in
/// the side directions of a rational polygon (the dihedral group D_N).
struct DirectionOrbit {
  std::int64_t N = 0;
  double baseTheta = 0.0;
  /// Plane angles in [0, 2pi); angles[0] is baseTheta.
  std::vector<double> angles;
  /// reflection[a][j-1]: index of angles[a] reflected in side j.
  std::vector<std::vector<int>> reflection;
  /// Number of group elements fixing baseTheta, i.e. 2N / angles.size().
  std::int64_t stabilizer = 1;

  std::size_t size() const { return angles.size(); }
  /// Index of the orbit angle within tol of theta (mod 2pi), or -1.
  int find(double theta, double tol = 1e-7) const;
};

/// Throws DomainError when p is not rational.
DirectionOrbit direction_orbit(const Polygon& p, double theta);
DirectionOrbit direction_orbit(const Polygon& p, const AngleClass& cls, double theta);

struct ConePoint {
  int corner = 0;
  /// Copies of P meeting at this point.
  int copies = 0;
  double totalAngle = 0.0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// The closed flat surface glued from 2N copies of a rational polygon.
/// Stored combinatorially; copies are numbered 1..2N.
struct Surface {
  std::int64_t N = 0;
  int sides = 0;
  /// Test direction of each copy; copy 1 carries the base test angle.
  std::vector<double> copyDirections;
  /// True for copies with the original (counterclockwise) orientation.
  std::vector<bool> counterclockwise;
  /// glue[c-1][j-1]: copy whose side j is glued to side j of copy c.
  std::vector<std::vector<int>> glue;
  std::vector<ConePoint> conePoints;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler = 0;
  int genus = 0;
  bool connected = false;
  bool orientable = false;

  int copies() const { return static_cast<int>(copyDirections.size()); }
  int partner(int copy, int side) const { return glue[copy - 1][side - 1]; }
};

/// Builds the surface with test angle pi/(4N) measured from side 1 and
/// checks every structural invariant, throwing std::logic_error on failure.
Surface build_surface(const Polygon& p);
Surface build_surface(const Polygon& p, const AngleClass& cls);

/// Invariant violations of s against p (empty when consistent).
std::vector<std::string> check_surface(const Polygon& p, const AngleClass& cls, const Surface& s);

std::string format_surface(const Polygon& p, const Surface& s);

/// Edge of the skeleton: side j of the copies a and reflection(a, j), which
/// are glued together. The mu-length is |e| times the cosine of the crossing
/// direction's angle to the side normal.
struct SkeletonEdge {
  int side = 0;
  int angleIndex = 0;
  int partnerIndex = 0;
  double direction = 0.0;
  double muLength = 0.0;
  /// Direction parallel to the side: the edge carries no measure.
  bool zeroMeasure = false;
};

struct Skeleton {
  std::vector<SkeletonEdge> edges;
  double totalMu = 0.0;

  /// Index into edges of the edge (side, {a, b}), or -1.
  int find(int side, int angleIndex) const;
};

Skeleton skeleton(const Polygon& p, const DirectionOrbit& d, double angleTol = 1e-9);

struct BirkhoffClass {
  int side = 0;
  int edge = 0;  ///< index into the skeleton's edges
  std::size_t count = 0;
  double frequency = 0.0;
  double muShare = 0.0;
};

struct BirkhoffReport {
  std::size_t hits = 0;
  Skeleton skeleton;
  std::vector<BirkhoffClass> classes;
  /// Per side (index j-1): hit count, histogram of normalized positions and
  /// the Kolmogorov sup-norm distance of the positions from uniform.
  std::vector<std::size_t> sideHits;
  std::vector<std::vector<std::size_t>> histograms;
  std::vector<double> discrepancy;
  /// Hits whose direction did not match the orbit of the start direction.
  std::size_t unmatched = 0;
};

/// Empirical hit measure of the orbit of u over n bounces, per skeleton edge
/// and per side position.
BirkhoffReport birkhoff_side_distribution(const Polygon& p, const PhasePoint& u, std::size_t n,
                                          std::size_t bins = 20,
                                          const Tolerances& tol = kDefaultTolerances);

/// Kolmogorov distance sup |F_n(x) - x| of samples in [0,1] from uniform.
double uniform_discrepancy(std::vector<double> samples);

}  // namespace billiards
