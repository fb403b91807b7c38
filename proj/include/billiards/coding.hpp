#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "billiards/dynamics.hpp"

namespace billiards {

/// Forward itinerary: symbols[i] is the side containing the i-th orbit point.
struct Code {
  std::vector<int> symbols;
  /// False when the orbit hit a corner (or went tangent) before n symbols.
  bool complete = true;

  std::size_t size() const { return symbols.size(); }
};

Code code_of(const Polygon& p, const PhasePoint& u, std::size_t n,
             const Tolerances& tol = kDefaultTolerances);
Code code_of(const Orbit& o);

/// a*s + b*tau + c > 0, in (position, tan theta) coordinates of the start side.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(double s, double tau) const { return a * s + b * tau + c; }
};

/// Initial conditions on one side sharing the first `depth` code symbols with
/// a reference orbit. Each crossed side contributes two half-planes: the line
/// through the start must pass between the unfolded images of the side's
/// endpoints. For convex tables this is exactly the prefix cell; for
/// non-convex tables it is a convex superset of it.
struct PrefixCell {
  int side = 1;
  double sideLength = 0.0;
  std::size_t depth = 1;
  std::vector<HalfPlane> constraints;
  /// Vertices of the clipped cell in (s, tau), counterclockwise. The tau
  /// range is capped at +-kTauCap when unconstrained.
  std::vector<Eigen::Vector2d> vertices;
  bool degenerate = false;

  static constexpr double kTauCap = 1e9;

  bool contains(double s, double tau) const;
  bool tau_unbounded() const;
};

PrefixCell prefix_cell(const Polygon& p, const PhasePoint& u, std::size_t m,
                       const Tolerances& tol = kDefaultTolerances);

struct EpsilonReport {
  std::size_t m = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
};

EpsilonReport epsilon_of_cell(const PrefixCell& cell, const PhasePoint& u);
EpsilonReport epsilon(const Polygon& p, const PhasePoint& u, std::size_t m,
                      const Tolerances& tol = kDefaultTolerances);

/// epsilon at every m in `ms` (ascending) from one incremental cell
/// construction. Clipped vertices never leave the previous cell's bounding
/// box, so the profile is non-increasing exactly.
std::vector<EpsilonReport> epsilon_profile(const Polygon& p, const PhasePoint& u,
                                           const std::vector<std::size_t>& ms,
                                           const Tolerances& tol = kDefaultTolerances);

/// Least index l >= 1 with a[l] != b[l] within the common length.
std::optional<std::size_t> separation_index(const Code& a, const Code& b);

struct IntersectionReport {
  bool intersects = false;
  std::optional<std::size_t> k0;
  std::optional<std::size_t> separation;
  /// False when the codes agree over the whole common length.
  bool separationObserved = false;
};

/// Forward check of whether two trajectories cross before their codes
/// separate. The backward case is the same test on time-reversed orbits.
IntersectionReport intersect_before_separation(const Polygon& p, const Orbit& o1, const Orbit& o2);

struct RecurrenceStats {
  /// Indices n >= 1 at which the initial m-word of the code reappears.
  std::vector<std::size_t> returns;
  /// Largest gap between consecutive returns, counting from index 0.
  std::optional<std::size_t> maxGap;
};

RecurrenceStats recurrence_gaps(const Code& c, std::size_t m);

struct OrderComparison {
  bool same = true;
  /// (k, l, m) with x_k in [x_l, x_m] disagreeing with y_k in [y_l, y_m].
  std::optional<std::array<std::size_t, 3>> witness;
};

/// Compares circular orders of xs, ys in R/Z (normalized arc length) by the
/// ranks of all points counterclockwise from index 0. Throws DomainError on
/// points closer than dupTol.
OrderComparison same_combinatorial_order(std::span<const double> xs, std::span<const double> ys,
                                         double dupTol = 1e-12);

/// Direct check of every triple; O(n^3).
OrderComparison same_combinatorial_order_naive(std::span<const double> xs,
                                               std::span<const double> ys, double dupTol = 1e-12);

/// Closed counterclockwise arc membership z in [from, to] on R/Z.
bool in_closed_arc(double z, double from, double to);

}  // namespace billiards
