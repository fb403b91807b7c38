#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "billiards/coding.hpp"

namespace billiards {

/// Two polygons with the same number of sides and a candidate pair of
/// leaders. Side e_i of P corresponds to side f_i of Q.
struct LeaderPair {
  Polygon P;
  Polygon Q;
  PhasePoint u;
  PhasePoint v;
  std::size_t horizon = 0;
};

/// Throws DomainError unless P and Q have equal side counts.
void check_leader_pair(const LeaderPair& lp);

/// Index of the first disagreement of the codes of u and v over n symbols,
/// or nullopt when they agree. An orbit stopped early at a corner counts as
/// disagreeing at its length unless both stop at the same index.
std::optional<std::size_t> codes_agree(const LeaderPair& lp, std::size_t n,
                                       const Tolerances& tol = kDefaultTolerances);

/// Image of u under the affine map x -> A x + b taking P onto Q.
PhasePoint transport(const Polygon& Q, const Eigen::Affine2d& map, const Polygon& P,
                     const PhasePoint& u, const Tolerances& tol = kDefaultTolerances);

struct DensityReport {
  std::size_t points = 0;
  double maxGap = 0.0;          ///< arc length
  double maxGapFraction = 0.0;  ///< of the perimeter
};

/// Largest arc-length gap on the boundary between the first n orbit points.
DensityReport boundary_density(const Polygon& p, const PhasePoint& u, std::size_t n,
                               const Tolerances& tol = kDefaultTolerances);

/// Indices m <= n with u_m on side e and plane direction within dirTol of theta.
std::vector<std::size_t> index_set(const Polygon& p, const PhasePoint& u, int side, double theta,
                                   std::size_t n, double dirTol = 1e-7,
                                   const Tolerances& tol = kDefaultTolerances);

struct GSample {
  int side = 0;
  double theta = 0.0;
  std::vector<std::size_t> indices;
  /// (x_m, y_m, beta_m): positions on e_i and f_i and the direction on Q.
  std::vector<std::array<double, 3>> pairs;
  /// Largest spread of beta within one cluster of y values.
  double maxSpread = 0.0;
  std::size_t components = 0;
};

/// Samples y -> beta on the index set of (side, theta) for u. Throws
/// DomainError when the index set is empty or the codes disagree on it.
GSample g_function(const LeaderPair& lp, int side, double theta, std::size_t n,
                   double clusterGap = 0.05, const Tolerances& tol = kDefaultTolerances);

struct PointingReport {
  int corner = 0;
  /// Counts at delta, delta/2, delta/4.
  std::array<std::size_t, 3> counts{};
  std::size_t count = 0;
  bool conclusive = false;
};

/// Number of (side, direction class) families of segments entering the
/// corner: the segment passes within delta of it, heading in. Counted over
/// the orbit tail. Throws DomainError when u is exceptional at level 8.
PointingReport pointing_count(const Polygon& p, const PhasePoint& u, int corner, std::size_t n,
                              double delta, const Tolerances& tol = kDefaultTolerances);

/// Combinatorial order of the first n boundary points of both orbits.
OrderComparison order_agree(const LeaderPair& lp, std::size_t n,
                            const Tolerances& tol = kDefaultTolerances);

struct SimilarityVerdict {
  enum class Kind { Distinct, SameAngles, AffinelySimilar, Similar };
  Kind kind = Kind::Distinct;
  /// Q's labels are shifted by this amount: e_i corresponds to f_{i+rotation}.
  int rotation = 0;
  /// Scale factor (similar) or horizontal factor (affine).
  double a = 0.0;
  /// Vertical factor (affine only).
  double b = 0.0;
  /// Violated corner (distinct) or side (same angles), 1-based on P.
  int witness = 0;
};

const char* to_string(SimilarityVerdict::Kind k);

SimilarityVerdict similarity_verdict(const Polygon& P, const Polygon& Q, double angleTol = 1e-9,
                                     double ratioTol = 1e-9);

}  // namespace billiards
