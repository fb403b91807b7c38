#pragma once

namespace billiards {

/// Every geometric tolerance used by the library lives here.
struct Tolerances {
  /// Coordinate snap: points closer than this are considered equal, rays
  /// passing closer than this to a corner are treated as corner hits.
  double snap = 1e-9;
  /// Angle tolerance (radians) for straight-angle rejection, declared angle
  /// checks, rationality detection and direction parallelism.
  double angle = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace billiards
