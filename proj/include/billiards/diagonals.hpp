#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiards/dynamics.hpp"

namespace billiards {

/// Billiard trajectory from a corner to a corner with no corner in between.
struct GeneralizedDiagonal {
  int startCorner = 0;
  int endCorner = 0;
  /// Sides hit strictly between the two corners.
  std::vector<int> codeWord;
  /// Plane angle in [0, 2pi) of the first segment.
  double planeDirection = 0.0;
  double euclideanLength = 0.0;
  int combinatorialLength = 0;
  /// Plane angles of every segment, first to last.
  std::vector<double> segmentDirections;
};

/// All generalized diagonals with at most maxSegments segments, by unfolding
/// from every corner. Sides of P are not diagonals. Sorted by
/// (startCorner, combinatorialLength, codeWord, endCorner).
std::vector<GeneralizedDiagonal> enumerate_diagonals(const Polygon& p, int maxSegments);

struct ExceptionalVerdict {
  bool exceptional = false;
  int level = 0;
  /// First diagonal found parallel to theta.
  std::optional<GeneralizedDiagonal> witness;
};

/// exceptional@L when theta is parallel (mod pi) to a segment of some
/// diagonal with at most L segments. clear@L proves nothing beyond L.
ExceptionalVerdict is_exceptional(const Polygon& p, double theta, int maxSegments,
                                  double angleTol = 1e-10);
ExceptionalVerdict is_exceptional(const std::vector<GeneralizedDiagonal>& diagonals, double theta,
                                  int maxSegments, double angleTol = 1e-10);

std::string format_code_word(const std::vector<int>& word);

}  // namespace billiards
