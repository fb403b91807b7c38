#include "billiards/diagonals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

namespace billiards {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a >= 2 * kPi ? 0.0 : a;
}

Vector unit(double phi) { return {std::cos(phi), std::sin(phi)}; }

struct Hit {
  int side = 0;
  double lambda = kInf;
};

class Enumerator {
 public:
  Enumerator(const Polygon& p, int maxSegments) : p_(p), L_(maxSegments) {}

  void from_corner(int c) {
    start_ = c;
    origin_ = p_.corner(c);
    const double lo = plane_angle(p_.tangent(c));
    const double hi = lo + p_.angle(c);
    chain_.assign(1, Eigen::Isometry2d::Identity());
    code_.clear();
    explore(lo, hi, 0);
  }

  std::vector<GeneralizedDiagonal> take() { return std::move(out_); }

 private:
  // The current copy is chain_.back() applied to P; it was entered through
  // side code_.back(), or is P itself when code_ is empty.
  double tol() const { return 1e-10 * p_.diameter() * (static_cast<double>(code_.size()) + 2); }

  Point image(int corner) const { return chain_.back() * p_.corner(corner); }

  // Parameter along the ray at which it meets the line of side j of the copy.
  double line_param(int j, const Vector& d) const {
    const Point a = image(j);
    const Vector e = image(j + 1) - a;
    const double denom = cross(d, e);
    if (denom == 0.0) return kInf;
    return cross(a - origin_, e) / denom;
  }

  double entry_param(const Vector& d) const { return code_.empty() ? 0.0 : line_param(code_.back(), d); }

  bool excluded(int j) const {
    if (code_.empty()) return j == start_ || wrap_index(j + 1, p_.size()) == start_;
    return j == code_.back();
  }

  // First side of the current copy met beyond the entry point, ignoring the
  // sides incident to `skipCorner` (0 for none).
  Hit first_hit(const Vector& d, double from, int skipCorner) const {
    Hit best;
    const int k = p_.size();
    for (int j = 1; j <= k; ++j) {
      if (excluded(j)) continue;
      if (skipCorner != 0 && (j == skipCorner || wrap_index(j + 1, k) == skipCorner)) continue;
      const Point a = image(j);
      const Vector e = image(j + 1) - a;
      const double denom = cross(d, e);
      if (denom == 0.0) continue;
      const Vector w = a - origin_;
      const double lambda = cross(w, e) / denom;
      const double mu = cross(w, d) / denom;
      if (lambda <= from + tol() || mu < -1e-12 || mu > 1.0 + 1e-12) continue;
      if (lambda < best.lambda) best = {j, lambda};
    }
    return best;
  }

  void emit(int corner, double phi, double r) {
    GeneralizedDiagonal g;
    g.startCorner = start_;
    g.endCorner = corner;
    g.codeWord = code_;
    g.planeDirection = wrap_angle(phi);
    g.euclideanLength = r;
    g.combinatorialLength = static_cast<int>(code_.size()) + 1;
    const Vector u = unit(phi);
    for (const auto& t : chain_) g.segmentDirections.push_back(plane_angle(t.linear().transpose() * u));
    out_.push_back(std::move(g));
  }

  void explore(double lo, double hi, int depth) {
    const int k = p_.size();
    const double angTol = 1e-11;

    struct Event {
      double phi;
      int corner;
      bool visible;
      double r;
    };
    std::vector<Event> events;
    for (int i = 1; i <= k; ++i) {
      const Vector w = image(i) - origin_;
      const double r = w.norm();
      if (r <= tol()) continue;
      const double phi = lo + wrap_angle(std::atan2(w.y(), w.x()) - lo);
      if (!(phi > lo + angTol && phi < hi - angTol)) continue;
      const Vector d = w / r;
      const double from = entry_param(d);
      bool visible = r > from + tol() && !(code_.empty() && (i == start_));
      if (visible) visible = first_hit(d, from, i).lambda >= r - tol();
      events.push_back({phi, i, visible, r});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return std::tie(a.phi, a.corner) < std::tie(b.phi, b.corner);
    });
    for (const Event& e : events)
      if (e.visible) emit(e.corner, e.phi, e.r);
    if (depth + 1 >= L_) return;

    // Split the corridor at visible corners and wherever the first side hit
    // changes; each maximal piece continues into the next copy.
    std::vector<double> cuts{lo};
    for (const Event& e : events) cuts.push_back(e.phi);
    cuts.push_back(hi);
    double pieceLo = lo;
    int pieceSide = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i];
      const double b = cuts[i + 1];
      if (b - a > angTol) {
        const Vector d = unit(0.5 * (a + b));
        const int side = first_hit(d, entry_param(d), 0).side;
        if (pieceSide != 0 && side != pieceSide) {
          descend(pieceLo, a, pieceSide, depth);
          pieceLo = a;
        }
        if (pieceSide == 0) pieceLo = a;
        pieceSide = side;
      }
      if (i < events.size() && events[i].visible) {
        if (pieceSide != 0) descend(pieceLo, b, pieceSide, depth);
        pieceSide = 0;
        pieceLo = b;
      }
    }
    if (pieceSide != 0) descend(pieceLo, hi, pieceSide, depth);
  }

  void descend(double lo, double hi, int side, int depth) {
    chain_.push_back(chain_.back() * reflection_across(p_.side_start(side), p_.side_end(side)));
    code_.push_back(side);
    explore(lo, hi, depth + 1);
    code_.pop_back();
    chain_.pop_back();
  }

  const Polygon& p_;
  int L_;
  int start_ = 0;
  Point origin_ = Point::Zero();
  std::vector<Eigen::Isometry2d> chain_;
  std::vector<int> code_;
  std::vector<GeneralizedDiagonal> out_;
};

auto sort_key(const GeneralizedDiagonal& g) {
  return std::tie(g.startCorner, g.combinatorialLength, g.codeWord, g.endCorner);
}

}  // namespace

std::vector<GeneralizedDiagonal> enumerate_diagonals(const Polygon& p, int maxSegments) {
  if (maxSegments < 1) throw DomainError("maxSegments must be at least 1");
  Enumerator en(p, maxSegments);
  for (int c = 1; c <= p.size(); ++c) en.from_corner(c);
  auto out = en.take();
  std::sort(out.begin(), out.end(),
            [](const GeneralizedDiagonal& a, const GeneralizedDiagonal& b) { return sort_key(a) < sort_key(b); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GeneralizedDiagonal& a, const GeneralizedDiagonal& b) {
                          return sort_key(a) == sort_key(b);
                        }),
            out.end());
  return out;
}

ExceptionalVerdict is_exceptional(const Polygon& p, double theta, int maxSegments, double angleTol) {
  return is_exceptional(enumerate_diagonals(p, maxSegments), theta, maxSegments, angleTol);
}

ExceptionalVerdict is_exceptional(const std::vector<GeneralizedDiagonal>& diagonals, double theta,
                                  int maxSegments, double angleTol) {
  ExceptionalVerdict v;
  v.level = maxSegments;
  const double t = std::fmod(wrap_angle(theta), kPi);
  for (const GeneralizedDiagonal& g : diagonals) {
    if (g.combinatorialLength > maxSegments) continue;
    for (double phi : g.segmentDirections) {
      const double d = std::abs(std::fmod(phi, kPi) - t);
      if (std::min(d, kPi - d) <= angleTol) {
        v.exceptional = true;
        v.witness = g;
        return v;
      }
    }
  }
  return v;
}

std::string format_code_word(const std::vector<int>& word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "-" : "") << word[i];
  return os.str();
}

}  // namespace billiards
