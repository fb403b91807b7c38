#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "billiards/coding.hpp"
#include "oracles.hpp"

using namespace billiards;

namespace {
constexpr double kPi = std::numbers::pi;
const double kGoldenTheta = std::atan((std::sqrt(5.0) - 1.0) / 2.0);

Code code(std::vector<int> s) { return Code{std::move(s), true}; }

// Bounding box of the cell, tau clipped to +-cap.
std::array<double, 4> box(const PrefixCell& c, double cap) {
  std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
  for (const auto& v : c.vertices) {
    b[0] = std::min(b[0], v.x());
    b[1] = std::max(b[1], v.x());
    b[2] = std::min(b[2], std::max(-cap, v.y()));
    b[3] = std::max(b[3], std::min(cap, v.y()));
  }
  return b;
}
}  // namespace

TEST_CASE("code_of on the reference orbits") {
  const Polygon sq = testing::unit_square();
  CHECK(code_of(sq, {{1, 0.5}, 0.0}, 6).symbols == std::vector<int>{1, 3, 1, 3, 1, 3});
  // Symbols are sigma_0, sigma_1, ...; the diamond's first four sides after
  // the start are 2, 3, 4, 1.
  const Code diamond = code_of(sq, {{1, 0.5}, kPi / 4}, 5);
  CHECK(diamond.symbols == std::vector<int>{1, 2, 3, 4, 1});
  CHECK(diamond.complete);

  const Code corner = code_of(sq, {{1, 0.5}, std::atan(0.5)}, 10);
  CHECK(corner.size() == 1);
  CHECK_FALSE(corner.complete);
}

TEST_CASE("the depth-1 cell is the whole side") {
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.3}, 0.2};
  const PrefixCell c = prefix_cell(sq, u, 1);
  CHECK(c.tau_unbounded());
  CHECK(c.contains(0.01, -1e6));
  CHECK(c.contains(0.99, 1e6));
  const EpsilonReport e = epsilon(sq, u, 1);
  CHECK(e.eps1 == doctest::Approx(0.7));
}

TEST_CASE("the diamond's depth-5 cell is bounded and shrinks with depth") {
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.5}, kPi / 4};
  const PrefixCell c5 = prefix_cell(sq, u, 5);
  CHECK_FALSE(c5.degenerate);
  CHECK_FALSE(c5.tau_unbounded());
  CHECK(c5.contains(0.5, 1.0));
  const auto b5 = box(c5, 1e9);
  const auto b9 = box(prefix_cell(sq, u, 9), 1e9);
  CHECK(b9[1] - b9[0] <= b5[1] - b5[0]);
  CHECK(b9[3] - b9[2] < b5[3] - b5[2]);
}

TEST_CASE("normal bouncing keeps the full position range while the angle range closes") {
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.5}, 0.0};
  const auto profile = epsilon_profile(sq, u, {2, 10, 100, 1000});
  for (const auto& r : profile) CHECK(r.eps1 == doctest::Approx(0.5));
  CHECK(profile[3].eps2 < profile[1].eps2 / 10);
  CHECK(profile[3].eps2 < 0.01);
}

TEST_CASE("golden-slope epsilon is small and decreasing") {
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.3}, kGoldenTheta};
  const auto profile = epsilon_profile(sq, u, {10, 20, 50, 100});
  for (std::size_t i = 1; i < profile.size(); ++i) CHECK(profile[i].eps <= profile[i - 1].eps);
  CHECK(profile.back().eps < 0.05);
  CHECK(epsilon(sq, u, 100).eps == profile.back().eps);
}

TEST_CASE("every sampled member of a convex prefix cell shares the prefix") {
  std::mt19937_64 rng(41);
  const Polygon sq = testing::unit_square();
  const Polygon tri = testing::rational_triangle(3, 2, 1);
  for (const Polygon* p : {&sq, &tri}) {
    const PhasePoint u{{1, 0.3 * p->side_length(1)}, 0.4};
    const std::size_t m = 30;
    const PrefixCell cell = prefix_cell(*p, u, m);
    const Code ref = code_of(*p, u, m);
    const auto b = box(cell, 50.0);
    std::uniform_real_distribution<double> s(b[0], b[1]), tau(b[2], b[3]);
    int tried = 0, violations = 0;
    while (tried < 10000) {
      const double si = s(rng), ti = tau(rng);
      if (!cell.contains(si, ti)) continue;
      ++tried;
      const Code c = code_of(*p, {{1, si}, std::atan(ti)}, m);
      if (c.symbols != ref.symbols) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("separation index") {
  CHECK_FALSE(separation_index(code({1, 3, 1, 3}), code({1, 3, 1, 3})).has_value());
  CHECK(separation_index(code({1, 3, 1, 3}), code({1, 3, 2, 4})) == 2u);
  CHECK_THROWS_AS(separation_index(code({1}), code({2})), DomainError);

  // Starts drawn from one depth-m cell separate at index m or later.
  std::mt19937_64 rng(43);
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.3}, kGoldenTheta};
  const std::size_t m = 25;
  const PrefixCell cell = prefix_cell(sq, u, m);
  const auto b = box(cell, 50.0);
  std::uniform_real_distribution<double> s(b[0], b[1]), tau(b[2], b[3]);
  for (int found = 0; found < 200;) {
    const double si = s(rng), ti = tau(rng);
    if (!cell.contains(si, ti)) continue;
    ++found;
    const auto l = separation_index(code_of(sq, u, 200), code_of(sq, {{1, si}, std::atan(ti)}, 200));
    if (l) CHECK(*l >= m);
  }
}

TEST_CASE("intersection before separation") {
  const Polygon sq = testing::unit_square();
  const Orbit a = iterate(sq, {{1, 0.2}, 0.3}, 20);
  const Orbit b = iterate(sq, {{1, 0.6}, 0.3}, 20);
  const IntersectionReport parallel = intersect_before_separation(sq, a, b);
  CHECK_FALSE(parallel.intersects);

  const Orbit c = iterate(sq, {{1, 0.2}, kPi / 6}, 20);
  const Orbit d = iterate(sq, {{1, 0.8}, -kPi / 6}, 20);
  const IntersectionReport cross = intersect_before_separation(sq, c, d);
  CHECK(cross.intersects);
  CHECK(cross.k0 == 0u);
  REQUIRE(cross.separation.has_value());
  CHECK(*cross.separation == 2u);

  const IntersectionReport self = intersect_before_separation(sq, a, a);
  CHECK_FALSE(self.separationObserved);
  CHECK_FALSE(self.intersects);
}

TEST_CASE("recurrence of the initial word") {
  std::vector<int> periodic;
  for (int i = 0; i < 20; ++i) periodic.push_back(i % 2 ? 3 : 1);
  const RecurrenceStats r = recurrence_gaps(code(periodic), 2);
  REQUIRE(r.maxGap.has_value());
  CHECK(*r.maxGap == 2u);
  for (std::size_t n : r.returns) CHECK(n % 2 == 0);

  const Polygon sq = testing::unit_square();
  const RecurrenceStats g = recurrence_gaps(code_of(sq, {{1, 0.3}, kGoldenTheta}, 100000), 5);
  CHECK_FALSE(g.returns.empty());
  REQUIRE(g.maxGap.has_value());
  CHECK(*g.maxGap < 1000u);

  const RecurrenceStats none = recurrence_gaps(code({1, 2, 3, 4, 5, 6}), 2);
  CHECK(none.returns.empty());
  CHECK_FALSE(none.maxGap.has_value());
}

TEST_CASE("combinatorial order examples") {
  const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> xs, ys;
  for (int n = 0; n < 100; ++n) {
    xs.push_back(std::fmod(n * alpha, 1.0));
    ys.push_back(std::fmod(n * alpha + 0.377, 1.0));
  }
  CHECK(same_combinatorial_order(xs, xs).same);
  CHECK(same_combinatorial_order(xs, ys).same);
  CHECK(same_combinatorial_order_naive(xs, ys).same);

  std::vector<double> swapped = ys;
  std::swap(swapped[10], swapped[57]);
  const OrderComparison fast = same_combinatorial_order(xs, swapped);
  const OrderComparison slow = same_combinatorial_order_naive(xs, swapped);
  CHECK_FALSE(fast.same);
  CHECK_FALSE(slow.same);
  REQUIRE(fast.witness.has_value());
  const auto [k, l, m] = *fast.witness;
  CHECK(in_closed_arc(xs[k], xs[l], xs[m]) != in_closed_arc(swapped[k], swapped[l], swapped[m]));

  std::vector<double> dup = xs;
  dup[3] = dup[4];
  CHECK_THROWS_AS(same_combinatorial_order(dup, ys), DomainError);
}

TEST_CASE("optimized order comparison agrees with the triple loop") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    std::vector<double> xs(n), ys(n);
    for (double& x : xs) x = unit(rng);
    // Half the instances are monotone images of xs; some get a swap.
    const double shift = unit(rng);
    for (int i = 0; i < n; ++i)
      ys[i] = trial % 2 ? unit(rng) : std::fmod(std::pow(xs[i], 1.7) + shift, 1.0);
    if (trial % 4 == 2 && n > 1) std::swap(ys[0], ys[n - 1]);
    const OrderComparison fast = same_combinatorial_order(xs, ys);
    CHECK(fast.same == same_combinatorial_order_naive(xs, ys).same);
    if (fast.witness) {
      const auto [k, l, m] = *fast.witness;
      CHECK(in_closed_arc(xs[k], xs[l], xs[m]) != in_closed_arc(ys[k], ys[l], ys[m]));
    }
  }
}
