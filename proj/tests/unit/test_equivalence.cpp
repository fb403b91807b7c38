#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "billiards/equivalence.hpp"
#include "oracles.hpp"

using namespace billiards;

namespace {
constexpr double kPi = std::numbers::pi;
const double kGoldenTheta = std::atan((std::sqrt(5.0) - 1.0) / 2.0);

Polygon mapped(const Polygon& p, const Eigen::Affine2d& map, int shift = 0) {
  std::vector<Point> vs;
  for (int i = 1; i <= p.size(); ++i) vs.push_back(map * p.corner(i + shift));
  return validate_polygon(vs);
}

Eigen::Affine2d scaling(double a, double b) {
  Eigen::Affine2d m = Eigen::Affine2d::Identity();
  m.linear() = Eigen::Vector2d(a, b).asDiagonal();
  return m;
}

LeaderPair square_and_rectangle(const PhasePoint& u) {
  const Polygon sq = testing::unit_square();
  const Polygon r = testing::rectangle(2.0, 3.0);
  return {sq, r, u, transport(r, scaling(2.0, 3.0), sq, u), 0};
}
}  // namespace

TEST_CASE("a leader paired with itself agrees everywhere") {
  const Polygon t = testing::rational_triangle(3, 2, 1);
  const PhasePoint u{{1, 0.37}, 0.21};
  const LeaderPair lp{t, t, u, u, 0};
  CHECK_FALSE(codes_agree(lp, 10000).has_value());
  CHECK(order_agree(lp, 2000).same);
  const Orbit o = iterate(t, u, 1);
  const GSample g = g_function(lp, o.points[1].base.side, o.planeDirections[1], 5000);
  CHECK(g.maxSpread < 1e-12);
  for (const auto& [x, y, beta] : g.pairs) CHECK(x == y);
}

TEST_CASE("the square and the 2x3 rectangle share codes under the affine map") {
  const LeaderPair lp = square_and_rectangle({{1, 0.3}, kGoldenTheta});
  CHECK(lp.v.base.side == 1);
  CHECK(lp.v.base.position == doctest::Approx(0.6));
  CHECK(std::tan(lp.v.theta) == doctest::Approx(2.0 / 3.0 * std::tan(kGoldenTheta)));
  CHECK_FALSE(codes_agree(lp, 100000).has_value());
  CHECK(order_agree(lp, 5000).same);
  const GSample g = g_function(lp, 1, plane_angle(direction_of(lp.P, lp.u)), 20000);
  CHECK(g.indices.size() > 100);
  CHECK(g.maxSpread < 1e-9);
  for (const auto& [x, y, beta] : g.pairs) CHECK(std::abs(y - 2 * x) < 1e-9);
}

TEST_CASE("mismatched leaders separate and break the order") {
  const Polygon sq = testing::unit_square();
  const LeaderPair lp{sq, sq, {{1, 0.3}, kGoldenTheta}, {{1, 0.3}, kGoldenTheta + 1e-3}, 0};
  const auto l = codes_agree(lp, 100000);
  REQUIRE(l.has_value());
  CHECK(*l > 1);
  CHECK_FALSE(order_agree(lp, 5000).same);

  const LeaderPair bad{sq, testing::equilateral_triangle(), lp.u, lp.u, 0};
  CHECK_THROWS_AS(codes_agree(bad, 10), DomainError);
  CHECK_THROWS_AS(order_agree(bad, 10), DomainError);
}

TEST_CASE("a non-affine partner shows a nonzero spread before the codes split") {
  const Polygon sq = testing::unit_square();
  const Polygon q = validate_polygon({{0, 0}, {1, 0}, {1.0, 1.0}, {0.0, 1.0003}});
  const PhasePoint u{{1, 0.3}, kGoldenTheta};
  const LeaderPair lp{sq, q, u, u, 0};
  const auto l = codes_agree(lp, 100000);
  REQUIRE(l.has_value());
  const GSample g = g_function(lp, 1, plane_angle(direction_of(sq, u)), *l - 1);
  CHECK(g.maxSpread > 1e-6);
}

TEST_CASE("g_function guards") {
  const Polygon sq = testing::unit_square();
  const LeaderPair lp = square_and_rectangle({{1, 0.3}, kGoldenTheta});
  CHECK_THROWS_AS(g_function(lp, 1, 1.0, 1000), DomainError);
}

TEST_CASE("boundary density") {
  const Polygon sq = testing::unit_square();
  const DensityReport golden = boundary_density(sq, {{1, 0.3}, kGoldenTheta}, 10000);
  CHECK(golden.points == 10000);
  CHECK(golden.maxGapFraction < 0.01);
  CHECK(golden.maxGap == doctest::Approx(4 * golden.maxGapFraction));

  const DensityReport diamond = boundary_density(sq, {{1, 0.5}, kPi / 4}, 1000);
  CHECK(diamond.maxGapFraction == doctest::Approx(0.25));
  const DensityReport one = boundary_density(sq, {{1, 0.5}, kPi / 4}, 1);
  CHECK(one.points == 1);
  CHECK(one.maxGapFraction == doctest::Approx(1.0));
  CHECK_THROWS_AS(boundary_density(sq, {{1, 0.5}, 0.1}, 0), DomainError);
}

TEST_CASE("index sets of the diamond") {
  const Polygon sq = testing::unit_square();
  const PhasePoint u{{1, 0.5}, kPi / 4};
  const auto first = index_set(sq, u, 1, kPi / 4, 20);
  CHECK(first == std::vector<std::size_t>{0, 4, 8, 12, 16, 20});
  CHECK(index_set(sq, u, 2, 3 * kPi / 4, 10) == std::vector<std::size_t>{1, 5, 9});
  CHECK(index_set(sq, u, 1, -kPi / 4, 20).empty());
}

TEST_CASE("pointing counts match the cone-point prediction") {
  const Polygon sq = testing::unit_square();
  const PhasePoint golden{{1, 0.3}, kGoldenTheta};
  for (int c = 1; c <= 4; ++c) {
    const PointingReport r = pointing_count(sq, golden, c, 100000, 0.01);
    CHECK(r.conclusive);
    CHECK(r.count == 1);
  }

  // Reflex corner of angle 3pi/2: cone angle 2pi*3.
  const PointingReport reflex = pointing_count(testing::l_shape(), golden, 4, 100000, 0.01);
  CHECK(reflex.conclusive);
  CHECK(reflex.count == 3);

  // Triangle (pi/2, pi/8, 3pi/8), N = 8: corner i carries m_i N / n_i families.
  const Polygon t = testing::rational_triangle(4, 1, 3);
  const std::vector<std::size_t> expected{4, 1, 3};
  for (int c = 1; c <= 3; ++c) {
    const PointingReport r = pointing_count(t, {{1, 0.3}, 0.3}, c, 100000, 0.01);
    CHECK(r.conclusive);
    CHECK(r.count == expected[c - 1]);
  }
}

TEST_CASE("pointing count preconditions") {
  const Polygon sq = testing::unit_square();
  CHECK_THROWS_AS(pointing_count(sq, {{1, 0.5}, kPi / 4}, 1, 1000, 0.01), DomainError);
  CHECK_THROWS_AS(pointing_count(sq, {{1, 0.3}, kGoldenTheta}, 1, 1000, 0.0), DomainError);
  const Polygon irr = validate_polygon({{0, 0}, {1, 0}, {std::cos(1.0), std::sin(1.0)}});
  CHECK_THROWS_AS(pointing_count(irr, {{1, 0.3}, 0.2}, 1, 1000, 0.01), DomainError);
}

TEST_CASE("similarity verdicts") {
  const Polygon sq = testing::unit_square();
  const SimilarityVerdict twice = similarity_verdict(sq, testing::rectangle(2.0, 2.0));
  CHECK(twice.kind == SimilarityVerdict::Kind::Similar);
  CHECK(twice.a == doctest::Approx(2.0));

  const SimilarityVerdict affine = similarity_verdict(sq, testing::rectangle(2.0, 3.0));
  CHECK(affine.kind == SimilarityVerdict::Kind::AffinelySimilar);
  CHECK(affine.a == doctest::Approx(2.0));
  CHECK(affine.b == doctest::Approx(3.0));

  const SimilarityVerdict tri =
      similarity_verdict(testing::rational_triangle(3, 2, 1), testing::rational_triangle(4, 1, 3));
  CHECK(tri.kind == SimilarityVerdict::Kind::Distinct);
  CHECK(tri.witness >= 1);

  // Parallelograms with angles pi/3, 2pi/3 and different side ratios.
  const Vector e(0.5, std::sqrt(3.0) / 2);
  const Polygon p1 = validate_polygon({{0, 0}, {1, 0}, Point(1, 0) + e, e});
  const Polygon p2 = validate_polygon({{0, 0}, {2, 0}, Point(2, 0) + e, e});
  const SimilarityVerdict same = similarity_verdict(p1, p2);
  CHECK(same.kind == SimilarityVerdict::Kind::SameAngles);
  CHECK(std::string(to_string(same.kind)) == "sameAngles");

  CHECK_THROWS_AS(similarity_verdict(sq, testing::equilateral_triangle()), DomainError);
}

TEST_CASE("relabelled and moved copies are found with their rotation") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon p = testing::random_star_polygon(rng, 3 + trial % 6);
    Eigen::Affine2d m = Eigen::Affine2d::Identity();
    const double s = 0.2 + 3 * unit(rng);
    m.linear() = s * Eigen::Rotation2Dd(2 * kPi * unit(rng)).toRotationMatrix();
    m.translation() = Eigen::Vector2d(unit(rng), unit(rng));
    const int shift = trial % p.size();
    const Polygon q = mapped(p, m, shift);
    const SimilarityVerdict v = similarity_verdict(p, q);
    CHECK(v.kind == SimilarityVerdict::Kind::Similar);
    CHECK(v.a == doctest::Approx(s));
    CHECK((v.rotation + shift) % p.size() == 0);
  }
}

TEST_CASE("similar and affinely similar pairs keep codes and order") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const bool affine = trial % 2;
    const Polygon p = affine ? testing::rectangle(0.5 + unit(rng), 0.5 + unit(rng))
                             : testing::random_convex_polygon(rng, 3 + trial % 5);
    Eigen::Affine2d m = affine ? scaling(0.5 + 2 * unit(rng), 0.5 + 2 * unit(rng)) : Eigen::Affine2d::Identity();
    if (!affine) m.linear() = (0.5 + 2 * unit(rng)) * Eigen::Rotation2Dd(2 * kPi * unit(rng)).toRotationMatrix();
    const Polygon q = mapped(p, m);
    const SimilarityVerdict v = similarity_verdict(p, q);
    CHECK(v.kind == (affine ? SimilarityVerdict::Kind::AffinelySimilar : SimilarityVerdict::Kind::Similar));
    const PhasePoint u = testing::random_start(p, rng);
    const LeaderPair lp{p, q, u, transport(q, m, p, u), 0};
    // Codes agree until the first corner encounter, if any.
    const auto l = codes_agree(lp, 2000);
    if (l) CHECK(code_of(p, u, 2000).size() <= *l + 1);
    CHECK(order_agree(lp, 1000).same);
  }
}
