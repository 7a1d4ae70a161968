#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "gtrans/free.hpp"
#include "gtrans/hierarchical.hpp"
#include "gtrans/oracle.hpp"
#include "support.hpp"

using namespace testing;

namespace {

double euclid(const Transformation& t) { return length(t, NormKind::euclidean); }
double manhattan(const Transformation& t) { return length(t, NormKind::manhattan); }

double manhattan_span_sum(const DisplacementSet& delta) {
  double total = 0;
  for (std::size_t k = 0; k < delta.dimension(); ++k) {
    Scalar lo = 0, hi = 0;
    for (const auto& v : delta.deltas()) {
      lo = std::min(lo, v[k]);
      hi = std::max(hi, v[k]);
    }
    total += to_double(hi - lo);
  }
  return total;
}

}  // namespace

TEST_CASE("1D free examples") {
  CHECK(manhattan(solve_mlft_1d(line({3, -2, 5}))) == doctest::Approx(7.0));
  CHECK(manhattan(solve_mlft_1d(line({4, 4, 4}))) == doctest::Approx(4.0));
  const auto delta = line({1, 2, 3});
  const Transformation t = solve_mlft_1d(delta);
  CHECK(check_validity(delta, t));
  CHECK(manhattan(t) == doctest::Approx(3.0));
  CHECK(t.family().kind() == FamilyKind::free);
}

TEST_CASE("Manhattan examples") {
  const auto delta = points({{1, 1}, {2, 2}});
  const Transformation t = solve_manhattan_mlft_2d(delta);
  CHECK(check_validity(delta, t));
  CHECK(manhattan(t) == doctest::Approx(4.0));
  for (std::size_t g = 0; g < t.size(); ++g) {
    const Vector& v = t.translation(g);
    CHECK((v[0] == 0 || v[1] == 0));
  }
  const auto square = points({{1, 0}, {0, 1}, {1, 1}});
  CHECK(manhattan(solve_manhattan_mlft_2d(square)) == doctest::Approx(2.0));
}

TEST_CASE("Manhattan length equals the sum of per-axis spans") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 20)), d, -15, 15);
    const Transformation t = solve_manhattan_mlft(delta);
    CHECK(check_validity(delta, t));
    CHECK(manhattan(t) == doctest::Approx(manhattan_span_sum(delta)));
    if (d == 2) CHECK(manhattan(solve_manhattan_mlft_2d(delta)) == doctest::Approx(manhattan(t)));
  }
}

TEST_CASE("Manhattan result matches the oracle on tiny inputs") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 2, -5, 5);
    const auto report = oracle_mlft_report(delta, 7, 1e-9, NormKind::manhattan);
    CHECK(manhattan(solve_manhattan_mlft_2d(delta)) == doctest::Approx(report.length).epsilon(1e-6));
  }
}

TEST_CASE("rotations are exact") {
  for (double beta : {0.0, 0.1, std::numbers::pi / 8, std::numbers::pi / 4, 1.0, std::numbers::pi / 2, 2.5,
                      std::numbers::pi, -0.7}) {
    const Rotation r = Rotation::from_angle(beta);
    CHECK(r.c * r.c + r.s * r.s == 1);
    CHECK(to_double(r.c) == doctest::Approx(std::cos(beta)).epsilon(1e-12));
    CHECK(to_double(r.s) == doctest::Approx(std::sin(beta)).epsilon(1e-12));
    const Vector v{frac(3, 7), -2};
    CHECK(r.backward(r.forward(v)) == v);
  }
  const Rotation quarter = Rotation::from_angle(std::numbers::pi / 2);
  CHECK(quarter.c == 0);
  CHECK(quarter.s == 1);
  CHECK(quarter.forward(vec({1, 0})) == vec({0, -1}));
}

TEST_CASE("beta-Manhattan examples") {
  const auto diag = points({{1, 1}});
  const Transformation t = solve_beta_manhattan_mlft(diag, std::numbers::pi / 4);
  CHECK(check_validity(diag, t));
  CHECK(euclid(t) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(euclid(solve_beta_manhattan_mlft(diag, 0)) == doctest::Approx(2.0));

  const auto two = points({{1, 1}, {2, 2}});
  CHECK(euclid(solve_beta_manhattan_mlft(two, 0)) == doctest::Approx(4.0));
  CHECK(euclid(solve_euclidean_mlft_approx(two)) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("quarter turn leaves the cost unchanged") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 10)), 2, -10, 10);
    const Transformation a = solve_beta_manhattan_mlft(delta, 0);
    const Transformation b = solve_beta_manhattan_mlft(delta, std::numbers::pi / 2);
    CHECK(check_validity(delta, b));
    CHECK(euclid(a) == doctest::Approx(euclid(b)));
  }
}

TEST_CASE("beta-Manhattan output is valid and axis-aligned in the rotated frame") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 40; ++trial) {
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 8)), 2, -10, 10);
    const double beta = static_cast<double>(uniform(rng, 0, 1000)) / 1000 * std::numbers::pi;
    const Transformation t = solve_beta_manhattan_mlft(delta, beta);
    CHECK(check_validity(delta, t));
    const Rotation r = Rotation::from_angle(beta);
    double rotated = 0;
    for (std::size_t g = 0; g < t.size(); ++g) {
      const Vector v = r.forward(t.translation(g));
      CHECK((v[0] == 0 || v[1] == 0));
      rotated += std::abs(to_double(v[0])) + std::abs(to_double(v[1]));
    }
    CHECK(euclid(t) == doctest::Approx(rotated).epsilon(1e-12));
  }
}

TEST_CASE("approximation ratio on small inputs") {
  const double bound = approximation_constant();
  CHECK(bound == doctest::Approx(std::sin(std::numbers::pi / 8) + std::cos(std::numbers::pi / 8)));
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 2, -8, 8);
    const Transformation approx = solve_euclidean_mlft_approx(delta);
    CHECK(check_validity(delta, approx));
    const auto report = oracle_mlft_report(delta, 7);
    if (report.lower_bound > 0) CHECK(euclid(approx) <= bound * report.lower_bound * (1 + 1e-6));
  }
}

TEST_CASE("arc instance geometry") {
  const auto delta = build_arc_instance(4);
  REQUIRE(delta.size() == 8);
  CHECK(delta[0] == vec({0, 0}));
  CHECK(delta[3] == vec({1, 1}));
  CHECK(delta[4] == vec({1, 1}));
  CHECK(delta[7] == vec({0, 0}));
  const auto big = build_arc_instance(64);
  for (std::size_t j = 0; j < 64; ++j) {
    const Vector& b = big[j];
    const double dx = to_double(b[0]);
    const double dy = to_double(b[1]) - 1;
    CHECK(std::hypot(dx, dy) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(big[j] + big[64 + j] == vec({1, 1}));
  }
  CHECK_THROWS_AS(build_arc_instance(1), ConstraintError);
}

TEST_CASE("arc chain solution") {
  const auto delta = build_arc_instance(256);
  const Transformation chain = build_arc_chain_solution(delta);
  CHECK(check_validity(delta, chain));
  CHECK(euclid(chain) == doctest::Approx(std::numbers::pi / 2).epsilon(0.01));
  CHECK(euclid(chain) < std::numbers::pi / 2 + 0.01);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 8; ++k) {
    worst = std::min(worst, euclid(solve_beta_manhattan_mlft(delta, k * std::numbers::pi / 16)));
  }
  CHECK(worst >= 1.95);
  CHECK_THROWS_AS(build_arc_chain_solution(points({{1, 0}, {0, 1}})), ConstraintError);
  CHECK_THROWS_AS(build_arc_chain_solution(points({{1, 0}, {0, 0}})), ConstraintError);
}

TEST_CASE("hierarchy optimum is never below the free optimum") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 5; ++trial) {
    const auto delta = random_instance(rng, 3, 2, -6, 6);
    CHECK(euclid(solve_mlht_2d_exact_tiny(delta)) >= oracle_mlft_report(delta, 7).lower_bound - 1e-7);
  }
}
