#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtrans/disjoint.hpp"
#include "gtrans/free.hpp"
#include "gtrans/hardness.hpp"
#include "gtrans/oracle.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("subset order") {
  const auto s = ordered_subsets(3);
  REQUIRE(s.size() == 7);
  std::vector<IndexSet> sets;
  for (unsigned m : s) sets.push_back(mask_to_set(m));
  CHECK(sets == std::vector<IndexSet>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
}

TEST_CASE("set partitions are Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t n = 0; n <= 6; ++n) {
    std::size_t count = 0;
    std::set<std::vector<std::size_t>> seen;
    for_each_set_partition(n, [&](const std::vector<std::size_t>& b) {
      ++count;
      seen.insert(b);
    });
    CHECK(count == bell[n]);
    CHECK(seen.size() == bell[n]);
  }
}

TEST_CASE("MLFT oracle examples") {
  CHECK(length(oracle_mlft(points({{3, 4}}), 7)) == doctest::Approx(5.0));
  CHECK(length(oracle_mlft(points({{1, 1}, {2, 2}}), 7)) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-7));
  CHECK(length(oracle_mlft(points({{0, 0}}), 7)) == 0.0);
  const auto report = oracle_mlft_report(points({{1, 0}, {0, 1}}), 7);
  CHECK(report.length == doctest::Approx(std::sqrt(2 + std::sqrt(3.0))).epsilon(1e-7));
  CHECK(report.lower_bound <= report.length + 1e-12);
  CHECK(report.lower_bound >= report.length * (1 - 1e-6));
  CHECK(report.families_tried == 1);
}

TEST_CASE("MLFT oracle agrees with the 1D span") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto delta = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 4)), 1, -10, 10);
    CHECK(length(oracle_mlft(delta, 7)) == doctest::Approx(to_double(span_of(delta))).epsilon(1e-6));
  }
}

TEST_CASE("MLFT oracle respects simple bounds") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    const auto delta = random_instance(rng, 3, 2, -6, 6);
    const auto report = oracle_mlft_report(delta, 7);
    CHECK(check_validity(delta, report.transformation));
    double longest = 0;
    for (const auto& v : delta.deltas()) longest = std::max(longest, euclidean_norm(v));
    CHECK(report.length >= longest - 1e-7);
    CHECK(report.length <= length(solve_disjoint(delta)) + 1e-7);
    CHECK(report.length <= length(solve_euclidean_mlft_approx(delta)) + 1e-7);
  }
}

TEST_CASE("MLFT oracle with fewer groups is never shorter") {
  const auto delta = points({{1, 0}, {0, 1}, {1, 1}});
  const double two = oracle_mlft_report(delta, 2).length;
  const double seven = oracle_mlft_report(delta, 7).length;
  CHECK(two >= seven - 1e-9);
}

TEST_CASE("MCFT oracle examples") {
  CHECK(oracle_mcft(points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), false) == 3);
  CHECK(oracle_mcft(points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), true) == 3);
  CHECK(oracle_mcft(line({1, 2, 3}), false) == 2);
  CHECK(oracle_mcft(line({0, 0}), false) == 0);
  CHECK(oracle_mcft(line({5, 5, 5}), false) == 1);
  CHECK(oracle_mcft(points({{1, 0}, {0, 1}, {1, 1}}), false) == 2);
  CHECK_THROWS_AS(oracle_mcft(line({-1}), true), ConstraintError);
  const auto r = oracle_mcft_report(line({1, 2, 3}), false);
  CHECK(check_validity(line({1, 2, 3}), r.transformation));
  CHECK(r.transformation.size() == 2);
}

TEST_CASE("monotone MCFT oracle on gadgets") {
  const Graph k2{2, {{0, 1}}};
  const auto r = oracle_mcft_report(encode_vertex_cover(k2), true);
  CHECK(r.cardinality == 7);
  CHECK(is_monotone(r.transformation));
  CHECK(check_validity(encode_vertex_cover(k2), r.transformation));
}

TEST_CASE("MCFT oracle never exceeds the distinct count") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 15; ++trial) {
    const auto delta = pooled_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 4)), 2, 3, 2);
    const auto r = oracle_mcft_report(delta, false);
    CHECK(r.cardinality <= count_distinct_nonzero(delta));
    CHECK(check_validity(delta, r.transformation));
    CHECK(r.transformation.size() == r.cardinality);
  }
}

TEST_CASE("laminar oracle") {
  CHECK(oracle_laminar_mcht(points({{2, 1}, {2, 1}, {2, 1}})) == 1);
  CHECK(oracle_laminar_mcht(points({{1, 0}, {0, 1}, {2, 2}, {3, 1}})) == 4);
  CHECK(oracle_laminar_mcht(line({0, 0, 0})) == 0);
  CHECK(oracle_laminar_mcht(line({1, 2, 3, 1, 2})) == 3);
}

TEST_CASE("disjoint oracle") {
  const auto r = oracle_disjoint(line({1, 1, 2}), NormKind::manhattan);
  CHECK(r.min_cardinality == 2);
  CHECK(r.min_length == doctest::Approx(3.0));
  CHECK(r.valid_partitions >= 1);
}

TEST_CASE("1D grid oracle") {
  const auto delta = line({1, 2, 3});
  const GroupFamily fam(3, {{0, 1, 2}, {1, 2}, {2}}, FamilyKind::given);
  const auto t = oracle_mlgt_1d_grid(delta, fam);
  REQUIRE(t);
  CHECK(check_validity(delta, *t));
  CHECK(length(*t) == doctest::Approx(3.0));
  CHECK_FALSE(oracle_mlgt_1d_grid(line({1, 2}), GroupFamily(2, {{0, 1}}, FamilyKind::given)));
}

TEST_CASE("size caps") {
  std::mt19937_64 rng(74);
  CHECK_THROWS_AS(oracle_mlft(random_instance(rng, 5, 2, -3, 3), 7), SizeCapError);
  CHECK_THROWS_AS(oracle_mcft(random_instance(rng, 5, 2, -3, 3), false), SizeCapError);
  CHECK_THROWS_AS(oracle_laminar_mcht(random_instance(rng, 6, 2, -3, 3)), SizeCapError);
  CHECK_THROWS_AS(oracle_disjoint(random_instance(rng, 9, 1, -3, 3), NormKind::manhattan), SizeCapError);
}

TEST_CASE("budget overrun raises a timeout") {
  const auto delta = points({{1, 0}, {0, 1}, {2, 2}, {3, 1}, {5, 7}});
  CHECK_THROWS_AS(oracle_laminar_mcht_report(delta, OracleBudget{1e-9}), OracleTimeout);
}
