#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtrans/disjoint.hpp"
#include "gtrans/oracle.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("disjoint examples") {
  const auto delta = points({{1, 0}, {1, 0}, {2, 3}});
  const Transformation t = solve_disjoint(delta);
  CHECK(t.size() == 2);
  CHECK(check_validity(delta, t));
  CHECK(t.family().group(0) == IndexSet{0, 1});
  CHECK(t.translation(0) == vec({1, 0}));
  CHECK(t.family().kind() == FamilyKind::disjoint);

  const Transformation still = solve_disjoint(points({{0, 0}}));
  CHECK(still.size() == 0);
  CHECK(length(still) == 0.0);

  const auto distinct = points({{1, 0}, {0, 2}, {3, 4}});
  const Transformation d = solve_disjoint(distinct);
  CHECK(d.size() == 3);
  CHECK(length(d) == doctest::Approx(1 + 2 + 5));
}

TEST_CASE("groups come out in lexicographic vector order") {
  const auto delta = points({{2, 0}, {1, 5}, {1, -1}, {2, 0}});
  const Transformation t = solve_disjoint(delta);
  REQUIRE(t.size() == 3);
  CHECK(t.translation(0) == vec({1, -1}));
  CHECK(t.translation(1) == vec({1, 5}));
  CHECK(t.translation(2) == vec({2, 0}));
}

TEST_CASE("disjoint output covers exactly the moving points") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto delta = pooled_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 12)), 2, 4, 1);
    const Transformation t = solve_disjoint(delta);
    CHECK(check_validity(delta, t));
    CHECK(validate_family_kind(t.family()));
    std::vector<int> hits(delta.size(), 0);
    for (const auto& g : t.family().groups()) {
      for (std::size_t i : g) ++hits[i];
    }
    for (std::size_t i = 0; i < delta.size(); ++i) CHECK(hits[i] == (delta[i].is_zero() ? 0 : 1));
    CHECK(t.size() == count_distinct_nonzero(delta));
  }
}

TEST_CASE("no disjoint partition beats the grouping by equal vectors") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto delta = pooled_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 6)), 2, 3, 2);
    const Transformation t = solve_disjoint(delta);
    const auto best = oracle_disjoint(delta, NormKind::manhattan);
    CHECK(best.min_cardinality == t.size());
    CHECK(best.min_length == doctest::Approx(length(t, NormKind::manhattan)));
  }
}
