#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "gtrans/disjoint.hpp"
#include "gtrans/free.hpp"
#include "gtrans/hierarchical.hpp"
#include "gtrans/oracle.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Scalar exact_cost(const Transformation& t) { return *evaluate_cost(t, NormKind::manhattan).exact_length; }

// Random valid hierarchical transformation in the plane: laminar groups with
// random nonzero translations, delta defined by the sums.
std::pair<DisplacementSet, Transformation> random_hierarchical(std::mt19937_64& rng, std::size_t n) {
  const auto groups = random_laminar(rng, n, uniform(rng, 0, 1) == 1, uniform(rng, 0, 1) == 1);
  std::vector<Vector> tau;
  std::vector<Vector> deltas(n, Vector::zero(2));
  for (const auto& g : groups) {
    Vector t{frac(uniform(rng, -40, 40), uniform(rng, 1, 4)), frac(uniform(rng, -40, 40), uniform(rng, 1, 4))};
    if (t.is_zero()) t[0] = 1;
    for (std::size_t i : g) deltas[i] += t;
    tau.push_back(std::move(t));
  }
  return {DisplacementSet(deltas), Transformation(GroupFamily(n, groups, FamilyKind::hierarchy), tau, 2)};
}

// Minimum spanning tree on origin + deltas, read as a Steiner tree without
// Steiner points.
SteinerTree mst_tree(const DisplacementSet& delta) {
  SteinerTree y;
  y.terminals.push_back(Vector::zero(2));
  for (const auto& v : delta.deltas()) y.terminals.push_back(v);
  const std::size_t m = y.terminals.size();
  std::vector<bool> in(m, false);
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(m, 0);
  best[0] = 0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t u = m;
    for (std::size_t v = 0; v < m; ++v) {
      if (!in[v] && (u == m || best[v] < best[u])) u = v;
    }
    in[u] = true;
    if (u != 0) y.edges.emplace_back(from[u], u);
    for (std::size_t v = 0; v < m; ++v) {
      const double w = euclidean_norm(y.terminals[v] - y.terminals[u]);
      if (!in[v] && w < best[v]) {
        best[v] = w;
        from[v] = u;
      }
    }
  }
  y.total_length = tree_length(y);
  return y;
}

double projection_bound(const DisplacementSet& delta) {
  double best = 0;
  for (int k = 0; k < 360; ++k) {
    const double a = k * std::numbers::pi / 360;
    double lo = 0, hi = 0;
    for (const auto& v : delta.deltas()) {
      const double p = std::cos(a) * to_double(v[0]) + std::sin(a) * to_double(v[1]);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

}  // namespace

TEST_CASE("minimum cardinality hierarchy examples") {
  const Transformation t = solve_mcht(line({1, 1, 2}));
  CHECK(t.size() == 2);
  CHECK(t.family().kind() == FamilyKind::hierarchy);
  CHECK(validate_family_kind(t.family()));
  CHECK(solve_mcht(points({{1, 0}, {0, 1}, {2, 2}})).size() == 3);
}

TEST_CASE("minimum cardinality hierarchy matches the laminar search") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const auto delta = pooled_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 5)), 2, 4, 2);
    const Transformation t = solve_mcht(delta);
    CHECK(check_validity(delta, t));
    CHECK(t.size() == count_distinct_nonzero(delta));
    CHECK(oracle_laminar_mcht(delta) == t.size());
  }
}

TEST_CASE("1D hierarchy examples") {
  CHECK(exact_cost(solve_mlht_1d(line({3, -2, 5}))) == 7);
  const Transformation same = solve_mlht_1d(line({4, 4, 4}));
  CHECK(same.size() == 1);
  CHECK(exact_cost(same) == 4);
  CHECK(exact_cost(solve_mlht_1d(line({-1}))) == 1);
  const Transformation still = solve_mlht_1d(line({0, 0}));
  CHECK(still.size() == 0);
  CHECK(check_validity(line({0, 0}), still));
}

TEST_CASE("1D hierarchy is a nested chain per sign") {
  const auto delta = line({3, -2, 5, 3, -4, 0});
  const Transformation t = solve_mlht_1d(delta);
  CHECK(check_validity(delta, t));
  CHECK(validate_family_kind(t.family()));
  REQUIRE(t.size() == 4);
  CHECK(t.family().group(0) == IndexSet{0, 2, 3});
  CHECK(t.translation(0) == vec({3}));
  CHECK(t.family().group(1) == IndexSet{2});
  CHECK(t.translation(1) == vec({2}));
  CHECK(t.family().group(2) == IndexSet{1, 4});
  CHECK(t.translation(2) == vec({-2}));
  CHECK(t.family().group(3) == IndexSet{4});
  CHECK(t.translation(3) == vec({-2}));
}

TEST_CASE("1D hierarchy length is the span with the origin") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 40));
    const auto delta = random_instance(rng, n, 1, -30, 30);
    const Transformation t = solve_mlht_1d(delta);
    CHECK(check_validity(delta, t));
    CHECK(validate_family_kind(t.family()));
    CHECK(exact_cost(t) == span_of(delta));
    CHECK(span_with_origin(delta) == span_of(delta));
    CHECK(exact_cost(solve_mlft_1d(delta)) == exact_cost(t));
    std::set<Scalar> values;
    for (const auto& v : delta.deltas()) {
      if (v[0] != 0) values.insert(v[0]);
    }
    CHECK(t.size() == values.size());
  }
}

TEST_CASE("transformation to Steiner tree") {
  const auto delta = points({{1, 0}});
  const Transformation t(GroupFamily(1, {{0}}, FamilyKind::hierarchy), {vec({1, 0})}, 2);
  const SteinerTree y = transformation_to_steiner(delta, t);
  CHECK(y.total_length == doctest::Approx(1.0));
  REQUIRE(y.steiner_points.size() == 1);
  CHECK(y.steiner_points[0] == vec({1, 0}));

  const auto two = points({{3, 4}, {3, 5}});
  const Transformation chain(GroupFamily(2, {{0, 1}, {1}}, FamilyKind::hierarchy), {vec({3, 4}), vec({0, 1})}, 2);
  const SteinerTree path = transformation_to_steiner(two, chain);
  CHECK(path.total_length == doctest::Approx(6.0));
  CHECK(path.total_length == doctest::Approx(length(chain)));

  const Transformation wrong(GroupFamily(1, {{0}}, FamilyKind::hierarchy), {vec({2, 0})}, 2);
  CHECK_THROWS_AS(transformation_to_steiner(delta, wrong), ConstraintError);
  const Transformation crossing(GroupFamily(3, {{0, 1}, {1, 2}}, FamilyKind::free), {vec({1, 0}), vec({0, 1})}, 2);
  CHECK_THROWS_AS(transformation_to_steiner(points({{1, 0}, {1, 1}, {0, 1}}), crossing), ConstraintError);
}

TEST_CASE("Steiner tree to transformation") {
  const auto delta = points({{1, 0}, {0, 2}});
  SteinerTree star;
  star.terminals = {vec({0, 0}), vec({1, 0}), vec({0, 2})};
  star.edges = {{0, 1}, {0, 2}};
  const Transformation s = steiner_to_transformation(delta, star);
  CHECK(check_validity(delta, s));
  CHECK(s.family().groups() == std::vector<IndexSet>{{0}, {1}});

  SteinerTree path = star;
  path.steiner_points = {vec({1, 1})};
  path.edges = {{0, 3}, {3, 1}, {3, 2}};
  const Transformation p = steiner_to_transformation(delta, path);
  CHECK(check_validity(delta, p));
  CHECK(p.family().groups() == std::vector<IndexSet>{{0, 1}, {0}, {1}});
  CHECK(length(p) == doctest::Approx(tree_length(path)));

  SteinerTree broken = star;
  broken.edges = {{0, 1}};
  CHECK_THROWS_AS(steiner_to_transformation(delta, broken), ConstraintError);
  SteinerTree moved = star;
  moved.terminals[1] = vec({5, 5});
  CHECK_THROWS_AS(steiner_to_transformation(delta, moved), ConstraintError);
}

TEST_CASE("Steiner roundtrip keeps validity and length") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    auto [delta, t] = random_hierarchical(rng, static_cast<std::size_t>(uniform(rng, 1, 9)));
    REQUIRE(check_validity(delta, t));
    const SteinerTree y = transformation_to_steiner(delta, t);
    CHECK(y.total_length == doctest::Approx(length(t)).epsilon(1e-12));
    const Transformation back = steiner_to_transformation(delta, y);
    CHECK(check_validity(delta, back));
    CHECK(validate_family_kind(back.family()));
    CHECK(length(back) == doctest::Approx(length(t)).epsilon(1e-9));
  }
}

TEST_CASE("full topology counts") {
  CHECK(gtrans::detail::full_topologies(3).size() == 1);
  CHECK(gtrans::detail::full_topologies(4).size() == 3);
  CHECK(gtrans::detail::full_topologies(5).size() == 15);
  CHECK(gtrans::detail::full_topologies(6).size() == 105);
  CHECK(gtrans::detail::full_topologies(7).size() == 945);
  for (const auto& topo : gtrans::detail::full_topologies(6)) {
    CHECK(topo.size() == 2 * 6 - 3);
    std::vector<int> degree(2 * 6 - 2, 0);
    for (const auto& [a, b] : topo) {
      ++degree[a];
      ++degree[b];
    }
    for (std::size_t v = 0; v < degree.size(); ++v) CHECK(degree[v] == (v < 6 ? 1 : 3));
  }
}

TEST_CASE("equilateral triangle gives the Fermat tree") {
  const Scalar h = round_to_decimal(std::sqrt(3.0) / 2, 15);
  const DisplacementSet delta({Vector{1, 0}, Vector{frac(1, 2), h}});
  const Transformation t = solve_mlht_2d_exact_tiny(delta);
  CHECK(check_validity(delta, t));
  CHECK(validate_family_kind(t.family()));
  CHECK(length(t) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("collinear terminals need no Steiner point") {
  const auto delta = points({{1, 0}, {2, 0}});
  const Transformation t = solve_mlht_2d_exact_tiny(delta);
  CHECK(check_validity(delta, t));
  CHECK(t.size() == 2);
  CHECK(length(t) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(solve_mlht_2d_exact_tiny(points({{0, 0}, {0, 0}})).size() == 0);
  CHECK(length(solve_mlht_2d_exact_tiny(points({{3, 4}, {3, 4}}))) == doctest::Approx(5.0));
}

TEST_CASE("tiny exact solver has a hard size cap") {
  std::mt19937_64 rng(44);
  CHECK_THROWS_AS(solve_mlht_2d_exact_tiny(random_instance(rng, 7, 2, -5, 5)), SizeCapError);
  CHECK_THROWS_AS(solve_mlht_2d_exact_tiny(line({1})), ConstraintError);
}

TEST_CASE("tiny exact solver dominance probes") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 4));
    const auto delta = random_instance(rng, n, 2, -10, 10);
    const Transformation t = solve_mlht_2d_exact_tiny(delta);
    const double len = length(t);
    CHECK(check_validity(delta, t));
    CHECK(validate_family_kind(t.family()));
    CHECK(len <= length(solve_mcht(delta)) + 1e-9);
    CHECK(len <= length(steiner_to_transformation(delta, mst_tree(delta))) + 1e-9);
    CHECK(len >= projection_bound(delta) - 1e-9);
    // Random hierarchies with the same instance are never shorter.
    for (int probe = 0; probe < 20; ++probe) {
      const auto groups = random_laminar(rng, n, true, true);
      const auto r = minimize_length_fixed_family(delta, GroupFamily(n, groups, FamilyKind::given), NormKind::euclidean);
      REQUIRE(r);
      CHECK(len <= r->objective + 1e-7);
    }
  }
}

TEST_CASE("unit square corners") {
  const auto delta = points({{1, 0}, {0, 1}, {1, 1}});
  const Transformation t = solve_mlht_2d_exact_tiny(delta);
  CHECK(length(t) == doctest::Approx(1 + std::sqrt(3.0)).epsilon(1e-7));
  CHECK(length(t) >= length(oracle_mlft(delta, 7)) - 1e-7);
}
