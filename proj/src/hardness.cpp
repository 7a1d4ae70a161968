#include "gtrans/hardness.hpp"

#include <algorithm>
#include <map>
#include <bit>
#include <cstdint>
#include <set>

namespace gtrans {

void Graph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw ConstraintError("edge endpoint out of range");
    if (u == v) throw ConstraintError("self-loop at vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw ConstraintError("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }
}

namespace {

Vector unit_sum(std::size_t d, std::initializer_list<std::size_t> coords) {
  Vector v = Vector::zero(d);
  for (std::size_t c : coords) v[c] += 1;
  return v;
}

}  // namespace

DisplacementSet encode_vertex_cover(const Graph& g) {
  g.validate();
  const GadgetLayout L{g.vertex_count, g.edges.size()};
  const std::size_t d = L.dimension();
  if (d == 0) throw ConstraintError("gadget of an empty graph has no vectors");
  std::vector<Vector> out;
  for (std::size_t v = 0; v < g.vertex_count; ++v) out.push_back(unit_sum(d, {L.vertex_coord(v, 1), L.vertex_coord(v, 2)}));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    const auto x = [&](int k) { return L.edge_coord(e, k); };
    out.push_back(unit_sum(d, {L.vertex_coord(u, 1), x(1), x(2)}));
    out.push_back(unit_sum(d, {L.vertex_coord(v, 2), x(2), x(3)}));
    out.push_back(unit_sum(d, {L.vertex_coord(u, 2), x(3), x(4)}));
    out.push_back(unit_sum(d, {L.vertex_coord(v, 1), x(4), x(1)}));
    out.push_back(unit_sum(d, {x(1), x(2), x(3), x(4)}));
  }
  return DisplacementSet(std::move(out));
}

Transformation cover_to_solution(const Graph& g, const std::vector<std::size_t>& cover) {
  g.validate();
  std::vector<bool> in_cover(g.vertex_count, false);
  for (std::size_t v : cover) {
    if (v >= g.vertex_count) throw ConstraintError("cover vertex out of range");
    in_cover[v] = true;
  }
  const GadgetLayout L{g.vertex_count, g.edges.size()};
  const std::size_t d = L.dimension();

  // Each displacement is written as a sum of translation vectors; a group
  // is then the set of displacements using a given vector.
  std::map<Vector, IndexSet> users;
  std::vector<Vector> order;
  auto use = [&](const Vector& t, std::size_t index) {
    auto [it, inserted] = users.try_emplace(t);
    if (inserted) order.push_back(t);
    it->second.push_back(index);
  };

  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (in_cover[v]) {
      use(unit_sum(d, {L.vertex_coord(v, 1)}), v);
      use(unit_sum(d, {L.vertex_coord(v, 2)}), v);
    } else {
      use(unit_sum(d, {L.vertex_coord(v, 1), L.vertex_coord(v, 2)}), v);
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    const std::size_t base = g.vertex_count + 5 * e;
    const auto x = [&](int k) { return L.edge_coord(e, k); };
    if (in_cover[u]) {
      const Vector x12 = unit_sum(d, {x(1), x(2)});
      const Vector x34 = unit_sum(d, {x(3), x(4)});
      use(unit_sum(d, {L.vertex_coord(u, 1)}), base);
      use(x12, base);
      use(unit_sum(d, {L.vertex_coord(v, 2), x(2), x(3)}), base + 1);
      use(unit_sum(d, {L.vertex_coord(u, 2)}), base + 2);
      use(x34, base + 2);
      use(unit_sum(d, {L.vertex_coord(v, 1), x(4), x(1)}), base + 3);
      use(x12, base + 4);
      use(x34, base + 4);
    } else if (in_cover[v]) {
      const Vector x23 = unit_sum(d, {x(2), x(3)});
      const Vector x41 = unit_sum(d, {x(4), x(1)});
      use(unit_sum(d, {L.vertex_coord(u, 1), x(1), x(2)}), base);
      use(unit_sum(d, {L.vertex_coord(v, 2)}), base + 1);
      use(x23, base + 1);
      use(unit_sum(d, {L.vertex_coord(u, 2), x(3), x(4)}), base + 2);
      use(unit_sum(d, {L.vertex_coord(v, 1)}), base + 3);
      use(x41, base + 3);
      use(x23, base + 4);
      use(x41, base + 4);
    } else {
      throw ConstraintError("cover misses edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }

  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (const auto& t : order) {
    groups.push_back(users[t]);
    tau.push_back(t);
  }
  const std::size_t n = g.vertex_count + 5 * g.edges.size();
  return Transformation(GroupFamily(n, std::move(groups), FamilyKind::free), std::move(tau), d);
}

std::vector<std::size_t> brute_force_vertex_cover(const Graph& g) {
  g.validate();
  if (g.vertex_count > 24) throw SizeCapError("exhaustive vertex cover is capped at 24 vertices");
  std::uint32_t best = (1u << g.vertex_count) - 1;
  for (std::uint32_t mask = 0; mask < (1u << g.vertex_count); ++mask) {
    if (std::popcount(mask) >= std::popcount(best)) continue;
    const bool covers = std::all_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
      return ((mask >> e.first) & 1u) || ((mask >> e.second) & 1u);
    });
    if (covers) best = mask;
  }
  std::vector<std::size_t> cover;
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if ((best >> v) & 1u) cover.push_back(v);
  }
  return cover;
}

bool is_monotone(const Transformation& t) {
  for (const auto& v : t.tau()) {
    for (const auto& c : v.components()) {
      if (c < 0) return false;
    }
  }
  return true;
}

EncodingParams EncodingParams::make(std::size_t n, std::size_t d, const BigInt& M) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  EncodingParams p;
  p.n = n;
  p.d = d;
  p.M = M;
  const BigInt f = factorial(static_cast<unsigned>(n + 1));
  p.digit_bound = f * f * M;
  p.A = 3 * p.digit_bound;
  return p;
}

BigInt encode_vector(const Vector& v, const EncodingParams& params) {
  BigInt out = 0;
  BigInt power = 1;
  for (std::size_t j = 0; j < v.dimension(); ++j) {
    if (!is_integer(v[j])) throw ConstraintError("encoding needs integer components");
    out += v[j].get_num() * power;
    power *= params.A;
  }
  return out;
}

std::pair<DisplacementSet, EncodingParams> reduce_dimension(const DisplacementSet& delta) {
  BigInt M = 1;
  for (const auto& v : delta.deltas()) {
    for (const auto& c : v.components()) {
      if (!is_integer(c)) throw ConstraintError("dimension reduction needs integer components");
      const BigInt a = abs(c).get_num();
      if (a > M) M = a;
    }
  }
  EncodingParams params = EncodingParams::make(delta.size(), delta.dimension(), M);
  std::vector<Vector> out;
  out.reserve(delta.size());
  for (const auto& v : delta.deltas()) out.push_back(Vector{Scalar(encode_vector(v, params))});
  return {DisplacementSet(std::move(out)), params};
}

Vector lift_translation(const Scalar& x, const EncodingParams& params, const BigInt& D) {
  if (D == 0) throw std::invalid_argument("D must be nonzero");
  const Scalar scaled = x * D;
  if (!is_integer(scaled)) throw DecodeError("D x is not an integer");
  BigInt rest = scaled.get_num();
  const BigInt high = 2 * params.digit_bound;
  Vector out = Vector::zero(params.d);
  for (std::size_t j = 0; j < params.d; ++j) {
    BigInt digit;
    mpz_fdiv_r(digit.get_mpz_t(), rest.get_mpz_t(), params.A.get_mpz_t());
    if (digit > params.digit_bound) {
      if (digit < high) throw DecodeError("digit " + std::to_string(j) + " falls in the forbidden band");
      digit -= params.A;
    }
    rest -= digit;
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), params.A.get_mpz_t());
    out[j] = Scalar(digit, D);
    out[j].canonicalize();
  }
  if (rest != 0) throw DecodeError("value has more than d digits");
  return out;
}

Transformation lift_transformation(const Transformation& t, const EncodingParams& params, const BigInt& D) {
  if (t.dimension() != 1) throw ConstraintError("lift needs a one-dimensional transformation");
  std::vector<Vector> tau;
  tau.reserve(t.size());
  for (const auto& v : t.tau()) tau.push_back(lift_translation(v[0], params, D));
  return Transformation(t.family(), std::move(tau), params.d);
}

}  // namespace gtrans
