#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gtrans/core.hpp"

namespace testing {

using namespace gtrans;

inline Scalar frac(long p, long q) {
  Scalar out(p, q);
  out.canonicalize();
  return out;
}

inline Vector vec(std::initializer_list<long> xs) {
  std::vector<Scalar> c;
  for (long x : xs) c.emplace_back(x);
  return Vector(std::move(c));
}

inline DisplacementSet line(std::initializer_list<long> xs) {
  std::vector<Vector> out;
  for (long x : xs) out.push_back(vec({x}));
  return DisplacementSet(std::move(out));
}

inline DisplacementSet points(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> out;
  for (const auto& r : rows) out.push_back(vec(r));
  return DisplacementSet(std::move(out));
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline DisplacementSet random_instance(std::mt19937_64& rng, std::size_t n, std::size_t d, long lo, long hi) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = uniform(rng, lo, hi);
    out.push_back(std::move(v));
  }
  return DisplacementSet(std::move(out));
}

// Instance whose vectors are drawn from a small pool, so repeats and zeros
// show up often.
inline DisplacementSet pooled_instance(std::mt19937_64& rng, std::size_t n, std::size_t d, std::size_t pool_size,
                                       long range) {
  const DisplacementSet pool = random_instance(rng, pool_size, d, -range, range);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool_size) - 1))]);
  return DisplacementSet(std::move(out));
}

// Random laminar family on [n]: recursive random splits. Root and singletons
// are optional.
inline std::vector<IndexSet> random_laminar(std::mt19937_64& rng, std::size_t n, bool with_root, bool with_singletons) {
  std::set<IndexSet> groups;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<std::vector<std::size_t>> work{all};
  while (!work.empty()) {
    auto cur = std::move(work.back());
    work.pop_back();
    if (cur.size() <= 1) continue;
    const long parts = uniform(rng, 2, std::min<long>(3, static_cast<long>(cur.size())));
    std::vector<std::vector<std::size_t>> split(static_cast<std::size_t>(parts));
    for (std::size_t j = 0; j < cur.size(); ++j) {
      split[j < static_cast<std::size_t>(parts) ? j : static_cast<std::size_t>(uniform(rng, 0, parts - 1))].push_back(cur[j]);
    }
    for (auto& s : split) {
      if (s.size() >= 2 && uniform(rng, 0, 3) != 0) {
        IndexSet g = s;
        std::sort(g.begin(), g.end());
        groups.insert(g);
      }
      work.push_back(std::move(s));
    }
  }
  if (with_root) {
    IndexSet root(n);
    std::iota(root.begin(), root.end(), 0);
    groups.insert(root);
  }
  if (with_singletons) {
    for (std::size_t i = 0; i < n; ++i) groups.insert(IndexSet{i});
  }
  std::vector<IndexSet> out(groups.begin(), groups.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline Scalar span_of(const DisplacementSet& delta) {
  Scalar lo = 0, hi = 0;
  for (const auto& v : delta.deltas()) {
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  return hi - lo;
}

inline std::size_t count_distinct_nonzero(const DisplacementSet& delta) {
  std::set<Vector> s;
  for (const auto& v : delta.deltas()) {
    if (!v.is_zero()) s.insert(v);
  }
  return s.size();
}

inline double length(const Transformation& t, NormKind norm = NormKind::euclidean) {
  return evaluate_cost(t, norm).length;
}

inline bool same_transformation(const Transformation& a, const Transformation& b) {
  return a.family().kind() == b.family().kind() && a.family().point_count() == b.family().point_count() &&
         a.family().groups() == b.family().groups() && a.tau() == b.tau() && a.dimension() == b.dimension();
}

}  // namespace testing
