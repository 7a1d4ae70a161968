#include "gtrans/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "gtrans/disjoint.hpp"
#include "gtrans/linalg.hpp"

namespace gtrans {

namespace {

class Deadline {
 public:
  explicit Deadline(OracleBudget budget)
      : end_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(budget.seconds))) {}

  void check() {
    if (++ticks_ % 1024 != 0) return;
    if (std::chrono::steady_clock::now() > end_) throw OracleTimeout("oracle exceeded its time budget");
  }

 private:
  std::chrono::steady_clock::time_point end_;
  std::size_t ticks_ = 0;
};

std::vector<Scalar> coordinate(const DisplacementSet& delta, std::size_t k) {
  std::vector<Scalar> out;
  out.reserve(delta.size());
  for (const auto& v : delta.deltas()) out.push_back(v[k]);
  return out;
}

// Exact translations valid for exactly these groups, or nullopt.
std::optional<std::vector<Vector>> solve_family(const DisplacementSet& delta, const std::vector<IndexSet>& groups,
                                                bool nonnegative) {
  const RationalMatrix b = membership_matrix(delta.size(), groups);
  std::vector<Vector> tau(groups.size(), Vector::zero(delta.dimension()));
  for (std::size_t k = 0; k < delta.dimension(); ++k) {
    auto x = nonnegative ? nonnegative_solution(b, coordinate(delta, k)) : solve_particular(b, coordinate(delta, k));
    if (!x) return std::nullopt;
    for (std::size_t g = 0; g < groups.size(); ++g) tau[g][k] = (*x)[g];
  }
  return tau;
}

bool all_zero(const DisplacementSet& delta) {
  return std::all_of(delta.deltas().begin(), delta.deltas().end(), [](const Vector& v) { return v.is_zero(); });
}

std::size_t distinct_nonzero(const DisplacementSet& delta) {
  std::set<Vector> seen;
  for (const auto& v : delta.deltas()) {
    if (!v.is_zero()) seen.insert(v);
  }
  return seen.size();
}

// Visits every k-combination of 0..m-1 in lexicographic order until visit
// returns true.
bool for_each_combination(std::size_t m, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > m) return false;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    if (visit(pick)) return true;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

double binomial(std::size_t m, std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 0; i < k; ++i) out = out * static_cast<double>(m - i) / static_cast<double>(i + 1);
  return out;
}

void require_points(const DisplacementSet& delta, std::size_t cap, const char* what) {
  if (delta.size() > cap) {
    throw SizeCapError(std::string(what) + " is capped at n = " + std::to_string(cap) + ", got " +
                       std::to_string(delta.size()));
  }
}

}  // namespace

std::vector<unsigned> ordered_subsets(std::size_t n) {
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return mask_to_set(a) < mask_to_set(b);
  });
  return masks;
}

IndexSet mask_to_set(unsigned mask) {
  IndexSet out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// ------------------------------------------------------------------- MLFT

MlftOracleResult oracle_mlft_report(const DisplacementSet& delta, std::size_t max_groups, double tol, NormKind norm,
                                    OracleBudget budget) {
  require_points(delta, kOracleMlftMaxPoints, "oracle_mlft");
  const std::size_t n = delta.size();
  const std::size_t d = delta.dimension();
  const auto subsets = ordered_subsets(n);
  const std::size_t k = std::min(max_groups, subsets.size());
  if (binomial(subsets.size(), k) > 200000) throw SizeCapError("oracle_mlft: too many families to enumerate");

  Deadline deadline(budget);
  ConvexOptions options;
  options.tol = tol;
  std::optional<MlftOracleResult> best;
  std::size_t tried = 0;
  for_each_combination(subsets.size(), k, [&](const std::vector<std::size_t>& pick) {
    deadline.check();
    std::vector<IndexSet> groups;
    for (std::size_t p : pick) groups.push_back(mask_to_set(subsets[p]));
    GroupFamily family(n, std::move(groups), FamilyKind::free);
    ++tried;
    std::optional<ConvexResult> r;
    try {
      r = minimize_length_fixed_family(delta, family, norm, options);
    } catch (const BudgetExceeded& e) {
      r = e.best();
    }
    if (r && (!best || r->objective < best->length)) {
      best = MlftOracleResult{r->transformation, r->objective, r->lower_bound, 0};
    }
    return false;
  });
  if (!best) {
    if (!all_zero(delta)) throw ConstraintError("no family of the allowed size admits a valid translation");
    best = MlftOracleResult{Transformation::empty(n, d, FamilyKind::free), 0.0, 0.0, 0};
  }
  best->families_tried = tried;
  return std::move(*best);
}

Transformation oracle_mlft(const DisplacementSet& delta, std::size_t max_groups, double tol) {
  return oracle_mlft_report(delta, max_groups, tol).transformation;
}

// ------------------------------------------------------------------- MCFT

namespace {

bool is_binary(const DisplacementSet& delta) {
  for (const auto& v : delta.deltas()) {
    for (const auto& c : v.components()) {
      if (c != 0 && c != 1) return false;
    }
  }
  return true;
}

// All partitions of the set bits of `support` into nonempty blocks.
void support_partitions(unsigned support, std::vector<unsigned>& blocks, std::vector<std::vector<unsigned>>& out) {
  if (support == 0) {
    out.push_back(blocks);
    return;
  }
  const unsigned lowest = support & (~support + 1);
  const unsigned rest = support ^ lowest;
  // Blocks containing the lowest remaining bit: lowest plus any subset of rest.
  for (unsigned sub = rest;; sub = (sub - 1) & rest) {
    blocks.push_back(lowest | sub);
    support_partitions(rest ^ sub, blocks, out);
    blocks.pop_back();
    if (sub == 0) break;
  }
}

McftOracleResult binary_monotone_search(const DisplacementSet& delta, Deadline& deadline) {
  const std::size_t n = delta.size();
  const std::size_t d = delta.dimension();
  std::vector<unsigned> support(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      if (delta[i][k] == 1) support[i] |= 1u << k;
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (support[i] != 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::popcount(support[a]) > std::popcount(support[b]); });

  std::vector<std::vector<std::vector<unsigned>>> options(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    std::vector<unsigned> blocks;
    support_partitions(support[order[p]], blocks, options[p]);
  }

  // Incumbent: every point its own block (the disjoint solution).
  std::vector<std::size_t> best_choice(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t o = 0; o < options[p].size(); ++o) {
      if (options[p][o].size() == 1) best_choice[p] = o;
    }
  }
  std::size_t best = distinct_nonzero(delta);

  std::vector<unsigned> uses(1u << d, 0);
  std::vector<std::size_t> choice(order.size(), 0);
  std::size_t distinct = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t p) {
    deadline.check();
    if (p == order.size()) {
      if (distinct < best) {
        best = distinct;
        best_choice = choice;
      }
      return;
    }
    // Cheapest options first: those reusing the most existing blocks.
    std::vector<std::pair<std::size_t, std::size_t>> ranked;
    for (std::size_t o = 0; o < options[p].size(); ++o) {
      std::size_t fresh = 0;
      for (unsigned b : options[p][o]) fresh += uses[b] == 0 ? 1 : 0;
      ranked.emplace_back(fresh, o);
    }
    std::stable_sort(ranked.begin(), ranked.end());
    for (const auto& [fresh, o] : ranked) {
      if (distinct + fresh >= best) break;
      choice[p] = o;
      for (unsigned b : options[p][o]) distinct += uses[b]++ == 0 ? 1 : 0;
      dfs(p + 1);
      for (unsigned b : options[p][o]) distinct -= --uses[b] == 0 ? 1 : 0;
    }
  };
  dfs(0);

  std::vector<unsigned> block_order;
  std::vector<IndexSet> members(1u << d);
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (unsigned b : options[p][best_choice[p]]) {
      if (members[b].empty()) block_order.push_back(b);
      members[b].push_back(order[p]);
    }
  }
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (unsigned b : block_order) {
    std::sort(members[b].begin(), members[b].end());
    groups.push_back(members[b]);
    Vector t = Vector::zero(d);
    for (std::size_t k = 0; k < d; ++k) {
      if ((b >> k) & 1u) t[k] = 1;
    }
    tau.push_back(std::move(t));
  }
  Transformation t(GroupFamily(n, std::move(groups), FamilyKind::free), std::move(tau), d);
  return {best, std::move(t)};
}

}  // namespace

McftOracleResult oracle_mcft_report(const DisplacementSet& delta, bool monotone, OracleBudget budget) {
  const std::size_t n = delta.size();
  const std::size_t d = delta.dimension();
  Deadline deadline(budget);
  if (monotone) {
    for (const auto& v : delta.deltas()) {
      for (const auto& c : v.components()) {
        if (c < 0) throw ConstraintError("monotone MCFT needs nonnegative displacements");
      }
    }
    if (is_binary(delta) && n <= kOracleBinaryMaxPoints && d <= kOracleBinaryMaxDimension) {
      return binary_monotone_search(delta, deadline);
    }
  }
  require_points(delta, kOracleMcftMaxPoints, "oracle_mcft");

  const auto subsets = ordered_subsets(n);
  const std::size_t upper = distinct_nonzero(delta);
  std::optional<McftOracleResult> found;
  for (std::size_t k = 0; k < upper && !found; ++k) {
    for_each_combination(subsets.size(), k, [&](const std::vector<std::size_t>& pick) {
      deadline.check();
      std::vector<IndexSet> groups;
      for (std::size_t p : pick) groups.push_back(mask_to_set(subsets[p]));
      auto tau = solve_family(delta, groups, monotone);
      if (!tau) return false;
      found = McftOracleResult{
          k, Transformation(GroupFamily(n, std::move(groups), FamilyKind::free), std::move(*tau), d)};
      return true;
    });
  }
  if (found) return std::move(*found);
  const Transformation t = solve_disjoint(delta);
  return {upper, Transformation(t.family().with_kind(FamilyKind::free), t.tau(), d)};
}

std::size_t oracle_mcft(const DisplacementSet& delta, bool monotone) {
  return oracle_mcft_report(delta, monotone).cardinality;
}

// ----------------------------------------------------------- laminar MCHT

McftOracleResult oracle_laminar_mcht_report(const DisplacementSet& delta, OracleBudget budget) {
  require_points(delta, kOracleLaminarMaxPoints, "oracle_laminar_mcht");
  const std::size_t n = delta.size();
  const std::size_t d = delta.dimension();
  const auto subsets = ordered_subsets(n);
  const std::size_t upper = distinct_nonzero(delta);
  Deadline deadline(budget);

  auto compatible = [](unsigned a, unsigned b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; };
  std::optional<McftOracleResult> found;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t)> grow = [&](std::size_t from, std::size_t k) {
    deadline.check();
    if (pick.size() == k) {
      std::vector<IndexSet> groups;
      for (std::size_t p : pick) groups.push_back(mask_to_set(subsets[p]));
      auto tau = solve_family(delta, groups, false);
      if (!tau) return false;
      found = McftOracleResult{
          k, Transformation(GroupFamily(n, std::move(groups), FamilyKind::hierarchy), std::move(*tau), d)};
      return true;
    }
    for (std::size_t s = from; s < subsets.size(); ++s) {
      const bool ok = std::all_of(pick.begin(), pick.end(), [&](std::size_t p) { return compatible(subsets[p], subsets[s]); });
      if (!ok) continue;
      pick.push_back(s);
      if (grow(s + 1, k)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t k = 0; k < upper && !found; ++k) {
    pick.clear();
    grow(0, k);
  }
  if (found) return std::move(*found);
  return {upper, solve_disjoint(delta)};
}

std::size_t oracle_laminar_mcht(const DisplacementSet& delta) { return oracle_laminar_mcht_report(delta).cardinality; }

// -------------------------------------------------------------- disjoint

void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> block_of(n, 0);
  std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      visit(block_of);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      block_of[i] = b;
      assign(i + 1, std::max(blocks, b + 1));
    }
  };
  assign(0, 0);
}

DisjointOracleResult oracle_disjoint(const DisplacementSet& delta, NormKind norm) {
  require_points(delta, kOracleDisjointMaxPoints, "oracle_disjoint");
  const std::size_t n = delta.size();
  DisjointOracleResult out;
  out.min_cardinality = n + 1;
  out.min_length = std::numeric_limits<double>::infinity();
  for_each_set_partition(n, [&](const std::vector<std::size_t>& block_of) {
    std::vector<std::optional<std::size_t>> first(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& f = first[block_of[i]];
      if (!f) {
        f = i;
      } else if (!(delta[*f] == delta[i])) {
        return;
      }
    }
    ++out.valid_partitions;
    std::size_t count = 0;
    double length = 0.0;
    for (const auto& f : first) {
      if (f && !delta[*f].is_zero()) {
        ++count;
        length += norm_length(delta[*f], norm);
      }
    }
    out.min_cardinality = std::min(out.min_cardinality, count);
    out.min_length = std::min(out.min_length, length);
  });
  return out;
}

// ---------------------------------------------------------- 1D MLGT grid

std::optional<Transformation> oracle_mlgt_1d_grid(const DisplacementSet& delta, const GroupFamily& family) {
  if (delta.dimension() != 1) throw ConstraintError("grid oracle needs one-dimensional input");
  if (family.point_count() != delta.size()) throw MalformedInstance("family and instance disagree on n");
  const auto tree = build_hierarchy_tree(delta.size(), family.groups());
  if (!tree) throw ConstraintError("grid oracle needs a laminar family");
  const std::size_t m = family.size();

  std::vector<std::optional<Scalar>> pinned(m);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const auto g = tree->leaf_parent[i];
    if (!g) {
      if (!delta[i].is_zero()) return std::nullopt;
      continue;
    }
    if (pinned[*g] && *pinned[*g] != delta[i][0]) return std::nullopt;
    pinned[*g] = delta[i][0];
  }

  std::set<Scalar> values{Scalar(0)};
  for (const auto& v : delta.deltas()) values.insert(v[0]);
  const std::vector<Scalar> candidates(values.begin(), values.end());
  std::vector<std::size_t> free_groups;
  for (std::size_t g = 0; g < m; ++g) {
    if (!pinned[g]) free_groups.push_back(g);
  }
  if (std::pow(static_cast<double>(candidates.size()), static_cast<double>(free_groups.size())) > 5e6) {
    throw SizeCapError("grid oracle: too many candidate assignments");
  }

  const auto order = tree->top_down_order();
  std::vector<Scalar> position(m);
  for (std::size_t g = 0; g < m; ++g) {
    if (pinned[g]) position[g] = *pinned[g];
  }
  std::optional<Scalar> best_cost;
  std::vector<Scalar> best_position;
  std::vector<std::size_t> digit(free_groups.size(), 0);
  while (true) {
    for (std::size_t f = 0; f < free_groups.size(); ++f) position[free_groups[f]] = candidates[digit[f]];
    Scalar cost = 0;
    for (std::size_t g : order) {
      const auto p = tree->parent[g];
      cost += abs(position[g] - (p ? position[*p] : Scalar(0)));
    }
    if (!best_cost || cost < *best_cost) {
      best_cost = cost;
      best_position = position;
    }
    std::size_t f = 0;
    while (f < digit.size() && ++digit[f] == candidates.size()) digit[f++] = 0;
    if (f == digit.size()) break;
  }

  std::vector<Vector> tau(m);
  for (std::size_t g = 0; g < m; ++g) {
    const auto p = tree->parent[g];
    tau[g] = Vector{best_position[g] - (p ? best_position[*p] : Scalar(0))};
  }
  return Transformation(family, std::move(tau), 1);
}

}  // namespace gtrans
