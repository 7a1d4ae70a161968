#include "gtrans/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

namespace gtrans {

// ---------------------------------------------------------------- Vector

bool Vector::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Scalar& x) { return x == 0; });
}

Vector& Vector::operator+=(const Vector& other) {
  if (other.dimension() != dimension()) throw MalformedInstance("vector dimension mismatch");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += other.components_[k];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  if (other.dimension() != dimension()) throw MalformedInstance("vector dimension mismatch");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] -= other.components_[k];
  return *this;
}

Vector& Vector::operator*=(const Scalar& factor) {
  for (auto& c : components_) c *= factor;
  return *this;
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.dimension(); ++k) {
    if (k) out += ", ";
    out += to_string(v[k]);
  }
  return out + ")";
}

// ------------------------------------------------------- DisplacementSet

DisplacementSet::DisplacementSet(std::vector<Vector> deltas) : deltas_(std::move(deltas)) {
  if (deltas_.empty()) throw MalformedInstance("displacement set must contain at least one vector");
  const std::size_t d = deltas_.front().dimension();
  if (d == 0) throw MalformedInstance("dimension must be at least 1");
  for (const auto& v : deltas_) {
    if (v.dimension() != d) throw MalformedInstance("displacements have inconsistent dimensions");
  }
}

DisplacementSet DisplacementSet::from_points(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.size() != b.size()) throw MalformedInstance("point sets A and B differ in size");
  std::vector<Vector> deltas;
  deltas.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) deltas.push_back(b[i] - a[i]);
  return DisplacementSet(std::move(deltas));
}

// ------------------------------------------------------------ FamilyKind

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::given: return "given";
    case FamilyKind::disjoint: return "disjoint";
    case FamilyKind::hierarchy: return "hierarchy";
    case FamilyKind::free: return "free";
  }
  return "free";
}

FamilyKind parse_family_kind(const std::string& text) {
  if (text == "given") return FamilyKind::given;
  if (text == "disjoint") return FamilyKind::disjoint;
  if (text == "hierarchy" || text == "hierarchical") return FamilyKind::hierarchy;
  if (text == "free") return FamilyKind::free;
  throw MalformedInstance("unknown family kind '" + text + "'");
}

std::string to_string(NormKind norm) { return norm == NormKind::euclidean ? "euclidean" : "manhattan"; }

NormKind parse_norm(const std::string& text) {
  if (text == "euclidean") return NormKind::euclidean;
  if (text == "manhattan") return NormKind::manhattan;
  throw MalformedInstance("unknown norm '" + text + "'");
}

// --------------------------------------------------------- HierarchyTree

std::vector<std::vector<std::size_t>> HierarchyTree::children() const {
  std::vector<std::vector<std::size_t>> out(parent.size());
  for (std::size_t g = 0; g < parent.size(); ++g) {
    if (parent[g]) out[*parent[g]].push_back(g);
  }
  return out;
}

std::vector<std::size_t> HierarchyTree::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < parent.size(); ++g) {
    if (!parent[g]) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> HierarchyTree::top_down_order() const {
  const auto kids = children();
  std::vector<std::size_t> order = roots();
  order.reserve(parent.size());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t c : kids[order[head]]) order.push_back(c);
  }
  return order;
}

std::optional<HierarchyTree> build_hierarchy_tree(std::size_t n, const std::vector<IndexSet>& groups) {
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return groups[a].size() > groups[b].size(); });

  // Processing by decreasing size, the current owner of an index is the
  // smallest group seen so far that contains it. A laminar family requires all
  // members of the next group to share one owner.
  HierarchyTree tree;
  tree.parent.assign(groups.size(), std::nullopt);
  std::vector<std::optional<std::size_t>> owner(n);
  for (std::size_t g : order) {
    const IndexSet& members = groups[g];
    const auto p = owner[members.front()];
    for (std::size_t i : members) {
      if (owner[i] != p) return std::nullopt;
    }
    if (p && groups[*p].size() == members.size()) return std::nullopt;  // duplicate set
    tree.parent[g] = p;
    for (std::size_t i : members) owner[i] = g;
  }
  tree.leaf_parent = std::move(owner);
  return tree;
}

bool is_laminar(std::size_t n, const std::vector<IndexSet>& groups) {
  return build_hierarchy_tree(n, groups).has_value();
}

// ----------------------------------------------------------- GroupFamily

namespace {

void normalize_groups(std::size_t n, std::vector<IndexSet>& groups) {
  for (auto& g : groups) {
    if (g.empty()) throw MalformedInstance("family contains an empty group");
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw MalformedInstance("group lists an index twice");
    }
    if (g.back() >= n) throw MalformedInstance("group index out of range");
  }
}

}  // namespace

GroupFamily::GroupFamily(std::size_t n, std::vector<IndexSet> groups, FamilyKind kind)
    : n_(n), groups_(std::move(groups)), kind_(kind) {
  normalize_groups(n_, groups_);
  if (kind_ == FamilyKind::hierarchy) tree_ = build_hierarchy_tree(n_, groups_);
}

GroupFamily::GroupFamily(std::size_t n, std::vector<IndexSet> groups, FamilyKind kind, HierarchyTree tree)
    : n_(n), groups_(std::move(groups)), kind_(kind), tree_(std::move(tree)) {
  normalize_groups(n_, groups_);
  if (tree_->parent.size() != groups_.size() || tree_->leaf_parent.size() != n_) {
    throw MalformedInstance("hierarchy tree does not match the family size");
  }
}

GroupFamily GroupFamily::from_tree(std::size_t n, HierarchyTree tree) {
  const std::size_t m = tree.parent.size();
  if (tree.leaf_parent.size() != n) throw MalformedInstance("tree leaf count does not match n");
  std::vector<IndexSet> groups(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto g = tree.leaf_parent[i]; g; g = tree.parent[*g]) groups[*g].push_back(i);
  }
  return GroupFamily(n, std::move(groups), FamilyKind::hierarchy, std::move(tree));
}

GroupFamily GroupFamily::with_kind(FamilyKind kind) const {
  if (kind == FamilyKind::hierarchy && tree_) return GroupFamily(n_, groups_, kind, *tree_);
  return GroupFamily(n_, groups_, kind);
}

// -------------------------------------------------------- Transformation

Transformation::Transformation(GroupFamily family, std::vector<Vector> tau, std::size_t dimension)
    : family_(std::move(family)), tau_(std::move(tau)), dimension_(dimension) {
  if (tau_.size() != family_.size()) throw MalformedInstance("one translation per group required");
  if (dimension_ == 0) throw MalformedInstance("dimension must be at least 1");
  for (const auto& v : tau_) {
    if (v.dimension() != dimension_) throw MalformedInstance("translation dimension mismatch");
  }
}

Transformation Transformation::empty(std::size_t n, std::size_t dimension, FamilyKind kind) {
  if (kind == FamilyKind::hierarchy) {
    HierarchyTree tree;
    tree.leaf_parent.assign(n, std::nullopt);
    return Transformation(GroupFamily(n, {}, kind, std::move(tree)), {}, dimension);
  }
  return Transformation(GroupFamily(n, {}, kind), {}, dimension);
}

// ------------------------------------------------------- validity & cost

std::vector<Vector> residuals(const DisplacementSet& delta, const Transformation& t) {
  if (t.family().point_count() != delta.size()) {
    throw MalformedInstance("transformation and instance disagree on the number of points");
  }
  if (t.dimension() != delta.dimension()) {
    throw MalformedInstance("transformation and instance disagree on the dimension");
  }
  std::vector<Vector> r = delta.deltas();
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t i : t.family().group(k)) r[i] -= t.translation(k);
  }
  return r;
}

bool check_validity(const DisplacementSet& delta, const Transformation& t) {
  const auto r = residuals(delta, t);
  return std::all_of(r.begin(), r.end(), [](const Vector& v) { return v.is_zero(); });
}

double euclidean_norm(const Vector& v) {
  Scalar sq = 0;
  for (const auto& c : v.components()) sq += c * c;
  return std::sqrt(to_double(sq));
}

Scalar manhattan_norm(const Vector& v) {
  Scalar s = 0;
  for (const auto& c : v.components()) s += abs(c);
  return s;
}

double norm_length(const Vector& v, NormKind norm) {
  if (norm == NormKind::manhattan || v.dimension() == 1) return to_double(manhattan_norm(v));
  return euclidean_norm(v);
}

CostReport evaluate_cost(const Transformation& t, NormKind norm) {
  CostReport report;
  report.cardinality = t.size();
  report.norm = norm;
  const bool exact = norm == NormKind::manhattan || t.dimension() == 1;
  Scalar exact_total = 0;
  double total = 0.0;
  report.per_group.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    double len;
    if (exact) {
      Scalar e = manhattan_norm(t.translation(k));
      exact_total += e;
      len = to_double(e);
    } else {
      len = euclidean_norm(t.translation(k));
      total += len;
    }
    report.per_group.push_back({t.family().group(k), t.translation(k), len});
  }
  if (exact) {
    report.exact_length = exact_total;
    report.length = to_double(exact_total);
  } else {
    report.length = total;
  }
  return report;
}

CostReport evaluate_cost(const DisplacementSet& delta, const Transformation& t, NormKind norm) {
  CostReport report = evaluate_cost(t, norm);
  report.valid = check_validity(delta, t);
  return report;
}

// -------------------------------------------------- family-kind checking

FamilyCheck validate_family_kind(const GroupFamily& family) {
  const auto& groups = family.groups();
  if (family.kind() != FamilyKind::free) {
    std::vector<IndexSet> sorted = groups;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return {false, "duplicate", "the same group appears more than once"};
    }
  }
  switch (family.kind()) {
    case FamilyKind::given:
    case FamilyKind::free:
      return {};
    case FamilyKind::disjoint: {
      std::vector<int> seen(family.point_count(), 0);
      for (std::size_t k = 0; k < groups.size(); ++k) {
        for (std::size_t i : groups[k]) {
          if (seen[i]++) {
            return {false, "overlap", "index " + std::to_string(i + 1) + " lies in two groups"};
          }
        }
      }
      return {};
    }
    case FamilyKind::hierarchy: {
      const auto rebuilt = build_hierarchy_tree(family.point_count(), groups);
      if (!rebuilt) return {false, "crossing", "two groups overlap without nesting"};
      const auto& stored = family.tree();
      if (!stored) return {false, "tree-missing", "hierarchy family without a tree"};
      if (stored->parent != rebuilt->parent || stored->leaf_parent != rebuilt->leaf_parent) {
        return {false, "tree-mismatch", "tree does not match the union of leaves below each node"};
      }
      return {};
    }
  }
  return {};
}

// ------------------------------------------------------- normalisations

Transformation merge_duplicate_groups(const Transformation& t) {
  std::map<IndexSet, std::size_t> slot;
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& g = t.family().group(k);
    auto [it, inserted] = slot.try_emplace(g, groups.size());
    if (inserted) {
      groups.push_back(g);
      tau.push_back(t.translation(k));
    } else {
      tau[it->second] += t.translation(k);
    }
  }
  return Transformation(GroupFamily(t.family().point_count(), std::move(groups), t.family().kind()),
                        std::move(tau), t.dimension());
}

Transformation drop_zero_groups(const Transformation& t) {
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.translation(k).is_zero()) continue;
    groups.push_back(t.family().group(k));
    tau.push_back(t.translation(k));
  }
  return Transformation(GroupFamily(t.family().point_count(), std::move(groups), t.family().kind()),
                        std::move(tau), t.dimension());
}

}  // namespace gtrans
