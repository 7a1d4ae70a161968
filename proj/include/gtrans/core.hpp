#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtrans/errors.hpp"
#include "gtrans/scalar.hpp"

namespace gtrans {

/// Fixed-dimension vector of exact rationals.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dimension) : components_(dimension) {}
  explicit Vector(std::vector<Scalar> components) : components_(std::move(components)) {}
  Vector(std::initializer_list<Scalar> components) : components_(components) {}

  static Vector zero(std::size_t dimension) { return Vector(dimension); }

  std::size_t dimension() const { return components_.size(); }
  const Scalar& operator[](std::size_t k) const { return components_[k]; }
  Scalar& operator[](std::size_t k) { return components_[k]; }
  const std::vector<Scalar>& components() const { return components_; }

  bool is_zero() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(const Scalar& factor);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }
  friend Vector operator-(Vector a) { return a *= Scalar(-1); }

  friend bool operator==(const Vector& a, const Vector& b) { return a.components_ == b.components_; }
  /// Lexicographic order.
  friend bool operator<(const Vector& a, const Vector& b) { return a.components_ < b.components_; }

 private:
  std::vector<Scalar> components_;
};

std::string to_string(const Vector& v);

/// Input displacements delta_i = b_i - a_i, one per point.
class DisplacementSet {
 public:
  /// Throws MalformedInstance when empty or when dimensions disagree.
  explicit DisplacementSet(std::vector<Vector> deltas);

  /// Computes delta_i = b_i - a_i.
  static DisplacementSet from_points(std::span<const Vector> a, std::span<const Vector> b);

  std::size_t size() const { return deltas_.size(); }
  std::size_t dimension() const { return deltas_.front().dimension(); }
  const Vector& operator[](std::size_t i) const { return deltas_[i]; }
  const std::vector<Vector>& deltas() const { return deltas_; }

 private:
  std::vector<Vector> deltas_;
};

/// Sorted, 0-based point indices.
using IndexSet = std::vector<std::size_t>;

enum class FamilyKind { given, disjoint, hierarchy, free };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& text);

/// Rooted-forest form of a laminar family. Groups are nodes; point index i
/// hangs below `leaf_parent[i]`, the smallest group containing it.
struct HierarchyTree {
  std::vector<std::optional<std::size_t>> parent;
  std::vector<std::optional<std::size_t>> leaf_parent;

  std::vector<std::vector<std::size_t>> children() const;
  std::vector<std::size_t> roots() const;
  /// Groups ordered so that every parent precedes its children.
  std::vector<std::size_t> top_down_order() const;
};

/// A family of index sets with a constraint tag. Construction only normalizes
/// (sorts indices) and rejects empty groups and out-of-range indices; the
/// kind-specific invariants are checked by validate_family_kind. Hierarchy
/// families carry a tree whenever their groups are laminar.
class GroupFamily {
 public:
  GroupFamily(std::size_t n, std::vector<IndexSet> groups, FamilyKind kind);
  GroupFamily(std::size_t n, std::vector<IndexSet> groups, FamilyKind kind, HierarchyTree tree);

  /// Expands a tree into explicit index sets (kind = hierarchy).
  static GroupFamily from_tree(std::size_t n, HierarchyTree tree);

  std::size_t point_count() const { return n_; }
  std::size_t size() const { return groups_.size(); }
  const std::vector<IndexSet>& groups() const { return groups_; }
  const IndexSet& group(std::size_t k) const { return groups_[k]; }
  FamilyKind kind() const { return kind_; }
  const std::optional<HierarchyTree>& tree() const { return tree_; }

  GroupFamily with_kind(FamilyKind kind) const;

 private:
  std::size_t n_;
  std::vector<IndexSet> groups_;
  FamilyKind kind_;
  std::optional<HierarchyTree> tree_;
};

/// Builds the rooted-forest form of a laminar family; nullopt when two groups
/// cross or repeat.
std::optional<HierarchyTree> build_hierarchy_tree(std::size_t n, const std::vector<IndexSet>& groups);

bool is_laminar(std::size_t n, const std::vector<IndexSet>& groups);

/// A family with one translation per group.
class Transformation {
 public:
  /// Throws MalformedInstance when |tau| != |groups| or dimensions disagree.
  Transformation(GroupFamily family, std::vector<Vector> tau, std::size_t dimension);

  static Transformation empty(std::size_t n, std::size_t dimension, FamilyKind kind);

  const GroupFamily& family() const { return family_; }
  const std::vector<Vector>& tau() const { return tau_; }
  const Vector& translation(std::size_t k) const { return tau_[k]; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return tau_.size(); }

 private:
  GroupFamily family_;
  std::vector<Vector> tau_;
  std::size_t dimension_;
};

enum class NormKind { euclidean, manhattan };

std::string to_string(NormKind norm);
NormKind parse_norm(const std::string& text);

struct GroupCost {
  IndexSet group;
  Vector translation;
  double length;
};

struct CostReport {
  std::size_t cardinality = 0;
  NormKind norm = NormKind::euclidean;
  double length = 0.0;
  /// Set for Manhattan norms and for d = 1.
  std::optional<Scalar> exact_length;
  /// Set only when the report was computed against an instance.
  std::optional<bool> valid;
  std::vector<GroupCost> per_group;
};

/// True iff sum over groups containing i of tau equals delta_i for every i.
bool check_validity(const DisplacementSet& delta, const Transformation& t);

/// Per-index residual delta_i - sum tau, exact.
std::vector<Vector> residuals(const DisplacementSet& delta, const Transformation& t);

CostReport evaluate_cost(const Transformation& t, NormKind norm);
CostReport evaluate_cost(const DisplacementSet& delta, const Transformation& t, NormKind norm);

double euclidean_norm(const Vector& v);
Scalar manhattan_norm(const Vector& v);
double norm_length(const Vector& v, NormKind norm);

struct FamilyCheck {
  bool ok = true;
  std::string code;     // "crossing", "overlap", "duplicate", "tree-mismatch", ...
  std::string message;
  explicit operator bool() const { return ok; }
};

FamilyCheck validate_family_kind(const GroupFamily& family);

/// Sums the translations of identical index sets into one group.
Transformation merge_duplicate_groups(const Transformation& t);

/// Drops groups whose translation is the zero vector.
Transformation drop_zero_groups(const Transformation& t);

}  // namespace gtrans
