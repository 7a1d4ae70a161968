#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gtrans/core.hpp"
#include "gtrans/interval_median.hpp"

namespace gtrans {

/// Per-group interval medians of a 1D hierarchy, plus the cumulative
/// translation (sum over the group and its ancestors) picked top-down.
struct MedianAnnotatedTree {
  HierarchyTree tree;
  std::vector<Interval> median;
  std::vector<Scalar> cumulative;
};

/// Bottom-up medians and top-down clamping. Requires d = 1, a laminar family
/// holding every singleton and the root group [n]; ConstraintError otherwise.
MedianAnnotatedTree annotate_medians(const DisplacementSet& delta, const GroupFamily& family);

/// Exact MLGT for a 1D hierarchy in time linear in the tree size.
Transformation solve_mlgt_hierarchy_1d(const DisplacementSet& delta, const GroupFamily& family);

struct ConvexOptions {
  double tol = 1e-8;
  std::size_t max_iterations = 100000;
};

struct ConvexResult {
  Transformation transformation;
  double objective = 0.0;
  /// Weak-duality lower bound on the optimum.
  double lower_bound = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  /// True when the optimum was certified exactly (polyhedral norms).
  bool exact = false;
};

/// Thrown when the Euclidean iteration does not reach the requested gap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, ConvexResult best) : Error(what), best_(std::move(best)) {}
  const ConvexResult& best() const { return best_; }

 private:
  ConvexResult best_;
};

/// Minimum total length over all tau valid for exactly the groups of
/// `family` (no singleton augmentation). nullopt when no valid tau exists.
/// d = 1 and the Manhattan norm are solved exactly as linear programs; the
/// Euclidean norm by ADMM with a certified duality gap, followed by an exact
/// feasibility repair.
std::optional<ConvexResult> minimize_length_fixed_family(const DisplacementSet& delta, const GroupFamily& family,
                                                         NormKind norm, const ConvexOptions& options = {});

/// MLGT for an arbitrary given family containing all singletons.
ConvexResult solve_mlgt_convex_report(const DisplacementSet& delta, const GroupFamily& family, NormKind norm,
                                      const ConvexOptions& options = {});

Transformation solve_mlgt_convex(const DisplacementSet& delta, const GroupFamily& family, NormKind norm,
                                 double tol = 1e-8);

}  // namespace gtrans
