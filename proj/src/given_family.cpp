#include "gtrans/given_family.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtrans/linalg.hpp"

namespace gtrans {
namespace {

bool has_all_singletons(const GroupFamily& family) {
  std::vector<bool> seen(family.point_count(), false);
  for (const auto& g : family.groups()) {
    if (g.size() == 1) seen[g.front()] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

// ------------------------------------------------------------ tree medians

MedianAnnotatedTree annotate_medians(const DisplacementSet& delta, const GroupFamily& family) {
  if (delta.dimension() != 1) throw ConstraintError("tree-median solver needs one-dimensional input");
  if (family.point_count() != delta.size()) throw MalformedInstance("family and instance disagree on n");
  std::optional<HierarchyTree> tree = family.tree();
  if (!tree) tree = build_hierarchy_tree(family.point_count(), family.groups());
  if (!tree) throw ConstraintError("given family is not a hierarchy");
  if (!has_all_singletons(family)) throw ConstraintError("given family must contain every singleton group");
  const auto roots = tree->roots();
  if (roots.size() != 1 || family.group(roots.front()).size() != delta.size()) {
    throw ConstraintError("given hierarchy must contain the root group [n]");
  }

  const std::size_t m = family.size();
  const auto children = tree->children();
  const auto order = tree->top_down_order();

  std::vector<std::vector<std::size_t>> direct_leaves(m);
  for (std::size_t i = 0; i < delta.size(); ++i) direct_leaves[*tree->leaf_parent[i]].push_back(i);

  std::vector<std::optional<Interval>> median(m);
  std::vector<Interval> scratch;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t g = *it;
    scratch.clear();
    for (std::size_t c : children[g]) scratch.push_back(*median[c]);
    for (std::size_t i : direct_leaves[g]) scratch.push_back(Interval::point(delta[i][0]));
    median[g] = interval_median(scratch);
  }

  MedianAnnotatedTree out{*tree, {}, std::vector<Scalar>(m)};
  out.median.reserve(m);
  for (auto& iv : median) out.median.push_back(std::move(*iv));
  // Each node moves the smallest amount that brings its cumulative position
  // into its own median interval (zero when it already lies inside).
  for (std::size_t g : order) {
    const Scalar inherited = tree->parent[g] ? out.cumulative[*tree->parent[g]] : Scalar(0);
    out.cumulative[g] = clamp_into(inherited, out.median[g]);
  }
  return out;
}

Transformation solve_mlgt_hierarchy_1d(const DisplacementSet& delta, const GroupFamily& family) {
  const MedianAnnotatedTree annotated = annotate_medians(delta, family);
  std::vector<Vector> tau;
  tau.reserve(family.size());
  for (std::size_t g = 0; g < family.size(); ++g) {
    const auto p = annotated.tree.parent[g];
    Scalar step = annotated.cumulative[g] - (p ? annotated.cumulative[*p] : Scalar(0));
    tau.push_back(Vector{step});
  }
  GroupFamily out_family(family.point_count(), family.groups(), FamilyKind::hierarchy, annotated.tree);
  return Transformation(std::move(out_family), std::move(tau), 1);
}

// ------------------------------------------------------------ convex solver

namespace {

std::vector<Scalar> coordinate(const DisplacementSet& delta, std::size_t k) {
  std::vector<Scalar> out;
  out.reserve(delta.size());
  for (const auto& v : delta.deltas()) out.push_back(v[k]);
  return out;
}

std::optional<ConvexResult> solve_polyhedral(const DisplacementSet& delta, const GroupFamily& family,
                                             NormKind norm) {
  const std::size_t d = delta.dimension();
  const RationalMatrix b = membership_matrix(delta.size(), family.groups());
  std::vector<Vector> tau(family.size(), Vector::zero(d));
  for (std::size_t k = 0; k < d; ++k) {
    auto x = minimize_l1(b, coordinate(delta, k));
    if (!x) return std::nullopt;
    for (std::size_t g = 0; g < family.size(); ++g) tau[g][k] = (*x)[g];
  }
  Transformation t(family, std::move(tau), d);
  const double objective = evaluate_cost(t, norm).length;
  return ConvexResult{std::move(t), objective, objective, 0.0, 0, true};
}

// Exact rational particular solution per coordinate, or nullopt.
std::optional<std::vector<Vector>> exact_feasible_point(const RationalMatrix& b, const DisplacementSet& delta,
                                                        std::size_t groups) {
  const std::size_t d = delta.dimension();
  std::vector<Vector> tau(groups, Vector::zero(d));
  for (std::size_t k = 0; k < d; ++k) {
    auto x = solve_particular(b, coordinate(delta, k));
    if (!x) return std::nullopt;
    for (std::size_t g = 0; g < groups; ++g) tau[g][k] = (*x)[g];
  }
  return tau;
}

// Rounds an ADMM iterate to rationals and removes the residual exactly.
Transformation repair(const GroupFamily& family, const RationalMatrix& b, const DisplacementSet& delta,
                      const Eigen::MatrixXd& z, double scale) {
  const std::size_t d = delta.dimension();
  const std::size_t m = family.size();
  std::vector<Vector> tau(m, Vector::zero(d));
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t k = 0; k < d; ++k) tau[g][k] = from_double(z(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(k)) * scale);
  }
  Transformation rounded(family, tau, d);
  const auto r = residuals(delta, rounded);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Scalar> rhs;
    rhs.reserve(r.size());
    for (const auto& v : r) rhs.push_back(v[k]);
    auto c = solve_particular(b, rhs);
    if (!c) throw Error("feasibility repair failed on a feasible family");
    for (std::size_t g = 0; g < m; ++g) tau[g][k] += (*c)[g];
  }
  return Transformation(family, std::move(tau), d);
}

double block_norm(const Eigen::MatrixXd& x, Eigen::Index row) { return x.row(row).norm(); }

double objective_of(const Eigen::MatrixXd& x) {
  double sum = 0.0;
  for (Eigen::Index g = 0; g < x.rows(); ++g) sum += block_norm(x, g);
  return sum;
}

std::optional<ConvexResult> solve_euclidean(const DisplacementSet& delta, const GroupFamily& family,
                                            const ConvexOptions& options) {
  using Eigen::Index;
  using Eigen::MatrixXd;
  const std::size_t n = delta.size();
  const std::size_t d = delta.dimension();
  const std::size_t m = family.size();
  const RationalMatrix b_exact = membership_matrix(n, family.groups());
  auto start = exact_feasible_point(b_exact, delta, m);
  if (!start) return std::nullopt;
  if (m == 0) {
    Transformation t(family, {}, d);
    return ConvexResult{std::move(t), 0.0, 0.0, 0.0, 0, true};
  }

  double scale = 0.0;
  for (const auto& v : delta.deltas()) {
    for (const auto& c : v.components()) scale = std::max(scale, std::abs(to_double(c)));
  }
  if (scale == 0.0) {
    Transformation t(family, std::vector<Vector>(m, Vector::zero(d)), d);
    return ConvexResult{std::move(t), 0.0, 0.0, 0.0, 0, true};
  }

  MatrixXd b = MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(m));
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t i : family.group(g)) b(static_cast<Index>(i), static_cast<Index>(g)) = 1.0;
  }
  MatrixXd target(static_cast<Index>(n), static_cast<Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) target(static_cast<Index>(i), static_cast<Index>(k)) = to_double(delta[i][k]) / scale;
  }

  // Projection onto {Z : B Z = target} is Z = P V + Z0.
  const MatrixXd b_pinv = b.completeOrthogonalDecomposition().pseudoInverse();
  const MatrixXd projector = MatrixXd::Identity(static_cast<Index>(m), static_cast<Index>(m)) - b_pinv * b;
  const MatrixXd offset = b_pinv * target;
  const MatrixXd dual_map = b_pinv.transpose();  // Y = (B^+)^T lambda satisfies B^T Y ~ lambda

  MatrixXd z = offset;
  MatrixXd u = MatrixXd::Zero(static_cast<Index>(m), static_cast<Index>(d));
  MatrixXd x = z;
  double rho = 1.0;
  constexpr double relax = 1.6;

  auto lower_bound = [&](const MatrixXd& lambda) {
    double best = -std::numeric_limits<double>::infinity();
    for (double sign : {1.0, -1.0}) {
      const MatrixXd y = dual_map * (sign * lambda);
      const MatrixXd fitted = b.transpose() * y;
      double worst = 1.0;
      for (Index g = 0; g < fitted.rows(); ++g) worst = std::max(worst, block_norm(fitted, g));
      best = std::max(best, (y.cwiseProduct(target)).sum() / worst);
    }
    return best;
  };

  double primal = objective_of(z);
  double bound = lower_bound(-rho * u);
  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    // x-update: block soft threshold.
    const MatrixXd v = z - u;
    for (Index g = 0; g < v.rows(); ++g) {
      const double len = block_norm(v, g);
      const double shrink = len > 1.0 / rho ? 1.0 - 1.0 / (rho * len) : 0.0;
      x.row(g) = shrink * v.row(g);
    }
    const MatrixXd x_hat = relax * x + (1.0 - relax) * z;
    const MatrixXd z_old = z;
    z = projector * (x_hat + u) + offset;
    u += x_hat - z;

    if (iter % 20 == 19) {
      primal = objective_of(z);
      bound = std::max(bound, lower_bound(-rho * u));
      if (primal - bound <= options.tol * (1.0 + std::abs(primal))) break;
      const double r_norm = (x - z).norm();
      const double s_norm = rho * (z - z_old).norm();
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u /= 2.0;
      } else if (s_norm > 10.0 * r_norm) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }

  Transformation t = repair(family, b_exact, delta, z, scale);
  const double objective = evaluate_cost(t, NormKind::euclidean).length;
  const double lb = bound * scale;
  ConvexResult result{std::move(t), objective, lb, objective - lb, iter, false};
  if (iter >= options.max_iterations && result.gap > options.tol * (1.0 + std::abs(objective))) {
    throw BudgetExceeded("Euclidean MLGT did not reach the requested gap within the iteration budget",
                         std::move(result));
  }
  return result;
}

}  // namespace

std::optional<ConvexResult> minimize_length_fixed_family(const DisplacementSet& delta, const GroupFamily& family,
                                                         NormKind norm, const ConvexOptions& options) {
  if (family.point_count() != delta.size()) throw MalformedInstance("family and instance disagree on n");
  if (!(options.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (norm == NormKind::manhattan || delta.dimension() == 1) return solve_polyhedral(delta, family, norm);
  return solve_euclidean(delta, family, options);
}

ConvexResult solve_mlgt_convex_report(const DisplacementSet& delta, const GroupFamily& family, NormKind norm,
                                      const ConvexOptions& options) {
  if (family.point_count() != delta.size()) throw MalformedInstance("family and instance disagree on n");
  if (!has_all_singletons(family)) throw ConstraintError("given family must contain every singleton group");
  auto result = minimize_length_fixed_family(delta, family, norm, options);
  if (!result) throw ConstraintError("no valid translation exists for the given family");
  return std::move(*result);
}

Transformation solve_mlgt_convex(const DisplacementSet& delta, const GroupFamily& family, NormKind norm,
                                 double tol) {
  ConvexOptions options;
  options.tol = tol;
  return solve_mlgt_convex_report(delta, family, norm, options).transformation;
}

}  // namespace gtrans
