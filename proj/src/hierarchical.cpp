#include "gtrans/hierarchical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "gtrans/disjoint.hpp"

namespace gtrans {

Transformation solve_mcht(const DisplacementSet& delta) {
  const Transformation t = solve_disjoint(delta);
  return Transformation(t.family().with_kind(FamilyKind::hierarchy), t.tau(), t.dimension());
}

Scalar span_with_origin(const DisplacementSet& delta) {
  if (delta.dimension() != 1) throw ConstraintError("span needs one-dimensional input");
  Scalar lo = 0, hi = 0;
  for (const auto& v : delta.deltas()) {
    if (v[0] < lo) lo = v[0];
    if (v[0] > hi) hi = v[0];
  }
  return hi - lo;
}

Transformation solve_mlht_1d(const DisplacementSet& delta) {
  if (delta.dimension() != 1) throw ConstraintError("solve_mlht_1d needs one-dimensional input");
  const std::size_t n = delta.size();

  // Indices sorted by |delta| with ties broken by index; each sign becomes a
  // chain whose k-th link holds everything at least as far out as the k-th
  // distinct value.
  std::vector<std::size_t> positive, negative;
  for (std::size_t i = 0; i < n; ++i) {
    if (delta[i][0] > 0) positive.push_back(i);
    if (delta[i][0] < 0) negative.push_back(i);
  }
  auto by_magnitude = [&](std::size_t a, std::size_t b) { return abs(delta[a][0]) < abs(delta[b][0]); };
  std::stable_sort(positive.begin(), positive.end(), by_magnitude);
  std::stable_sort(negative.begin(), negative.end(), by_magnitude);

  HierarchyTree tree;
  tree.leaf_parent.assign(n, std::nullopt);
  std::vector<Vector> tau;
  for (const auto* chain : {&positive, &negative}) {
    std::optional<std::size_t> link;
    Scalar reached = 0;
    for (std::size_t i : *chain) {
      if (delta[i][0] != reached) {
        tree.parent.push_back(link);
        tau.push_back(Vector{delta[i][0] - reached});
        link = tree.parent.size() - 1;
        reached = delta[i][0];
      }
      tree.leaf_parent[i] = link;
    }
  }
  return Transformation(GroupFamily::from_tree(n, std::move(tree)), std::move(tau), 1);
}

// ------------------------------------------------------------ Steiner trees

namespace {

double segment_length(const Vector& a, const Vector& b) { return euclidean_norm(b - a); }

void require_planar(const DisplacementSet& delta) {
  if (delta.dimension() != 2) throw ConstraintError("Steiner correspondence needs two-dimensional input");
}

}  // namespace

double tree_length(const SteinerTree& y) {
  double total = 0.0;
  for (const auto& [a, b] : y.edges) total += segment_length(y.position(a), y.position(b));
  return total;
}

SteinerTree transformation_to_steiner(const DisplacementSet& delta, const Transformation& t) {
  require_planar(delta);
  if (!check_validity(delta, t)) throw ConstraintError("transformation is not valid for the instance");
  std::optional<HierarchyTree> tree = t.family().tree();
  if (!tree) tree = build_hierarchy_tree(t.family().point_count(), t.family().groups());
  if (!tree) throw ConstraintError("transformation family is not a hierarchy");

  const std::size_t n = delta.size();
  SteinerTree y;
  y.terminals.push_back(Vector::zero(2));
  for (const auto& v : delta.deltas()) y.terminals.push_back(v);
  const std::size_t first_steiner = y.terminals.size();

  // Groups without a parent hang from the origin, which plays the role of a
  // root group [n] with zero translation.
  y.steiner_points.assign(t.size(), Vector::zero(2));
  auto node_of_group = [&](std::optional<std::size_t> g) { return g ? first_steiner + *g : std::size_t{0}; };
  for (std::size_t g : tree->top_down_order()) {
    const auto p = tree->parent[g];
    y.steiner_points[g] = (p ? y.steiner_points[*p] : Vector::zero(2)) + t.translation(g);
    y.edges.emplace_back(node_of_group(p), first_steiner + g);
  }
  for (std::size_t i = 0; i < n; ++i) y.edges.emplace_back(node_of_group(tree->leaf_parent[i]), i + 1);
  y.total_length = tree_length(y);
  return y;
}

Transformation steiner_to_transformation(const DisplacementSet& delta, const SteinerTree& y) {
  require_planar(delta);
  const std::size_t n = delta.size();
  if (y.terminals.size() != n + 1) throw ConstraintError("tree must have n + 1 terminals");
  if (!y.terminals[0].is_zero()) throw ConstraintError("terminal 0 must be the origin");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y.terminals[i + 1] == delta[i])) throw ConstraintError("terminal positions do not match the instance");
  }
  const std::size_t nodes = y.node_count();
  std::vector<std::vector<std::size_t>> adjacent(nodes);
  for (const auto& [a, b] : y.edges) {
    if (a >= nodes || b >= nodes) throw ConstraintError("edge refers to a missing node");
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }

  // Breadth-first spanning tree from the origin; surplus edges are ignored,
  // which can only shorten the tree.
  std::vector<std::optional<std::size_t>> parent(nodes);
  std::vector<bool> seen(nodes, false);
  std::vector<std::size_t> order{0};
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t next : adjacent[order[head]]) {
      if (seen[next]) continue;
      seen[next] = true;
      parent[next] = order[head];
      order.push_back(next);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (!seen[i]) throw ConstraintError("Steiner tree does not span all terminals");
  }

  std::vector<IndexSet> below(nodes);
  for (std::size_t i = 0; i < n; ++i) below[i + 1].push_back(i);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    if (!parent[v]) continue;
    auto& up = below[*parent[v]];
    up.insert(up.end(), below[v].begin(), below[v].end());
  }

  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t v : order) {
    if (!parent[v] || below[v].empty()) continue;
    Vector step = y.position(v) - y.position(*parent[v]);
    groups.push_back(below[v]);
    tau.push_back(std::move(step));
  }
  Transformation raw(GroupFamily(n, std::move(groups), FamilyKind::free), std::move(tau), 2);
  Transformation merged = drop_zero_groups(merge_duplicate_groups(raw));
  return Transformation(merged.family().with_kind(FamilyKind::hierarchy), merged.tau(), 2);
}

// -------------------------------------------------- exact tiny MLHT in 2D

namespace detail {

std::vector<Topology> full_topologies(std::size_t terminals) {
  if (terminals < 3) throw std::invalid_argument("full topologies need at least three terminals");
  const std::size_t n = terminals;
  std::vector<Topology> current{{{0, n}, {1, n}, {2, n}}};
  for (std::size_t k = 3; k < n; ++k) {
    const std::size_t steiner = n + k - 2;
    std::vector<Topology> next;
    next.reserve(current.size() * (2 * k - 3));
    for (const auto& topo : current) {
      for (std::size_t e = 0; e < topo.size(); ++e) {
        Topology t = topo;
        const auto [a, b] = t[e];
        t[e] = {a, steiner};
        t.emplace_back(steiner, b);
        t.emplace_back(k, steiner);
        next.push_back(std::move(t));
      }
    }
    current = std::move(next);
  }
  return current;
}

PlacedTopology place_steiner_points(const std::vector<std::array<double, 2>>& terminals,
                                    const Topology& topology, double tol) {
  using Eigen::Index;
  const std::size_t t_count = terminals.size();
  const std::size_t s_count = t_count - 2;
  double scale = 0.0;
  for (const auto& p : terminals) {
    for (const auto& q : terminals) scale = std::max(scale, std::hypot(p[0] - q[0], p[1] - q[1]));
  }
  if (scale == 0.0) scale = 1.0;

  std::vector<std::array<double, 2>> pos(terminals);
  pos.resize(t_count + s_count, {0.0, 0.0});

  auto edge_len = [&](std::size_t a, std::size_t b) {
    return std::hypot(pos[a][0] - pos[b][0], pos[a][1] - pos[b][1]);
  };

  // Majorise-minimise on sum sqrt(|e|^2 + eta^2): every step solves the
  // weighted Laplacian system for all Steiner points at once, i.e. moves each
  // point to the weighted mean of its neighbours. eta shrinks in stages.
  auto relocate = [&](double eta, bool unweighted) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Index>(s_count), static_cast<Index>(s_count));
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Index>(s_count), 2);
    for (const auto& [a, b] : topology) {
      const double w = unweighted ? 1.0 : 1.0 / std::sqrt(edge_len(a, b) * edge_len(a, b) + eta * eta);
      const bool a_s = a >= t_count, b_s = b >= t_count;
      if (a_s) lap(static_cast<Index>(a - t_count), static_cast<Index>(a - t_count)) += w;
      if (b_s) lap(static_cast<Index>(b - t_count), static_cast<Index>(b - t_count)) += w;
      if (a_s && b_s) {
        lap(static_cast<Index>(a - t_count), static_cast<Index>(b - t_count)) -= w;
        lap(static_cast<Index>(b - t_count), static_cast<Index>(a - t_count)) -= w;
      } else if (a_s) {
        rhs(static_cast<Index>(a - t_count), 0) += w * pos[b][0];
        rhs(static_cast<Index>(a - t_count), 1) += w * pos[b][1];
      } else if (b_s) {
        rhs(static_cast<Index>(b - t_count), 0) += w * pos[a][0];
        rhs(static_cast<Index>(b - t_count), 1) += w * pos[a][1];
      }
    }
    const Eigen::MatrixXd next = lap.llt().solve(rhs);
    double moved = 0.0;
    for (std::size_t s = 0; s < s_count; ++s) {
      auto& p = pos[t_count + s];
      const double nx = next(static_cast<Index>(s), 0), ny = next(static_cast<Index>(s), 1);
      moved = std::max(moved, std::hypot(nx - p[0], ny - p[1]));
      p = {nx, ny};
    }
    return moved;
  };

  relocate(0.0, true);
  const double final_eta = std::max(tol, 1e-14) * scale;
  for (double eta = 1e-2 * scale;; eta = std::max(eta * 1e-2, final_eta)) {
    const double stop = std::max(eta, final_eta);
    for (int iter = 0; iter < 20000; ++iter) {
      if (relocate(eta, false) < stop) break;
    }
    if (eta <= final_eta) break;
  }

  PlacedTopology out;
  out.steiner.assign(pos.begin() + static_cast<std::ptrdiff_t>(t_count), pos.end());
  for (const auto& [a, b] : topology) out.length += edge_len(a, b);
  return out;
}

}  // namespace detail

Transformation solve_mlht_2d_exact_tiny(const DisplacementSet& delta, double tol) {
  require_planar(delta);
  const std::size_t n = delta.size();
  if (n > kTinySteinerMaxPoints) {
    throw SizeCapError("exact planar MLHT is capped at " + std::to_string(kTinySteinerMaxPoints) + " points");
  }
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");

  SteinerTree y;
  y.terminals.push_back(Vector::zero(2));
  for (const auto& v : delta.deltas()) y.terminals.push_back(v);

  // Distinct positions; coincident terminals hang off their representative
  // through zero-length edges.
  std::map<Vector, std::size_t> first_at;
  std::vector<std::size_t> representative;  // distinct point -> terminal id
  for (std::size_t id = 0; id < y.terminals.size(); ++id) {
    auto [it, inserted] = first_at.try_emplace(y.terminals[id], id);
    if (inserted) {
      representative.push_back(id);
    } else {
      y.edges.emplace_back(it->second, id);
    }
  }
  const std::size_t distinct = representative.size();
  if (distinct == 2) {
    y.edges.emplace_back(representative[0], representative[1]);
  } else if (distinct >= 3) {
    std::vector<std::array<double, 2>> coords;
    for (std::size_t id : representative) {
      coords.push_back({to_double(y.terminals[id][0]), to_double(y.terminals[id][1])});
    }
    const auto topologies = detail::full_topologies(distinct);
    std::size_t best = 0;
    detail::PlacedTopology best_placed;
    best_placed.length = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < topologies.size(); ++k) {
      auto placed = detail::place_steiner_points(coords, topologies[k], tol);
      if (placed.length < best_placed.length) {
        best_placed = std::move(placed);
        best = k;
      }
    }
    // Degenerate Steiner points sit on a terminal or on each other; snapping
    // them makes the conversion drop the zero-length edges exactly.
    double scale = 0.0;
    for (const auto& p : coords) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
    const double snap = std::max(1e-6, 100 * tol) * scale;
    const std::size_t first_steiner = y.terminals.size();
    std::vector<std::array<double, 2>> placed;
    for (const auto& p : best_placed.steiner) {
      std::optional<Vector> exact;
      for (std::size_t r = 0; r < distinct && !exact; ++r) {
        if (std::hypot(p[0] - coords[r][0], p[1] - coords[r][1]) <= snap) exact = y.terminals[representative[r]];
      }
      for (std::size_t q = 0; q < placed.size() && !exact; ++q) {
        if (std::hypot(p[0] - placed[q][0], p[1] - placed[q][1]) <= snap) exact = y.steiner_points[q];
      }
      placed.push_back(p);
      y.steiner_points.push_back(exact ? *exact : Vector{from_double(p[0]), from_double(p[1])});
    }
    auto map_node = [&](std::size_t node) {
      return node < distinct ? representative[node] : first_steiner + (node - distinct);
    };
    for (const auto& [a, b] : topologies[best]) y.edges.emplace_back(map_node(a), map_node(b));
  }
  y.total_length = tree_length(y);
  return steiner_to_transformation(delta, y);
}

}  // namespace gtrans
