#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "gtrans/core.hpp"

namespace gtrans {

/// MCHT. A disjoint family is hierarchical and no hierarchy needs fewer
/// groups, so this is solve_disjoint re-tagged as a hierarchy.
Transformation solve_mcht(const DisplacementSet& delta);

/// MLHT (and MLFT) in 1D: nested suffix chains over the sorted positive and
/// the descending negative displacements. Total length is exactly
/// max(delta u {0}) - min(delta u {0}). One group per distinct nonzero value.
Transformation solve_mlht_1d(const DisplacementSet& delta);

/// span(delta u {0}) for one-dimensional input.
Scalar span_with_origin(const DisplacementSet& delta);

/// A tree in the plane. Node ids: terminals first, then Steiner points.
/// terminals[0] is the origin and terminals[i + 1] is delta_i.
struct SteinerTree {
  std::vector<Vector> terminals;
  std::vector<Vector> steiner_points;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double total_length = 0.0;

  std::size_t node_count() const { return terminals.size() + steiner_points.size(); }
  const Vector& position(std::size_t node) const {
    return node < terminals.size() ? terminals[node] : steiner_points[node - terminals.size()];
  }
};

double tree_length(const SteinerTree& y);

/// Places each group at p(v) = p(parent) + tau(v), starting from the origin.
/// Requires a valid hierarchical transformation of a 2D instance.
SteinerTree transformation_to_steiner(const DisplacementSet& delta, const Transformation& t);

/// Roots the tree at the origin and emits one group per non-root node: the
/// indices below it, translated by the node's offset from its parent. Equal
/// groups are merged and zero translations dropped, so the length never
/// exceeds the tree's. Throws ConstraintError if the tree does not span.
Transformation steiner_to_transformation(const DisplacementSet& delta, const SteinerTree& y);

inline constexpr std::size_t kTinySteinerMaxPoints = 6;

/// Exact MLHT in the plane for n <= 6 through the Steiner correspondence:
/// every full topology on the distinct terminals is optimised and the
/// shortest one is converted back. Throws SizeCapError for larger n.
Transformation solve_mlht_2d_exact_tiny(const DisplacementSet& delta, double tol = 1e-9);

namespace detail {

using Topology = std::vector<std::pair<std::size_t, std::size_t>>;

/// All (2N-5)!! full Steiner topologies on N >= 3 terminals. Terminals are
/// nodes 0..N-1, Steiner points N..2N-3.
std::vector<Topology> full_topologies(std::size_t terminals);

struct PlacedTopology {
  std::vector<std::array<double, 2>> steiner;
  double length = 0.0;
};

/// Shortest placement of the Steiner points of one topology.
PlacedTopology place_steiner_points(const std::vector<std::array<double, 2>>& terminals,
                                    const Topology& topology, double tol);

}  // namespace detail

}  // namespace gtrans
