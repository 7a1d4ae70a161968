#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gtrans/core.hpp"

namespace gtrans {

/// Simple undirected graph on vertices 0..vertex_count-1.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws ConstraintError on self-loops, repeated edges or bad endpoints.
  void validate() const;
};

/// Unit-vector layout of the gadget: vertex v owns coordinates 2v and 2v+1,
/// edge e owns 2|V| + 4e .. 2|V| + 4e + 3.
struct GadgetLayout {
  std::size_t vertex_count;
  std::size_t edge_count;

  std::size_t dimension() const { return 2 * vertex_count + 4 * edge_count; }
  /// which = 1 or 2.
  std::size_t vertex_coord(std::size_t v, int which) const { return 2 * v + static_cast<std::size_t>(which - 1); }
  /// which = 1..4.
  std::size_t edge_coord(std::size_t e, int which) const {
    return 2 * vertex_count + 4 * e + static_cast<std::size_t>(which - 1);
  }
};

/// |V| vertex vectors x1(v) + x2(v), then five vectors per edge in input
/// order. Edge (u, v) contributes
///   x1(u) + x1(e) + x2(e),  x2(v) + x2(e) + x3(e),  x2(u) + x3(e) + x4(e),
///   x1(v) + x4(e) + x1(e),  x1(e) + x2(e) + x3(e) + x4(e).
DisplacementSet encode_vertex_cover(const Graph& g);

/// Monotone solution of the gadget with |V| + 4|E| + |cover| groups. Throws
/// ConstraintError when `cover` misses an edge.
Transformation cover_to_solution(const Graph& g, const std::vector<std::size_t>& cover);

/// A minimum vertex cover by exhaustive search (vertex_count <= 24).
std::vector<std::size_t> brute_force_vertex_cover(const Graph& g);

/// All translation components nonnegative.
bool is_monotone(const Transformation& t);

struct EncodingParams {
  std::size_t n = 0;
  BigInt M = 1;
  /// A = 3 (n+1)!^2 M.
  BigInt A;
  std::size_t d = 0;
  /// (n+1)!^2 M, the largest digit magnitude of a well-behaved number.
  BigInt digit_bound;

  static EncodingParams make(std::size_t n, std::size_t d, const BigInt& M);
};

/// f(v) = sum_j v_j A^j over the coordinates of v.
BigInt encode_vector(const Vector& v, const EncodingParams& params);

/// Base-A encoding of every displacement. M is the largest absolute
/// component (at least 1). Throws ConstraintError on non-integer components.
std::pair<DisplacementSet, EncodingParams> reduce_dimension(const DisplacementSet& delta);

/// Inverse of the encoding for x with D x integral and signed digits of
/// magnitude at most digit_bound. Throws DecodeError otherwise.
Vector lift_translation(const Scalar& x, const EncodingParams& params, const BigInt& D);

/// Lifts every translation of a 1D transformation back to params.d dimensions.
Transformation lift_transformation(const Transformation& t, const EncodingParams& params, const BigInt& D);

}  // namespace gtrans
