#pragma once

#include <cstddef>

#include "gtrans/core.hpp"

namespace gtrans {

/// MLFT in 1D. Same output as solve_mlht_1d, whose length span(delta u {0})
/// is also a lower bound for any free family.
Transformation solve_mlft_1d(const DisplacementSet& delta);

/// Manhattan MLFT in 2D from two independent 1D solves, one per axis. Every
/// translation is axis-aligned; a point may belong to an x-group and a
/// y-group with the same index set, so duplicates are kept (kind = free).
Transformation solve_manhattan_mlft_2d(const DisplacementSet& delta);

/// The same per-axis construction in any dimension.
Transformation solve_manhattan_mlft(const DisplacementSet& delta);

/// Exact rational rotation close to angle beta: (c, s) with c^2 + s^2 = 1.
struct Rotation {
  Scalar c = 1;
  Scalar s = 0;

  static Rotation from_angle(double beta);
  /// Clockwise by the angle.
  Vector forward(const Vector& v) const;
  /// Counterclockwise by the angle.
  Vector backward(const Vector& v) const;
};

/// Rotates delta clockwise by beta, solves the Manhattan MLFT there and
/// rotates the translations back. The result is exactly valid for delta and
/// its Euclidean length equals the Manhattan length in the rotated frame.
Transformation solve_beta_manhattan_mlft(const DisplacementSet& delta, double beta);

/// sin(pi/8) + cos(pi/8).
double approximation_constant();

/// The cheaper, by Euclidean length, of the beta = 0 and beta = pi/4 solves.
Transformation solve_euclidean_mlft_approx(const DisplacementSet& delta);

/// Two sampled quarter arcs. Bottom point j is (sin phi, 1 - cos phi) with
/// phi = j (pi/2) / (samples - 1), rounded to 12 decimals, running from (0,0)
/// to (1,1). Top point j is (1,1) minus bottom point j. Indices: bottom arc
/// 0..samples-1, then the top arc in the same order.
DisplacementSet build_arc_instance(std::size_t samples_per_arc);

/// Chain of consecutive bottom-arc differences. Throws ConstraintError when
/// the input does not have the two-arc symmetry.
Transformation build_arc_chain_solution(const DisplacementSet& delta);

}  // namespace gtrans
