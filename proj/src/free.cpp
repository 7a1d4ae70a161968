#include "gtrans/free.hpp"

#include <cmath>
#include <numbers>

#include "gtrans/hierarchical.hpp"

namespace gtrans {

Transformation solve_mlft_1d(const DisplacementSet& delta) {
  const Transformation t = solve_mlht_1d(delta);
  return Transformation(t.family().with_kind(FamilyKind::free), t.tau(), 1);
}

namespace {

void require_planar(const DisplacementSet& delta, const char* what) {
  if (delta.dimension() != 2) throw ConstraintError(std::string(what) + " needs two-dimensional input");
}

DisplacementSet axis(const DisplacementSet& delta, std::size_t k) {
  std::vector<Vector> out;
  out.reserve(delta.size());
  for (const auto& v : delta.deltas()) out.push_back(Vector{v[k]});
  return DisplacementSet(std::move(out));
}

}  // namespace

Transformation solve_manhattan_mlft_2d(const DisplacementSet& delta) {
  require_planar(delta, "solve_manhattan_mlft_2d");
  return solve_manhattan_mlft(delta);
}

Transformation solve_manhattan_mlft(const DisplacementSet& delta) {
  const std::size_t d = delta.dimension();
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t k = 0; k < d; ++k) {
    const Transformation part = solve_mlht_1d(axis(delta, k));
    for (std::size_t g = 0; g < part.size(); ++g) {
      Vector step = Vector::zero(d);
      step[k] = part.translation(g)[0];
      groups.push_back(part.family().group(g));
      tau.push_back(std::move(step));
    }
  }
  return Transformation(GroupFamily(delta.size(), std::move(groups), FamilyKind::free), std::move(tau), d);
}

Rotation Rotation::from_angle(double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("rotation angle must be finite");
  const double quarter = beta / (std::numbers::pi / 2);
  const double nearest = std::round(quarter);
  if (std::abs(quarter - nearest) < 1e-12) {
    switch (((static_cast<long long>(nearest) % 4) + 4) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }
  // Rational half-angle tangent keeps c^2 + s^2 = 1 exactly.
  const double reduced = std::remainder(beta, 2 * std::numbers::pi);
  const Scalar t = round_to_decimal(std::tan(reduced / 2), 15);
  const Scalar denom = 1 + t * t;
  return {Scalar((1 - t * t) / denom), Scalar(2 * t / denom)};
}

Vector Rotation::forward(const Vector& v) const {
  return Vector{c * v[0] + s * v[1], c * v[1] - s * v[0]};
}

Vector Rotation::backward(const Vector& v) const {
  return Vector{c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

Transformation solve_beta_manhattan_mlft(const DisplacementSet& delta, double beta) {
  require_planar(delta, "solve_beta_manhattan_mlft");
  const Rotation r = Rotation::from_angle(beta);
  if (r.c == 1) return solve_manhattan_mlft_2d(delta);
  std::vector<Vector> rotated;
  rotated.reserve(delta.size());
  for (const auto& v : delta.deltas()) rotated.push_back(r.forward(v));
  const Transformation inner = solve_manhattan_mlft_2d(DisplacementSet(std::move(rotated)));
  std::vector<Vector> tau;
  tau.reserve(inner.size());
  for (const auto& step : inner.tau()) tau.push_back(r.backward(step));
  return Transformation(inner.family(), std::move(tau), 2);
}

double approximation_constant() { return std::sin(std::numbers::pi / 8) + std::cos(std::numbers::pi / 8); }

Transformation solve_euclidean_mlft_approx(const DisplacementSet& delta) {
  require_planar(delta, "solve_euclidean_mlft_approx");
  Transformation straight = solve_beta_manhattan_mlft(delta, 0.0);
  Transformation diagonal = solve_beta_manhattan_mlft(delta, std::numbers::pi / 4);
  const double a = evaluate_cost(straight, NormKind::euclidean).length;
  const double b = evaluate_cost(diagonal, NormKind::euclidean).length;
  return b < a ? diagonal : straight;
}

DisplacementSet build_arc_instance(std::size_t samples_per_arc) {
  if (samples_per_arc < 2) throw ConstraintError("need at least two samples per arc");
  const std::size_t k = samples_per_arc;
  std::vector<Vector> bottom;
  bottom.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (j == 0) {
      bottom.push_back(Vector{0, 0});
    } else if (j + 1 == k) {
      bottom.push_back(Vector{1, 1});
    } else {
      const double phi = static_cast<double>(j) * (std::numbers::pi / 2) / static_cast<double>(k - 1);
      bottom.push_back(Vector{round_to_decimal(std::sin(phi), 12), round_to_decimal(1 - std::cos(phi), 12)});
    }
  }
  std::vector<Vector> all = bottom;
  const Vector corner{1, 1};
  for (const auto& p : bottom) all.push_back(corner - p);
  return DisplacementSet(std::move(all));
}

Transformation build_arc_chain_solution(const DisplacementSet& delta) {
  require_planar(delta, "build_arc_chain_solution");
  const std::size_t n = delta.size();
  if (n < 4 || n % 2 != 0) throw ConstraintError("arc instance must hold two equal arcs");
  const std::size_t k = n / 2;
  const Vector corner{1, 1};
  for (std::size_t j = 0; j < k; ++j) {
    if (!(delta[j] + delta[k + j] == corner)) throw ConstraintError("arc instance is not symmetric about (1/2, 1/2)");
  }

  // S_l moves the bottom points from l on and the top points before l by the
  // l-th chord. A bottom point j then gets chords 1..j, a top point j gets
  // chords j+1..k-1.
  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t l = 1; l < k; ++l) {
    Vector chord = delta[l] - delta[l - 1];
    if (chord.is_zero()) continue;
    IndexSet members;
    for (std::size_t j = 0; j < l; ++j) members.push_back(k + j);
    for (std::size_t j = l; j < k; ++j) members.push_back(j);
    groups.push_back(std::move(members));
    tau.push_back(std::move(chord));
  }
  // Offsets when the arc does not start at the origin or end at (1,1).
  if (!delta[0].is_zero()) {
    IndexSet bottom(k);
    for (std::size_t j = 0; j < k; ++j) bottom[j] = j;
    groups.push_back(std::move(bottom));
    tau.push_back(delta[0]);
  }
  const Vector top_offset = corner - delta[k - 1];
  if (!top_offset.is_zero()) {
    IndexSet top(k);
    for (std::size_t j = 0; j < k; ++j) top[j] = k + j;
    groups.push_back(std::move(top));
    tau.push_back(top_offset);
  }
  return Transformation(GroupFamily(n, std::move(groups), FamilyKind::free), std::move(tau), 2);
}

}  // namespace gtrans
