#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gtrans/core.hpp"
#include "gtrans/given_family.hpp"

namespace gtrans {

/// Wall-clock limit for the exhaustive searches. Running past it raises
/// OracleTimeout instead of returning a truncated answer.
struct OracleBudget {
  double seconds = 600.0;
};

class OracleTimeout : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kOracleMlftMaxPoints = 4;
inline constexpr std::size_t kOracleMcftMaxPoints = 4;
inline constexpr std::size_t kOracleBinaryMaxPoints = 8;
inline constexpr std::size_t kOracleBinaryMaxDimension = 10;
inline constexpr std::size_t kOracleLaminarMaxPoints = 5;
inline constexpr std::size_t kOracleDisjointMaxPoints = 8;

/// Nonempty subsets of [n] as bitmasks, by popcount and then
/// lexicographically by their sorted index lists.
std::vector<unsigned> ordered_subsets(std::size_t n);

IndexSet mask_to_set(unsigned mask);

struct MlftOracleResult {
  Transformation transformation;
  double length = 0.0;
  /// Smallest certified lower bound among the optimal family's solves.
  double lower_bound = 0.0;
  std::size_t families_tried = 0;
};

/// Minimum length over every family of at most max_groups nonempty subsets.
/// Adding a group never hurts (it may get a zero translation), so only
/// families of exactly min(max_groups, 2^n - 1) subsets are solved.
MlftOracleResult oracle_mlft_report(const DisplacementSet& delta, std::size_t max_groups, double tol = 1e-9,
                                    NormKind norm = NormKind::euclidean, OracleBudget budget = {});

Transformation oracle_mlft(const DisplacementSet& delta, std::size_t max_groups, double tol = 1e-9);

struct McftOracleResult {
  std::size_t cardinality = 0;
  Transformation transformation;
};

/// Minimum number of groups. With monotone = true every translation must be
/// nonnegative; 0/1 instances then use a branch and bound over partitions of
/// each support (translations restricted to 0/1 vectors), n <= 8, d <= 10.
/// Everything else enumerates families by size, n <= 4.
McftOracleResult oracle_mcft_report(const DisplacementSet& delta, bool monotone, OracleBudget budget = {});

std::size_t oracle_mcft(const DisplacementSet& delta, bool monotone);

/// Minimum cardinality over laminar families with a valid translation, n <= 5.
McftOracleResult oracle_laminar_mcht_report(const DisplacementSet& delta, OracleBudget budget = {});

std::size_t oracle_laminar_mcht(const DisplacementSet& delta);

/// Calls visit(block_of) for every set partition of [n]; block_of[i] is the
/// block of i, blocks numbered in order of first appearance.
void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit);

struct DisjointOracleResult {
  std::size_t min_cardinality = 0;
  double min_length = 0.0;
  std::size_t valid_partitions = 0;
};

/// Best cardinality and best length over all valid disjoint transformations,
/// found by enumerating every set partition (zero-translation blocks dropped).
DisjointOracleResult oracle_disjoint(const DisplacementSet& delta, NormKind norm);

/// 1D MLGT for a laminar family by brute force: every group not pinned by a
/// point directly below it tries each cumulative position in {0} u delta.
/// nullopt when no valid translation exists.
std::optional<Transformation> oracle_mlgt_1d_grid(const DisplacementSet& delta, const GroupFamily& family);

}  // namespace gtrans
