#pragma once

#include "gtrans/core.hpp"

namespace gtrans {

/// MCDT and MLDT at once: one group per distinct nonzero displacement, groups
/// ordered lexicographically by their vector. Zero displacements join no group.
Transformation solve_disjoint(const DisplacementSet& delta);

}  // namespace gtrans
