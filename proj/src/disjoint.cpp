#include "gtrans/disjoint.hpp"

#include <algorithm>
#include <numeric>

namespace gtrans {

Transformation solve_disjoint(const DisplacementSet& delta) {
  std::vector<std::size_t> order(delta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return delta[a] < delta[b]; });

  std::vector<IndexSet> groups;
  std::vector<Vector> tau;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k;
    IndexSet members;
    while (end < order.size() && delta[order[end]] == delta[order[k]]) members.push_back(order[end++]);
    if (!delta[order[k]].is_zero()) {
      groups.push_back(std::move(members));
      tau.push_back(delta[order[k]]);
    }
    k = end;
  }
  return Transformation(GroupFamily(delta.size(), std::move(groups), FamilyKind::disjoint), std::move(tau),
                        delta.dimension());
}

}  // namespace gtrans
