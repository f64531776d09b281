#pragma once

#include <utility>
#include <vector>

#include "smti/instance.hpp"

namespace smti {

// Pairs (a, b) of E outside the matching where each strictly prefers the
// other to their partner (being unmatched is worst). Sorted by (man, woman).
// Throws InvalidMatching if the matching does not fit the instance.
std::vector<std::pair<int, int>> find_blocking_pairs(const Instance& inst, const Matching& m);

inline bool is_stable(const Instance& inst, const Matching& m) {
  return find_blocking_pairs(inst, m).empty();
}

}  // namespace smti
