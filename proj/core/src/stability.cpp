#include "smti/stability.hpp"

#include <algorithm>

namespace smti {

std::vector<std::pair<int, int>> find_blocking_pairs(const Instance& inst, const Matching& m) {
  validate(inst, m);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < inst.n_men(); ++a) {
    const PrefList& his = inst.man(a);
    const int wife = m.wife(a);
    for (int b : his.flatten()) {
      if (b == wife) continue;
      if (wife != kUnmatched && his.rank(b) >= his.rank(wife)) continue;
      const int husband = m.husband(b);
      if (husband != kUnmatched && inst.woman(b).rank(a) >= inst.woman(b).rank(husband)) continue;
      out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smti
