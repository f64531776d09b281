#include "smti/pipeline.hpp"

#include "smti/extract.hpp"

namespace smti {

Solution solve(const Instance& inst, const Policy& policy) {
  Solution s{run_stage1(inst, policy), Matching()};
  s.matching = extract_matching(s.stage1.graph);
  return s;
}

}  // namespace smti
