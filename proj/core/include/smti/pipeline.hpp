#pragma once

#include "smti/engine.hpp"
#include "smti/instance.hpp"

namespace smti {

struct Solution {
  Stage1Result stage1;
  Matching matching;
};

// Stage 1 followed by Stage 2.
Solution solve(const Instance& inst, const Policy& policy = {});

}  // namespace smti
