#pragma once

#include <cstddef>
#include <stdexcept>

#include "smti/instance.hpp"

namespace smti {

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptResult {
  Matching matching;   // one maximum-cardinality weakly stable matching
  std::size_t size = 0;
  std::size_t count = 0;  // stable matchings attaining `size`
};

inline constexpr int kDefaultOracleLimit = 10;

// Exhaustive search over all matchings of E (each man in turn takes a free
// acceptable woman or stays single), pruned by remaining men against the
// best size so far; stability is checked at the leaves. Desk scale only.
// Throws OracleLimitExceeded when either side is larger than `limit`.
OptResult brute_force_opt(const Instance& inst, int limit = kDefaultOracleLimit);

}  // namespace smti
