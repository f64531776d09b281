#pragma once

// Stage 2: a maximum-cardinality matching of G' among those that match every
// node of degree L.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smti/engine.hpp"
#include "smti/instance.hpp"

namespace smti {

class ExtractionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Nodes of G' whose degree equals the cap, men first, ascending.
std::vector<PersonId> saturation_set(const ProposalGraph& g);

// Parallel edges collapse to one. Solved as a maximum-weight bipartite
// matching with weight W * (#saturated endpoints) + 1 per edge and
// W = min(|A|, |B|) + 1, which saturates first and then maximises size.
// Throws ExtractionError if the result misses a saturated node or violates
// L * |M| >= |E'|; neither can happen for genuine Stage-1 output.
Matching extract_matching(const ProposalGraph& g);

namespace detail {

// Maximum-weight assignment on a dense non-negative weight matrix
// (rows x cols). Returns, per row, the assigned column or -1. Zero-weight
// assignments are reported too; callers filter them.
std::vector<int> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight);

}  // namespace detail
}  // namespace smti
