#pragma once

#include <cstdint>

#include "smti/instance.hpp"

namespace smti {

// The tight family for tie cap L >= 2: 3L-2 men and 3L-2 women, indexed
// a0, alpha_1..alpha_{L-1}, beta_1..beta_{L-1}, gamma_1..gamma_{L-1}
// (women likewise). Throws std::invalid_argument for L < 2.
Instance gen_tight(int L);

// Index helpers for the tight family layout (0-based).
struct TightLayout {
  int L;
  int zero() const { return 0; }
  int alpha(int i) const { return i; }
  int beta(int i) const { return L - 1 + i; }
  int gamma(int i) const { return 2 * (L - 1) + i; }
  int size() const { return 3 * L - 2; }
};

// The perfect matching {(a0,b0)} plus {(x_i, y_i)} for every block; the
// unique maximum-cardinality stable matching of gen_tight(L).
Matching tight_optimum(int L);

struct RandomSpec {
  int n_men = 1;
  int n_women = 1;
  double density = 1.0;  // edge probability in (0, 1]
  int max_tie = 1;
  std::uint64_t seed = 0;
  int max_retries = 10000;
};

// Each pair is an edge independently with probability `density`; the whole
// graph is redrawn until nobody has an empty list. Each list is a shuffled
// sequence cut into tie groups of size uniform in [1, min(max_tie, rest)].
// The resulting tie cap is the observed maximum tie size.
//
// Throws std::invalid_argument on bad arguments and std::runtime_error when
// the retry cap is exceeded.
Instance gen_random(const RandomSpec& spec);

}  // namespace smti
