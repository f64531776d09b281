#include "smti/extract.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace smti {

namespace detail {

// Shortest augmenting paths with potentials (Kuhn-Munkres), O(n^2 m) for
// n <= m. Minimises cost = -weight.
std::vector<int> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight) {
  const int rows = static_cast<int>(weight.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weight[0].size());
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);

  if (rows > cols) {
    std::vector<std::vector<std::int64_t>> t(cols, std::vector<std::int64_t>(rows));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) t[j][i] = weight[i][j];
    }
    const auto by_col = max_weight_assignment(t);
    std::vector<int> out(rows, -1);
    for (int j = 0; j < cols; ++j) {
      if (by_col[j] >= 0) out[by_col[j]] = j;
    }
    return out;
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const int n = rows;
  const int m = cols;
  std::vector<std::int64_t> u(n + 1, 0), v(m + 1, 0);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> out(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (owner[j] > 0) out[owner[j] - 1] = j - 1;
  }
  return out;
}

}  // namespace detail

std::vector<PersonId> saturation_set(const ProposalGraph& g) {
  std::vector<PersonId> out;
  for (int m = 0; m < g.n_men(); ++m) {
    if (g.man_degree(m) == g.cap()) out.push_back(PersonId::man(m));
  }
  for (int w = 0; w < g.n_women(); ++w) {
    if (g.woman_degree(w) == g.cap()) out.push_back(PersonId::woman(w));
  }
  return out;
}

Matching extract_matching(const ProposalGraph& g) {
  const int nm = g.n_men();
  const int nw = g.n_women();
  const int L = g.cap();
  Matching result(nm, nw);
  if (nm == 0 || nw == 0) return result;

  const std::int64_t W = std::min(nm, nw) + 1;
  std::vector<std::vector<std::int64_t>> weight(nm, std::vector<std::int64_t>(nw, 0));
  for (const auto& e : g.edges()) {
    const int saturated = (g.man_degree(e.man) == L) + (g.woman_degree(e.woman) == L);
    weight[e.man][e.woman] = W * saturated + 1;
  }
  const auto assignment = detail::max_weight_assignment(weight);
  for (int m = 0; m < nm; ++m) {
    const int w = assignment[m];
    if (w >= 0 && g.multiplicity(m, w) > 0) result.add(m, w);
  }

  for (PersonId p : saturation_set(g)) {
    if (result.partner(p) == kUnmatched) {
      throw ExtractionError("no matching of G' saturates " + to_string(p));
    }
  }
  if (static_cast<std::size_t>(L) * result.size() < g.total_multiplicity()) {
    throw ExtractionError("L*|M| = " + std::to_string(L * result.size()) + " < |E'| = " +
                          std::to_string(g.total_multiplicity()));
  }
  return result;
}

}  // namespace smti
