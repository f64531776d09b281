#include "smti/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace smti {

Instance gen_tight(int L) {
  if (L < 2) throw std::invalid_argument("tight family needs L >= 2, got " + std::to_string(L));
  const TightLayout at{L};
  const int n = at.size();
  std::vector<std::vector<std::vector<int>>> men(n);
  std::vector<std::vector<std::vector<int>>> women(n);

  std::vector<int> gammas;
  std::vector<int> alphas;
  std::vector<int> betas;
  for (int i = 1; i < L; ++i) {
    gammas.push_back(at.gamma(i));
    alphas.push_back(at.alpha(i));
    betas.push_back(at.beta(i));
  }
  auto with = [](int head, const std::vector<int>& rest) {
    std::vector<int> g{head};
    g.insert(g.end(), rest.begin(), rest.end());
    return g;
  };

  men[at.zero()] = {with(at.zero(), gammas)};
  women[at.zero()] = {with(at.zero(), betas)};
  for (int i = 1; i < L; ++i) {
    men[at.alpha(i)] = {with(at.alpha(i), gammas)};
    men[at.beta(i)] = {with(at.zero(), alphas), {at.beta(i)}};
    men[at.gamma(i)] = {{at.gamma(i)}};

    auto& wa = women[at.alpha(i)];
    wa.push_back({at.alpha(i)});
    for (int b : betas) wa.push_back({b});
    women[at.beta(i)] = {{at.beta(i)}};
    women[at.gamma(i)] = {with(at.zero(), alphas), {at.gamma(i)}};
  }

  std::vector<PrefList> ml;
  std::vector<PrefList> wl;
  for (auto& g : men) ml.emplace_back(std::move(g));
  for (auto& g : women) wl.emplace_back(std::move(g));
  return Instance(std::move(ml), std::move(wl), L);
}

Matching tight_optimum(int L) {
  if (L < 2) throw std::invalid_argument("tight family needs L >= 2, got " + std::to_string(L));
  const TightLayout at{L};
  Matching m(at.size(), at.size());
  for (int p = 0; p < at.size(); ++p) m.add(p, p);
  return m;
}

namespace {

std::vector<std::vector<int>> random_groups(std::vector<int> items, int max_tie, std::mt19937_64& rng) {
  std::shuffle(items.begin(), items.end(), rng);
  std::vector<std::vector<int>> groups;
  std::size_t pos = 0;
  while (pos < items.size()) {
    const int rest = static_cast<int>(items.size() - pos);
    std::uniform_int_distribution<int> size_dist(1, std::min(max_tie, rest));
    const int k = size_dist(rng);
    groups.emplace_back(items.begin() + pos, items.begin() + pos + k);
    pos += k;
  }
  return groups;
}

}  // namespace

Instance gen_random(const RandomSpec& spec) {
  if (spec.n_men < 1 || spec.n_women < 1) throw std::invalid_argument("counts must be at least 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  if (spec.max_tie < 1) throw std::invalid_argument("max tie must be at least 1");

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution coin(spec.density);
  const int nm = spec.n_men;
  const int nw = spec.n_women;

  std::vector<char> edge(static_cast<std::size_t>(nm) * nw);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= spec.max_retries) {
      throw std::runtime_error("gen_random: retry cap exceeded; density too small for every person to "
                               "have a non-empty list");
    }
    std::vector<int> man_deg(nm, 0);
    std::vector<int> woman_deg(nw, 0);
    for (int m = 0; m < nm; ++m) {
      for (int w = 0; w < nw; ++w) {
        const bool on = coin(rng);
        edge[static_cast<std::size_t>(m) * nw + w] = on;
        man_deg[m] += on;
        woman_deg[w] += on;
      }
    }
    const bool ok = std::none_of(man_deg.begin(), man_deg.end(), [](int d) { return d == 0; }) &&
                    std::none_of(woman_deg.begin(), woman_deg.end(), [](int d) { return d == 0; });
    if (ok) break;
  }

  std::vector<PrefList> men;
  std::vector<PrefList> women;
  for (int m = 0; m < nm; ++m) {
    std::vector<int> items;
    for (int w = 0; w < nw; ++w) {
      if (edge[static_cast<std::size_t>(m) * nw + w]) items.push_back(w);
    }
    men.emplace_back(random_groups(std::move(items), spec.max_tie, rng));
  }
  for (int w = 0; w < nw; ++w) {
    std::vector<int> items;
    for (int m = 0; m < nm; ++m) {
      if (edge[static_cast<std::size_t>(m) * nw + w]) items.push_back(m);
    }
    women.emplace_back(random_groups(std::move(items), spec.max_tie, rng));
  }
  return Instance(std::move(men), std::move(women));
}

}  // namespace smti
