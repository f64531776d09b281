#include "smti/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace smti {

namespace {

class Search {
 public:
  explicit Search(const Instance& inst)
      : inst_(inst),
        nm_(inst.n_men()),
        nw_(inst.n_women()),
        wife_(nm_, kUnmatched),
        husband_(nw_, kUnmatched) {
    for (int m = 0; m < nm_; ++m) lists_.push_back(inst.man(m).flatten());
  }

  OptResult run() {
    recurse(0, 0);
    OptResult r{Matching(nm_, nw_), best_size_, best_count_};
    for (int m = 0; m < nm_; ++m) {
      if (best_[m] != kUnmatched) r.matching.add(m, best_[m]);
    }
    return r;
  }

 private:
  void recurse(int m, std::size_t size) {
    if (m == nm_) {
      leaf(size);
      return;
    }
    // Even matching every remaining man cannot reach the best size.
    if (have_best_ && size + static_cast<std::size_t>(nm_ - m) < best_size_) return;
    for (int w : lists_[m]) {
      if (husband_[w] != kUnmatched) continue;
      wife_[m] = w;
      husband_[w] = m;
      recurse(m + 1, size + 1);
      wife_[m] = kUnmatched;
      husband_[w] = kUnmatched;
    }
    recurse(m + 1, size);
  }

  bool stable() const {
    for (int a = 0; a < nm_; ++a) {
      const PrefList& his = inst_.man(a);
      const int wife = wife_[a];
      const int wife_rank = wife == kUnmatched ? -1 : his.rank(wife);
      for (int b : lists_[a]) {
        if (b == wife) continue;
        if (wife != kUnmatched && his.rank(b) >= wife_rank) continue;
        const int h = husband_[b];
        if (h == kUnmatched || inst_.woman(b).rank(a) < inst_.woman(b).rank(h)) return false;
      }
    }
    return true;
  }

  void leaf(std::size_t size) {
    if (have_best_ && size < best_size_) return;
    if (!stable()) return;
    if (!have_best_ || size > best_size_) {
      have_best_ = true;
      best_size_ = size;
      best_count_ = 1;
      best_ = wife_;
    } else {
      ++best_count_;
    }
  }

  const Instance& inst_;
  int nm_;
  int nw_;
  std::vector<std::vector<int>> lists_;
  std::vector<int> wife_;
  std::vector<int> husband_;
  bool have_best_ = false;
  std::size_t best_size_ = 0;
  std::size_t best_count_ = 0;
  std::vector<int> best_;
};

}  // namespace

OptResult brute_force_opt(const Instance& inst, int limit) {
  if (inst.n_men() > limit || inst.n_women() > limit) {
    throw OracleLimitExceeded("instance is " + std::to_string(inst.n_men()) + "x" +
                              std::to_string(inst.n_women()) + ", oracle limit is " +
                              std::to_string(limit));
  }
  return Search(inst).run();
}

}  // namespace smti
