#include "smti/instance.hpp"

#include <algorithm>
#include <sstream>

namespace smti {

namespace {

// FNV-1a, 64-bit.
struct Digest {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void mix(std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint8_t>(v >> (8 * i));
      h *= 0x100000001b3ULL;
    }
  }
};

void mix_lists(Digest& d, const std::vector<PrefList>& lists) {
  d.mix(static_cast<std::int64_t>(lists.size()));
  for (const auto& l : lists) {
    d.mix(static_cast<std::int64_t>(l.groups().size()));
    for (const auto& g : l.groups()) {
      d.mix(static_cast<std::int64_t>(g.size()));
      for (int id : g) d.mix(id);
    }
  }
}

}  // namespace

std::string to_string(PersonId p) {
  return (p.side == Side::Man ? "m" : "w") + std::to_string(p.index + 1);
}

PrefList::PrefList(std::vector<std::vector<int>> groups) : groups_(std::move(groups)) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].empty()) throw InvalidInstance("empty tie group in preference list");
    for (int id : groups_[g]) {
      if (id < 0) throw InvalidInstance("negative id in preference list");
      if (static_cast<std::size_t>(id) >= rank_.size()) rank_.resize(id + 1, -1);
      if (rank_[id] >= 0) {
        throw InvalidInstance("duplicate entry " + std::to_string(id + 1) + " in preference list");
      }
      rank_[id] = static_cast<int>(g);
      ++size_;
    }
  }
}

std::size_t PrefList::max_tie() const {
  std::size_t best = 0;
  for (const auto& g : groups_) best = std::max(best, g.size());
  return best;
}

const std::vector<int>& PrefList::group_of(int id) const {
  const int r = rank(id);
  if (r < 0) throw std::invalid_argument("id " + std::to_string(id + 1) + " not in preference list");
  return groups_[r];
}

std::vector<int> PrefList::flatten() const {
  std::vector<int> out;
  out.reserve(size_);
  for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

Preference compare(const PrefList& list, int x, int y) {
  const int rx = list.rank(x);
  const int ry = list.rank(y);
  if (rx < 0 || ry < 0) {
    throw std::invalid_argument("compare: id " + std::to_string((rx < 0 ? x : y) + 1) +
                                " not in preference list");
  }
  if (rx < ry) return Preference::PrefersX;
  if (ry < rx) return Preference::PrefersY;
  return Preference::Tie;
}

Instance::Instance(std::vector<PrefList> men, std::vector<PrefList> women,
                   std::optional<int> tie_cap)
    : men_(std::move(men)), women_(std::move(women)) {
  const int nm = n_men();
  const int nw = n_women();
  for (int m = 0; m < nm; ++m) {
    for (int w : men_[m].flatten()) {
      if (w >= nw) {
        throw InvalidInstance("man " + std::to_string(m + 1) + " lists unknown woman " +
                              std::to_string(w + 1));
      }
      if (!women_[w].contains(m)) {
        throw InvalidInstance("man " + std::to_string(m + 1) + " lists woman " +
                              std::to_string(w + 1) + " but she does not list him");
      }
      ++num_edges_;
    }
    max_tie_ = std::max(max_tie_, static_cast<int>(men_[m].max_tie()));
  }
  for (int w = 0; w < nw; ++w) {
    for (int m : women_[w].flatten()) {
      if (m >= nm) {
        throw InvalidInstance("woman " + std::to_string(w + 1) + " lists unknown man " +
                              std::to_string(m + 1));
      }
      if (!men_[m].contains(w)) {
        throw InvalidInstance("woman " + std::to_string(w + 1) + " lists man " +
                              std::to_string(m + 1) + " but he does not list her");
      }
    }
    max_tie_ = std::max(max_tie_, static_cast<int>(women_[w].max_tie()));
  }

  tie_cap_ = std::max(1, max_tie_);
  if (tie_cap) {
    if (*tie_cap < tie_cap_) {
      throw InvalidInstance("tie cap " + std::to_string(*tie_cap) +
                            " is smaller than the largest tie (" + std::to_string(tie_cap_) + ")");
    }
    tie_cap_ = *tie_cap;
  }

  Digest d;
  d.mix(tie_cap_);
  mix_lists(d, men_);
  mix_lists(d, women_);
  fingerprint_ = d.h;
}

std::vector<std::pair<int, int>> Instance::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(num_edges_);
  for (int m = 0; m < n_men(); ++m) {
    for (int w : men_[m].flatten()) out.emplace_back(m, w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Matching::Matching(int n_men, int n_women) : wife_(n_men, kUnmatched), husband_(n_women, kUnmatched) {}

void Matching::add(int m, int w) {
  if (m < 0 || m >= n_men() || w < 0 || w >= n_women()) {
    throw InvalidMatching("pair (" + std::to_string(m + 1) + ", " + std::to_string(w + 1) +
                          ") out of range");
  }
  if (wife_[m] != kUnmatched) {
    throw InvalidMatching("man " + std::to_string(m + 1) + " matched twice");
  }
  if (husband_[w] != kUnmatched) {
    throw InvalidMatching("woman " + std::to_string(w + 1) + " matched twice");
  }
  wife_[m] = w;
  husband_[w] = m;
  ++size_;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(size_);
  for (int m = 0; m < n_men(); ++m) {
    if (wife_[m] != kUnmatched) out.emplace_back(m, wife_[m]);
  }
  return out;
}

void validate(const Instance& inst, const Matching& m) {
  if (m.n_men() != inst.n_men() || m.n_women() != inst.n_women()) {
    throw InvalidMatching("matching dimensions do not match the instance");
  }
  for (auto [a, b] : m.pairs()) {
    if (!inst.acceptable(a, b)) {
      std::ostringstream os;
      os << "pair (" << a + 1 << ", " << b + 1 << ") is not an acceptable pair";
      throw InvalidMatching(os.str());
    }
  }
}

}  // namespace smti
