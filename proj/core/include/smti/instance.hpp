#pragma once

// Problem instances for stable marriage with ties and incomplete lists.
//
// People are addressed by 0-based indices internally; the text formats in
// io.hpp use 1-based ids. A preference list is an ordered sequence of tie
// groups, most preferred first.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smti {

enum class Side : std::uint8_t { Man, Woman };

struct PersonId {
  Side side = Side::Man;
  int index = 0;  // 0-based

  static constexpr PersonId man(int i) { return {Side::Man, i}; }
  static constexpr PersonId woman(int i) { return {Side::Woman, i}; }

  friend constexpr auto operator<=>(const PersonId&, const PersonId&) = default;
};

// "m3" / "w1", 1-based.
std::string to_string(PersonId p);

inline constexpr int kUnmatched = -1;

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMatching : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Preference { PrefersX, PrefersY, Tie };

class PrefList {
 public:
  PrefList() = default;
  // Throws InvalidInstance on an empty group, a negative id or a repeated id.
  explicit PrefList(std::vector<std::vector<int>> groups);

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t max_tie() const;

  bool contains(int id) const { return rank(id) >= 0; }
  // Index of the tie group holding `id`, or -1.
  int rank(int id) const {
    return id >= 0 && static_cast<std::size_t>(id) < rank_.size() ? rank_[id] : -1;
  }
  const std::vector<int>& group_of(int id) const;
  std::vector<int> flatten() const;

  friend bool operator==(const PrefList& a, const PrefList& b) { return a.groups_ == b.groups_; }

 private:
  std::vector<std::vector<int>> groups_;
  std::vector<int> rank_;
  std::size_t size_ = 0;
};

// Throws std::invalid_argument when x or y is absent from the list.
Preference compare(const PrefList& list, int x, int y);

class Instance {
 public:
  // Validates ids, mutual acceptability and the tie cap. Without an explicit
  // cap the observed maximum tie size (at least 1) is used; an explicit cap
  // may only raise it.
  Instance(std::vector<PrefList> men, std::vector<PrefList> women,
           std::optional<int> tie_cap = std::nullopt);

  int n_men() const { return static_cast<int>(men_.size()); }
  int n_women() const { return static_cast<int>(women_.size()); }
  int tie_cap() const { return tie_cap_; }
  int max_tie() const { return max_tie_; }

  const PrefList& man(int m) const { return men_.at(m); }
  const PrefList& woman(int w) const { return women_.at(w); }
  const std::vector<PrefList>& men() const { return men_; }
  const std::vector<PrefList>& women() const { return women_; }

  bool acceptable(int m, int w) const { return men_[m].contains(w); }
  std::size_t num_edges() const { return num_edges_; }
  std::vector<std::pair<int, int>> edges() const;

  // Stable 64-bit digest of the canonical content; used to tie run artifacts
  // to the instance that produced them.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.tie_cap_ == b.tie_cap_ && a.men_ == b.men_ && a.women_ == b.women_;
  }

 private:
  std::vector<PrefList> men_;
  std::vector<PrefList> women_;
  int tie_cap_ = 1;
  int max_tie_ = 0;
  std::size_t num_edges_ = 0;
  std::uint64_t fingerprint_ = 0;
};

// One-to-one assignment of men to women.
class Matching {
 public:
  Matching() = default;
  Matching(int n_men, int n_women);

  int n_men() const { return static_cast<int>(wife_.size()); }
  int n_women() const { return static_cast<int>(husband_.size()); }

  // Throws InvalidMatching if either person is out of range or already matched.
  void add(int m, int w);

  int wife(int m) const { return wife_.at(m); }
  int husband(int w) const { return husband_.at(w); }
  int partner(PersonId p) const { return p.side == Side::Man ? wife(p.index) : husband(p.index); }
  bool contains(int m, int w) const { return wife_.at(m) == w && w != kUnmatched; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Sorted by man.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.wife_ == b.wife_ && a.husband_ == b.husband_;
  }

 private:
  std::vector<int> wife_;
  std::vector<int> husband_;
  std::size_t size_ = 0;
};

// Throws InvalidMatching if the matching's dimensions differ from the
// instance's or it contains a pair outside the acceptability graph.
void validate(const Instance& inst, const Matching& m);

}  // namespace smti
