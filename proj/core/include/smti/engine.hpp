#pragma once

// Stage 1: the proposal process.
//
// Every man owns L = tie_cap proposals and every woman holds at most L of
// them. A woman at capacity who receives another proposal tries, in order,
// to bounce a held proposal to a tied woman with free capacity, to forward a
// duplicate proposal to a tied woman, and finally rejects a least desirable
// proposal. Men whose rejection history covers their whole list are promoted
// (basic -> 1-promoted -> 2-promoted) and give up after the third time.
//
// The process is fully determined by the instance and a Policy. Proposals are
// tracked as per-pair multiplicities; individual proposal tokens are
// interchangeable.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smti/instance.hpp"

namespace smti {

enum class Status : std::uint8_t { Basic = 0, Promoted1 = 1, Promoted2 = 2 };

// Accepted proposals G' as a multigraph over men x women.
class ProposalGraph {
 public:
  ProposalGraph() = default;
  ProposalGraph(int n_men, int n_women, int cap, std::uint64_t instance_fingerprint = 0);

  int n_men() const { return n_men_; }
  int n_women() const { return n_women_; }
  int cap() const { return cap_; }
  std::uint64_t instance_fingerprint() const { return fingerprint_; }

  int multiplicity(int m, int w) const { return mult_[index(m, w)]; }
  int man_degree(int m) const { return man_deg_[m]; }
  int woman_degree(int w) const { return woman_deg_[w]; }
  int degree(PersonId p) const { return p.side == Side::Man ? man_degree(p.index) : woman_degree(p.index); }
  // A(b): distinct men holding a proposal at w, ascending.
  const std::vector<int>& holders(int w) const { return holders_[w]; }
  // |E'| counting multiplicities.
  std::size_t total_multiplicity() const { return total_; }

  struct Edge {
    int man;
    int woman;
    int count;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  // Distinct pairs sorted by (man, woman).
  std::vector<Edge> edges() const;

  void add(int m, int w);
  // Throws std::logic_error if the pair is absent.
  void remove(int m, int w);

  friend bool operator==(const ProposalGraph& a, const ProposalGraph& b) {
    return a.cap_ == b.cap_ && a.n_men_ == b.n_men_ && a.mult_ == b.mult_;
  }

 private:
  std::size_t index(int m, int w) const { return static_cast<std::size_t>(m) * n_women_ + w; }

  int n_men_ = 0;
  int n_women_ = 0;
  int cap_ = 1;
  std::uint64_t fingerprint_ = 0;
  std::vector<int> mult_;
  std::vector<int> man_deg_;
  std::vector<int> woman_deg_;
  std::vector<std::vector<int>> holders_;
  std::size_t total_ = 0;
};

struct ManState {
  Status status = Status::Basic;
  std::vector<int> rejection_history;  // sorted woman ids
  int placed = 0;                      // == deg_{G'}(man)
  bool terminated = false;
};

enum class EventKind : std::uint8_t { Accept, Bounce, Forward, Reject, Promote, Terminate };

const char* to_string(EventKind k);

// Actors per kind:
//   Accept     man proposes, woman accepts.
//   Bounce     man proposes to woman; aux_man's proposal moves to aux_woman.
//   Forward    man proposes to woman; aux_man's duplicate is forwarded to aux_woman.
//   Reject     woman rejects man; aux_man is the proposer that triggered it.
//   Promote    man reaches `status` after woman's rejection exhausted his list.
//   Terminate  man gives up after woman's rejection (status 2).
struct Event {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Accept;
  int man = kUnmatched;
  int woman = kUnmatched;
  int aux_man = kUnmatched;
  int aux_woman = kUnmatched;
  std::optional<Status> status;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::uint64_t instance_fingerprint = 0;
  std::vector<Event> events;
  std::size_t n_accept = 0;
  std::size_t n_bounce = 0;
  std::size_t n_forward = 0;
  std::size_t n_reject = 0;
  std::size_t n_promote = 0;
  std::size_t n_terminate = 0;
  std::vector<bool> popular;            // per woman: rejected at least one proposal
  std::vector<Status> final_status;     // per man
  std::vector<char> rejected_pair;      // n_men x n_women: woman ever rejected man

  bool ever_rejected(int m, int w) const {
    return rejected_pair[static_cast<std::size_t>(m) * popular.size() + w] != 0;
  }
};

struct Policy {
  enum class Order : std::uint8_t { Index, Shuffled };

  // Which eligible man proposes next: lowest index, or lowest position in a
  // seeded permutation of the men.
  Order man_order = Order::Index;
  // Which woman a man picks inside his best remaining tie group: list order,
  // or a seeded permutation of each group.
  Order woman_tiebreak = Order::Index;
  std::uint64_t seed = 0;

  static Policy index_order() { return {}; }
  static Policy shuffled(std::uint64_t seed) { return {Order::Shuffled, Order::Shuffled, seed}; }
};

struct Stage1Result {
  ProposalGraph graph;
  Trace trace;
  std::vector<ManState> men;
};

// Step-by-step driver. run() executes the main loop to completion; propose()
// is exposed so individual transitions can be exercised directly.
class Stage1Engine {
 public:
  Stage1Engine(const Instance& inst, const Policy& policy = {});

  // One proposal from man m to woman w, including any forward cascade.
  // Throws std::logic_error if w is not in N(m) \ R(m) or m has terminated.
  void propose(int m, int w);

  // Next man to move under the policy, or kUnmatched when none is eligible.
  int next_man() const;
  // The woman `m` proposes to next: most preferred in N(m) \ R(m).
  int next_woman(int m) const;

  void run();
  bool done() const { return next_man() == kUnmatched; }

  const ProposalGraph& graph() const { return graph_; }
  const Trace& trace() const { return trace_; }
  ManState man_state(int m) const;
  Status status(int m) const { return men_[m].status; }
  bool in_history(int m, int w) const { return men_[m].in_history[w] != 0; }

  Stage1Result result() const;

 private:
  struct Man {
    Status status = Status::Basic;
    std::vector<char> in_history;
    int history_size = 0;
    bool terminated = false;
  };

  bool eligible(int m) const;
  void record(EventKind kind, int man, int woman, int aux_man = kUnmatched, int aux_woman = kUnmatched,
              std::optional<Status> status = std::nullopt);
  void step(int m, int w, std::vector<std::pair<int, int>>& pending);
  bool try_bounce(int a, int b);
  bool try_forward(int a, int b, std::vector<std::pair<int, int>>& pending);
  void reject_step(int a, int b);
  std::vector<int> scan_order(int a, int b) const;
  bool admissible(int a, int b) const;

  const Instance* inst_;
  Policy policy_;
  int cap_;
  ProposalGraph graph_;
  Trace trace_;
  std::vector<Man> men_;
  std::vector<int> reject_floor_;  // per woman, best rank among men she has rejected
  std::vector<int> man_priority_;            // position of each man in the proposing order
  std::vector<int> man_by_priority_;
  std::vector<std::vector<std::vector<int>>> tiebreak_;  // per man, groups in pick order
  std::size_t step_limit_;
  std::size_t steps_ = 0;
};

Stage1Result run_stage1(const Instance& inst, const Policy& policy = {});

// JSON lines, one event per line, then a summary record with counters,
// popular women and final statuses. Ids are 1-based.
std::string trace_to_jsonl(const Trace& trace);
// "<man> <woman> <multiplicity>" per distinct pair, 1-based.
std::string graph_to_text(const ProposalGraph& g);

// Final-state properties of a Stage-1 run. Each function returns readable
// witnesses; an empty vector means the property holds.
std::vector<std::string> check_graph_invariants(const Instance& inst, const Stage1Result& r);
std::vector<std::string> check_step_counters(const Instance& inst, const Trace& t);
// If b holds a proposal of a and some b' tied with b for a ends below
// capacity, b never rejected anything.
std::vector<std::string> check_tied_free_woman_unpopular(const Instance& inst, const Stage1Result& r);
// If b holds >= 2 proposals of a basic man a and once rejected a' tied with
// a, then (a', b) is in G'.
std::vector<std::string> check_rejected_tie_holds_edge(const Instance& inst, const Stage1Result& r);

}  // namespace smti
