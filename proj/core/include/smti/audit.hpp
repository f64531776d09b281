#pragma once

// Machine check of the charging-scheme argument behind the approximation
// guarantee, evaluated on one concrete run.
//
// Every copy of a G' pair (a, b) that is not absorbed by membership in M or
// OPT is a token: an "input" to b and an "output" from a. Tokens are
// labelled good or bad from the final run state (popularity, success,
// promotion status) and the partners in M and OPT. Node costs follow:
//
//   cost(a) = deg(a) + #bad outputs from a
//   cost(b) = deg(b) - #good inputs to b
//
// check_all then asserts every per-edge, per-component and global bound
// that links these costs to |M| and |OPT|.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "smti/engine.hpp"
#include "smti/instance.hpp"

namespace smti {

enum class TokenKind : std::uint8_t { Good, Bad };

struct PairTokens {
  int man = kUnmatched;
  int woman = kUnmatched;
  int multiplicity = 0;  // n_(a,b)
  bool in_m = false;
  bool in_opt = false;
  int tokens = 0;  // s_(a,b) = max(0, n - [in M] - [in OPT])
  TokenKind input = TokenKind::Good;
  TokenKind output = TokenKind::Good;
};

struct EdgeClassification {
  int cap = 1;
  std::vector<PairTokens> pairs;  // one entry per distinct G' pair
  std::vector<int> good_inputs;   // per woman
  std::vector<int> bad_inputs;    // per woman
  std::vector<int> good_outputs;  // per man
  std::vector<int> bad_outputs;   // per man
  std::vector<bool> man_successful;
  std::vector<bool> woman_successful;

  std::size_t total_tokens() const;
  std::size_t total(const std::vector<int>& per_person) const;
};

// Throws std::invalid_argument when the graph or trace was produced from a
// different instance, or when M / OPT do not fit it.
EdgeClassification classify(const Instance& inst, const ProposalGraph& g, const Trace& trace,
                            const Matching& m, const Matching& opt);

struct CostVector {
  std::vector<int> men;
  std::vector<int> women;

  int of(PersonId p) const { return p.side == Side::Man ? men[p.index] : women[p.index]; }
  long long sum(const std::vector<PersonId>& nodes) const;
  long long total() const;
};

CostVector costs(const EdgeClassification& cls, const ProposalGraph& g);

enum class ComponentKind : std::uint8_t {
  Trivial,           // isolated node
  AlternatingPath,   // even length, one end on an M edge and one on an OPT edge
  AlternatingCycle,  // includes the 2-cycles formed by pairs in M and OPT
  OptAugmenting,     // both end edges in M
  MAugmenting,       // both end edges in OPT
};

const char* to_string(ComponentKind k);

struct Component {
  ComponentKind kind = ComponentKind::Trivial;
  // Path order. M-augmenting paths start at their man endpoint; cycles at
  // their smallest node.
  std::vector<PersonId> nodes;
  int length = 0;  // edges, counting an M and OPT copy of a shared pair twice
  int m_edges = 0;
  int opt_edges = 0;
};

// Components of the multigraph M + OPT over all men and women.
std::vector<Component> decompose(const Matching& m, const Matching& opt);

struct CheckResult {
  std::string name;
  std::string claim;
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct AuditReport {
  int cap = 1;
  std::size_t alg_size = 0;
  std::size_t opt_size = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  // nullptr when absent.
  const CheckResult* find(const std::string& name) const;
  std::vector<std::string> failed() const;
  std::string to_json() const;
};

// Runs every check on one pipeline run against an optimum. Preconditions
// are those of classify().
AuditReport check_all(const Instance& inst, const Stage1Result& run, const Matching& m,
                      const Matching& opt);

}  // namespace smti
