#include "smti/audit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "smti/extract.hpp"
#include "smti/stability.hpp"

namespace smti {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

std::string pair_str(int m, int w) {
  return "(m" + std::to_string(m + 1) + ", w" + std::to_string(w + 1) + ")";
}

// Strict preference of `list`'s owner for x over y; kUnmatched is worst.
bool prefers(const PrefList& list, int x, int y) {
  if (x == kUnmatched) return false;
  if (y == kUnmatched) return true;
  return list.rank(x) < list.rank(y);
}

bool tied(const PrefList& list, int x, int y) {
  return x != kUnmatched && y != kUnmatched && list.rank(x) == list.rank(y);
}

struct Context {
  const Instance& inst;
  const ProposalGraph& g;
  const Trace& trace;
  const Matching& m;
  const Matching& opt;

  bool successful_man(int a) const { return g.man_degree(a) == g.cap(); }
  bool successful_woman(int b) const { return g.woman_degree(b) == g.cap(); }
  Status status(int a) const { return trace.final_status[a]; }

  // M(b) ~_b OPT(b) ~_b a
  bool triple_tie(int a, int b) const {
    const PrefList& hers = inst.woman(b);
    return tied(hers, m.husband(b), opt.husband(b)) && tied(hers, opt.husband(b), a);
  }

  bool bad_input(int a, int b) const {
    if (!trace.popular[b]) return false;
    const PrefList& hers = inst.woman(b);
    const int o = opt.husband(b);
    if (prefers(hers, a, o)) return true;
    if (tied(hers, a, o) && !successful_man(o)) return true;
    return status(a) == Status::Promoted1 && o != kUnmatched && successful_man(o) && triple_tie(a, b);
  }

  bool bad_output(int a, int b) const {
    if (!trace.popular[b]) return true;
    if (!prefers(inst.man(a), b, opt.wife(a))) return false;
    if (status(a) == Status::Basic) return true;
    return status(a) == Status::Promoted1 && !triple_tie(a, b);
  }
};

void require_fit(const Instance& inst, const ProposalGraph& g, const Trace& trace, const Matching& m,
                 const Matching& opt) {
  if (g.instance_fingerprint() != inst.fingerprint() || trace.instance_fingerprint != inst.fingerprint()) {
    throw std::invalid_argument("proposal graph or trace was produced from a different instance");
  }
  try {
    validate(inst, m);
    validate(inst, opt);
  } catch (const InvalidMatching& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace

std::size_t EdgeClassification::total_tokens() const {
  std::size_t n = 0;
  for (const auto& p : pairs) n += p.tokens;
  return n;
}

std::size_t EdgeClassification::total(const std::vector<int>& per_person) const {
  return std::accumulate(per_person.begin(), per_person.end(), std::size_t{0});
}

EdgeClassification classify(const Instance& inst, const ProposalGraph& g, const Trace& trace,
                            const Matching& m, const Matching& opt) {
  require_fit(inst, g, trace, m, opt);
  const Context ctx{inst, g, trace, m, opt};

  EdgeClassification cls;
  cls.cap = g.cap();
  cls.good_inputs.assign(inst.n_women(), 0);
  cls.bad_inputs.assign(inst.n_women(), 0);
  cls.good_outputs.assign(inst.n_men(), 0);
  cls.bad_outputs.assign(inst.n_men(), 0);
  for (int a = 0; a < inst.n_men(); ++a) cls.man_successful.push_back(ctx.successful_man(a));
  for (int b = 0; b < inst.n_women(); ++b) cls.woman_successful.push_back(ctx.successful_woman(b));

  for (const auto& e : g.edges()) {
    PairTokens p;
    p.man = e.man;
    p.woman = e.woman;
    p.multiplicity = e.count;
    p.in_m = m.contains(e.man, e.woman);
    p.in_opt = opt.contains(e.man, e.woman);
    p.tokens = std::max(0, e.count - int{p.in_m} - int{p.in_opt});
    p.input = ctx.bad_input(e.man, e.woman) ? TokenKind::Bad : TokenKind::Good;
    p.output = ctx.bad_output(e.man, e.woman) ? TokenKind::Bad : TokenKind::Good;
    (p.input == TokenKind::Bad ? cls.bad_inputs : cls.good_inputs)[e.woman] += p.tokens;
    (p.output == TokenKind::Bad ? cls.bad_outputs : cls.good_outputs)[e.man] += p.tokens;
    cls.pairs.push_back(p);
  }
  return cls;
}

long long CostVector::sum(const std::vector<PersonId>& nodes) const {
  long long s = 0;
  for (PersonId p : nodes) s += of(p);
  return s;
}

long long CostVector::total() const {
  return std::accumulate(men.begin(), men.end(), 0LL) + std::accumulate(women.begin(), women.end(), 0LL);
}

CostVector costs(const EdgeClassification& cls, const ProposalGraph& g) {
  CostVector c;
  c.men.resize(g.n_men());
  c.women.resize(g.n_women());
  for (int a = 0; a < g.n_men(); ++a) c.men[a] = g.man_degree(a) + cls.bad_outputs[a];
  for (int b = 0; b < g.n_women(); ++b) c.women[b] = g.woman_degree(b) - cls.good_inputs[b];
  return c;
}

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Trivial: return "trivial";
    case ComponentKind::AlternatingPath: return "alternating_path";
    case ComponentKind::AlternatingCycle: return "alternating_cycle";
    case ComponentKind::OptAugmenting: return "opt_augmenting";
    case ComponentKind::MAugmenting: return "m_augmenting";
  }
  return "?";
}

std::vector<Component> decompose(const Matching& m, const Matching& opt) {
  if (m.n_men() != opt.n_men() || m.n_women() != opt.n_women()) {
    throw std::invalid_argument("decompose: matchings have different dimensions");
  }
  const int nm = m.n_men();
  const int nw = m.n_women();
  // Nodes: men [0, nm), women [nm, nm + nw). Each node has at most one M
  // neighbour and one OPT neighbour.
  auto person = [nm](int v) { return v < nm ? PersonId::man(v) : PersonId::woman(v - nm); };
  auto m_nb = [&](int v) {
    const int x = v < nm ? m.wife(v) : m.husband(v - nm);
    return x == kUnmatched ? -1 : (v < nm ? nm + x : x);
  };
  auto opt_nb = [&](int v) {
    const int x = v < nm ? opt.wife(v) : opt.husband(v - nm);
    return x == kUnmatched ? -1 : (v < nm ? nm + x : x);
  };
  auto degree = [&](int v) { return (m_nb(v) >= 0) + (opt_nb(v) >= 0); };

  std::vector<char> seen(nm + nw, 0);
  std::vector<Component> out;

  // Walks from `start` alternating edge types, beginning with `first_is_m`.
  auto walk = [&](int start, bool first_is_m, Component& c) {
    int v = start;
    bool use_m = first_is_m;
    c.nodes.push_back(person(v));
    seen[v] = 1;
    for (;;) {
      const int next = use_m ? m_nb(v) : opt_nb(v);
      if (next < 0) break;
      ++c.length;
      ++(use_m ? c.m_edges : c.opt_edges);
      if (next == start) break;  // closed a cycle
      v = next;
      seen[v] = 1;
      c.nodes.push_back(person(v));
      use_m = !use_m;
    }
  };

  // Paths first, starting from endpoints so traversal order is canonical.
  for (int v = 0; v < nm + nw; ++v) {
    if (seen[v] || degree(v) != 1) continue;
    Component c;
    const bool start_m = m_nb(v) >= 0;
    walk(v, start_m, c);
    // The last edge has the same type as the first iff the length is odd.
    const bool end_m = c.length % 2 == 1 ? start_m : !start_m;
    if (start_m && end_m) {
      c.kind = ComponentKind::OptAugmenting;
    } else if (!start_m && !end_m && c.length % 2 == 1) {
      c.kind = ComponentKind::MAugmenting;
      if (c.nodes.front().side != Side::Man) std::reverse(c.nodes.begin(), c.nodes.end());
    } else {
      c.kind = ComponentKind::AlternatingPath;
    }
    out.push_back(std::move(c));
  }
  for (int v = 0; v < nm + nw; ++v) {
    if (seen[v]) continue;
    Component c;
    if (degree(v) == 0) {
      seen[v] = 1;
      c.kind = ComponentKind::Trivial;
      c.nodes.push_back(person(v));
    } else {
      c.kind = ComponentKind::AlternatingCycle;
      walk(v, true, c);
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Component& x, const Component& y) {
              return *std::min_element(x.nodes.begin(), x.nodes.end()) <
                     *std::min_element(y.nodes.begin(), y.nodes.end());
            });
  return out;
}

bool AuditReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> AuditReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

std::string AuditReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  auto arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["claim"] = c.claim;
    cj["pass"] = c.pass;
    cj["witnesses"] = c.witnesses;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  ordered_json s;
  s["L"] = cap;
  s["alg"] = alg_size;
  s["opt"] = opt_size;
  s["ratio"] = std::to_string(opt_size) + "/" + std::to_string(alg_size);
  s["all_pass"] = all_pass();
  j["summary"] = s;
  return j.dump(2);
}

namespace {

class Checks {
 public:
  explicit Checks(AuditReport& r) : report_(r) {}

  CheckResult& open(std::string name, std::string claim) {
    report_.checks.push_back({std::move(name), std::move(claim), true, {}});
    return report_.checks.back();
  }

  static void fail(CheckResult& c, std::string witness) {
    c.pass = false;
    if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(std::move(witness));
  }

  static void fail_all(CheckResult& c, const std::vector<std::string>& witnesses) {
    for (const auto& w : witnesses) fail(c, w);
  }

 private:
  AuditReport& report_;
};

std::string describe(const Component& c) {
  std::string s = to_string(c.kind);
  s += " of length " + std::to_string(c.length) + ":";
  for (PersonId p : c.nodes) s += " " + to_string(p);
  return s;
}

}  // namespace

AuditReport check_all(const Instance& inst, const Stage1Result& run, const Matching& m,
                      const Matching& opt) {
  const ProposalGraph& g = run.graph;
  const EdgeClassification cls = classify(inst, g, run.trace, m, opt);
  const CostVector cost = costs(cls, g);
  const auto components = decompose(m, opt);
  const long long L = inst.tie_cap();
  const long long alg = static_cast<long long>(m.size());
  const long long best = static_cast<long long>(opt.size());

  AuditReport report;
  report.cap = static_cast<int>(L);
  report.alg_size = m.size();
  report.opt_size = opt.size();
  Checks checks(report);

  // Run-level properties of the algorithm.
  {
    auto& c = checks.open("output_stable", "the output matching has no blocking pair");
    for (auto [a, b] : find_blocking_pairs(inst, m)) Checks::fail(c, "blocking pair " + pair_str(a, b));
  }
  {
    auto& c = checks.open("optimum_stable", "the reference optimum has no blocking pair");
    for (auto [a, b] : find_blocking_pairs(inst, opt)) Checks::fail(c, "blocking pair " + pair_str(a, b));
  }
  {
    auto& c = checks.open("saturation", "every degree-L node of G' is matched and L|M| >= |E'|");
    for (PersonId p : saturation_set(g)) {
      if (m.partner(p) == kUnmatched) Checks::fail(c, to_string(p) + " has degree L but is unmatched");
    }
    for (auto [a, b] : m.pairs()) {
      if (g.multiplicity(a, b) == 0) Checks::fail(c, pair_str(a, b) + " in M but not in G'");
    }
    if (L * alg < static_cast<long long>(g.total_multiplicity())) {
      Checks::fail(c, "L|M| = " + std::to_string(L * alg) + " < |E'| = " +
                          std::to_string(g.total_multiplicity()));
    }
  }
  {
    auto& c = checks.open("step_counters",
                          "bounces <= L|B|, forwards <= 3|A||B|, rejections <= 3L|A||B|");
    Checks::fail_all(c, check_step_counters(inst, run.trace));
  }
  {
    auto& c = checks.open("tied_free_woman_unpopular",
                          "a woman holding a proposal of a whose tied alternative ends unsuccessful is "
                          "unpopular");
    Checks::fail_all(c, check_tied_free_woman_unpopular(inst, run));
  }
  {
    auto& c = checks.open("rejected_tie_holds_edge",
                          "a woman holding two proposals of a basic man keeps an edge to every tied man "
                          "she rejected");
    Checks::fail_all(c, check_rejected_tie_holds_edge(inst, run));
  }

  // Token accounting.
  {
    auto& c = checks.open("token_accounting",
                          "sum of s(a,b) = |E'| - |M| - |OPT in G'| + #(single pairs in M and OPT)");
    long long expected = static_cast<long long>(g.total_multiplicity()) - alg;
    for (auto [a, b] : opt.pairs()) {
      const int n = g.multiplicity(a, b);
      if (n > 0) --expected;
      if (n == 1 && m.contains(a, b)) ++expected;
    }
    const long long tokens = static_cast<long long>(cls.total_tokens());
    const long long inputs = static_cast<long long>(cls.total(cls.good_inputs) + cls.total(cls.bad_inputs));
    const long long outputs = static_cast<long long>(cls.total(cls.good_outputs) + cls.total(cls.bad_outputs));
    if (tokens != expected || inputs != tokens || outputs != tokens) {
      Checks::fail(c, "tokens " + std::to_string(tokens) + ", expected " + std::to_string(expected) +
                          ", inputs " + std::to_string(inputs) + ", outputs " + std::to_string(outputs));
    }
  }
  {
    auto& c = checks.open("no_bad_input_and_bad_output", "no token is both a bad input and a bad output");
    for (const auto& p : cls.pairs) {
      if (p.tokens > 0 && p.input == TokenKind::Bad && p.output == TokenKind::Bad) {
        Checks::fail(c, pair_str(p.man, p.woman) + " x" + std::to_string(p.tokens));
      }
    }
  }
  {
    auto& c = checks.open("good_inputs_cover_bad_outputs",
                          "the number of good inputs is at least the number of bad outputs");
    const auto good = cls.total(cls.good_inputs);
    const auto bad = cls.total(cls.bad_outputs);
    if (good < bad) {
      Checks::fail(c, std::to_string(good) + " good inputs < " + std::to_string(bad) + " bad outputs");
    }
  }

  // Per-woman cost bounds.
  {
    auto& c3 = checks.open("matched_woman_cost", "a woman matched in M with k bad inputs has cost >= k+1");
    auto& c4 = checks.open("opt_woman_cost",
                           "a woman matched in OPT with (OPT(b), b) in G' and k bad inputs has cost >= k+1");
    auto& c5 = checks.open("doubly_matched_woman_cost",
                           "a woman with M(b) != OPT(b) and (OPT(b), b) in G' has cost >= 2");
    for (int b = 0; b < inst.n_women(); ++b) {
      const int k = cls.bad_inputs[b];
      const int cb = cost.women[b];
      const std::string who = "w" + std::to_string(b + 1) + " cost " + std::to_string(cb);
      const int mb = m.husband(b);
      const int ob = opt.husband(b);
      const bool opt_edge_in_g = ob != kUnmatched && g.multiplicity(ob, b) > 0;
      if (mb != kUnmatched && cb < k + 1) Checks::fail(c3, who + ", bad inputs " + std::to_string(k));
      if (opt_edge_in_g && cb < k + 1) Checks::fail(c4, who + ", bad inputs " + std::to_string(k));
      if (mb != kUnmatched && opt_edge_in_g && mb != ob && cb < 2) Checks::fail(c5, who);
    }
  }
  {
    auto& c = checks.open("opt_edge_cost",
                          "cost({a,b}) >= L for (a,b) in OPT; >= L+1 if deg(a) >= 1; >= 2L-1 if deg(b) <= L-1");
    for (auto [a, b] : opt.pairs()) {
      const long long pair_cost = cost.men[a] + cost.women[b];
      const std::string who = pair_str(a, b) + " cost " + std::to_string(pair_cost);
      if (pair_cost < L) Checks::fail(c, who + " < L");
      if (g.man_degree(a) >= 1 && pair_cost < L + 1) Checks::fail(c, who + " < L+1 with deg(a) >= 1");
      if (g.woman_degree(b) <= L - 1 && pair_cost < 2 * L - 1) {
        Checks::fail(c, who + " < 2L-1 with deg(b) <= L-1");
      }
    }
  }

  // Components of M + OPT.
  long long component_total = 0;
  long long m_augmenting = 0;
  {
    auto& c = checks.open("component_cost",
                          "cost(C) >= (L+1)|OPT & C|, plus L-2 for M-augmenting paths of length >= 5");
    auto& short_paths = checks.open("no_short_m_augmenting_path",
                                    "M + OPT has no M-augmenting path of length 1 or 3");
    for (const auto& comp : components) {
      const long long cc = cost.sum(comp.nodes);
      component_total += cc;
      long long bound = (L + 1) * comp.opt_edges;
      if (comp.kind == ComponentKind::MAugmenting) {
        ++m_augmenting;
        if (comp.length <= 3) {
          Checks::fail(short_paths, describe(comp));
          continue;
        }
        bound += L - 2;
      }
      if (cc < bound) {
        Checks::fail(c, describe(comp) + " has cost " + std::to_string(cc) + " < " + std::to_string(bound));
      }
    }
  }
  {
    auto& c = checks.open("m_augmenting_count", "M + OPT has at least |OPT| - |M| M-augmenting paths");
    if (m_augmenting < best - alg) {
      Checks::fail(c, std::to_string(m_augmenting) + " < " + std::to_string(best - alg));
    }
  }
  {
    auto& c = checks.open("total_component_cost",
                          "sum over components of cost(C) >= (L+1)|OPT| + (L-2)(|OPT|-|M|)");
    const long long bound = (L + 1) * best + (L - 2) * (best - alg);
    if (component_total < bound) {
      Checks::fail(c, std::to_string(component_total) + " < " + std::to_string(bound));
    }
  }
  {
    auto& c = checks.open("degree_cost_chain", "2L|M| >= sum of degrees in G' >= cost(A u B)");
    const long long degrees = 2 * static_cast<long long>(g.total_multiplicity());
    const long long total = cost.total();
    if (2 * L * alg < degrees) {
      Checks::fail(c, "2L|M| = " + std::to_string(2 * L * alg) + " < " + std::to_string(degrees));
    }
    if (degrees < total) {
      Checks::fail(c, "sum deg = " + std::to_string(degrees) + " < cost = " + std::to_string(total));
    }
  }
  {
    auto& c = checks.open("approximation_ratio", "(3L-2)|M| >= (2L-1)|OPT|");
    if ((3 * L - 2) * alg < (2 * L - 1) * best) {
      Checks::fail(c, "|M| = " + std::to_string(alg) + ", |OPT| = " + std::to_string(best));
    }
  }
  {
    auto& c = checks.open("optimum_not_smaller", "|OPT| >= |M|");
    if (best < alg) Checks::fail(c, "|OPT| = " + std::to_string(best) + " < |M| = " + std::to_string(alg));
  }
  return report;
}

}  // namespace smti
