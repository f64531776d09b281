#include "smti/engine.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace smti {

// ---------------------------------------------------------------------------
// ProposalGraph

ProposalGraph::ProposalGraph(int n_men, int n_women, int cap, std::uint64_t instance_fingerprint)
    : n_men_(n_men),
      n_women_(n_women),
      cap_(cap),
      fingerprint_(instance_fingerprint),
      mult_(static_cast<std::size_t>(n_men) * n_women, 0),
      man_deg_(n_men, 0),
      woman_deg_(n_women, 0),
      holders_(n_women) {}

void ProposalGraph::add(int m, int w) {
  if (mult_[index(m, w)]++ == 0) {
    auto& h = holders_[w];
    h.insert(std::lower_bound(h.begin(), h.end(), m), m);
  }
  ++man_deg_[m];
  ++woman_deg_[w];
  ++total_;
}

void ProposalGraph::remove(int m, int w) {
  int& c = mult_[index(m, w)];
  if (c == 0) {
    throw std::logic_error("remove of absent proposal (" + std::to_string(m + 1) + ", " +
                           std::to_string(w + 1) + ")");
  }
  if (--c == 0) {
    auto& h = holders_[w];
    h.erase(std::lower_bound(h.begin(), h.end(), m));
  }
  --man_deg_[m];
  --woman_deg_[w];
  --total_;
}

std::vector<ProposalGraph::Edge> ProposalGraph::edges() const {
  std::vector<Edge> out;
  for (int m = 0; m < n_men_; ++m) {
    for (int w = 0; w < n_women_; ++w) {
      if (int c = multiplicity(m, w); c > 0) out.push_back({m, w, c});
    }
  }
  return out;
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Accept: return "accept";
    case EventKind::Bounce: return "bounce";
    case EventKind::Forward: return "forward";
    case EventKind::Reject: return "reject";
    case EventKind::Promote: return "promote";
    case EventKind::Terminate: return "terminate";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Stage1Engine

Stage1Engine::Stage1Engine(const Instance& inst, const Policy& policy)
    : inst_(&inst),
      policy_(policy),
      cap_(inst.tie_cap()),
      graph_(inst.n_men(), inst.n_women(), inst.tie_cap(), inst.fingerprint()),
      men_(inst.n_men()),
      reject_floor_(inst.n_women(), INT_MAX) {
  const int nm = inst.n_men();
  const int nw = inst.n_women();
  for (auto& m : men_) m.in_history.assign(nw, 0);

  trace_.instance_fingerprint = inst.fingerprint();
  trace_.popular.assign(nw, false);
  trace_.final_status.assign(nm, Status::Basic);
  trace_.rejected_pair.assign(static_cast<std::size_t>(nm) * nw, 0);

  std::mt19937_64 rng(policy.seed);
  man_by_priority_.resize(nm);
  std::iota(man_by_priority_.begin(), man_by_priority_.end(), 0);
  if (policy.man_order == Policy::Order::Shuffled) {
    std::shuffle(man_by_priority_.begin(), man_by_priority_.end(), rng);
  }
  man_priority_.resize(nm);
  for (int p = 0; p < nm; ++p) man_priority_[man_by_priority_[p]] = p;

  tiebreak_.resize(nm);
  for (int m = 0; m < nm; ++m) {
    tiebreak_[m] = inst.man(m).groups();
    if (policy.woman_tiebreak == Policy::Order::Shuffled) {
      for (auto& g : tiebreak_[m]) std::shuffle(g.begin(), g.end(), rng);
    }
  }

  // Accepts and bounces each raise the total degree (at most L|A|); forwards
  // and rejections are bounded by 3|A||B| and 3L|A||B|.
  const std::size_t L = cap_;
  const std::size_t ab = static_cast<std::size_t>(nm) * nw;
  step_limit_ = 4 * (L * nm + 3 * ab + 3 * L * ab) + 64;
}

bool Stage1Engine::eligible(int m) const {
  return graph_.man_degree(m) < cap_ &&
         men_[m].history_size != static_cast<int>(inst_->man(m).size());
}

int Stage1Engine::next_man() const {
  for (int m : man_by_priority_) {
    if (eligible(m)) return m;
  }
  return kUnmatched;
}

int Stage1Engine::next_woman(int m) const {
  for (const auto& g : tiebreak_[m]) {
    for (int w : g) {
      if (!men_[m].in_history[w]) return w;
    }
  }
  return kUnmatched;
}

void Stage1Engine::record(EventKind kind, int man, int woman, int aux_man, int aux_woman,
                          std::optional<Status> status) {
  trace_.events.push_back({trace_.events.size(), kind, man, woman, aux_man, aux_woman, status});
  switch (kind) {
    case EventKind::Accept: ++trace_.n_accept; break;
    case EventKind::Bounce: ++trace_.n_bounce; break;
    case EventKind::Forward: ++trace_.n_forward; break;
    case EventKind::Reject: ++trace_.n_reject; break;
    case EventKind::Promote: ++trace_.n_promote; break;
    case EventKind::Terminate: ++trace_.n_terminate; break;
  }
}

void Stage1Engine::propose(int m, int w) {
  if (m < 0 || m >= inst_->n_men() || w < 0 || w >= inst_->n_women() || !inst_->acceptable(m, w)) {
    throw std::logic_error("propose: not an acceptable pair");
  }
  if (men_[m].in_history[w]) throw std::logic_error("propose: woman is in the rejection history");
  if (men_[m].terminated) throw std::logic_error("propose: man has terminated");

  std::vector<std::pair<int, int>> pending{{m, w}};
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    step(a, b, pending);
  }
}

void Stage1Engine::step(int a, int b, std::vector<std::pair<int, int>>& pending) {
  if (++steps_ > step_limit_) {
    throw std::logic_error("stage 1 exceeded its step bound; proposal process is not terminating");
  }
  if (graph_.woman_degree(b) < cap_) {
    graph_.add(a, b);
    record(EventKind::Accept, a, b);
    return;
  }
  if (try_bounce(a, b)) return;
  if (try_forward(a, b, pending)) return;
  reject_step(a, b);
}

// Bouncing or forwarding a held proposal lets `a` take its slot at b. A
// woman never takes in a man she ranks below one she already rejected:
// every man she holds stays weakly preferred to every man she turned away,
// which is what makes the output stable.
bool Stage1Engine::admissible(int a, int b) const {
  return inst_->woman(b).rank(a) <= reject_floor_[b];
}

// A(b) ascending without the incoming man, who is scanned last. Held men
// are skipped when the incoming man may not replace them.
std::vector<int> Stage1Engine::scan_order(int a, int b) const {
  std::vector<int> order;
  order.reserve(graph_.holders(b).size() + 1);
  if (admissible(a, b)) {
    for (int h : graph_.holders(b)) {
      if (h != a) order.push_back(h);
    }
  }
  order.push_back(a);
  return order;
}

bool Stage1Engine::try_bounce(int a, int b) {
  for (int alpha : scan_order(a, b)) {
    for (int beta : inst_->man(alpha).group_of(b)) {
      if (beta == b || graph_.woman_degree(beta) >= cap_) continue;
      if (alpha != a) {
        graph_.remove(alpha, b);
        graph_.add(a, b);
      }
      graph_.add(alpha, beta);
      record(EventKind::Bounce, a, b, alpha, beta);
      return true;
    }
  }
  return false;
}

bool Stage1Engine::try_forward(int a, int b, std::vector<std::pair<int, int>>& pending) {
  for (int alpha : scan_order(a, b)) {
    const int held = graph_.multiplicity(alpha, b) + (alpha == a ? 1 : 0);
    if (held < 2) continue;
    for (int beta : inst_->man(alpha).group_of(b)) {
      if (beta == b || men_[alpha].in_history[beta] || graph_.multiplicity(alpha, beta) > 0) continue;
      if (alpha != a) {
        graph_.remove(alpha, b);
        graph_.add(a, b);
      }
      record(EventKind::Forward, a, b, alpha, beta);
      pending.emplace_back(alpha, beta);
      return true;
    }
  }
  return false;
}

void Stage1Engine::reject_step(int a, int b) {
  const PrefList& prefs = inst_->woman(b);
  std::vector<int> candidates;
  for (int h : graph_.holders(b)) {
    if (h != a) candidates.push_back(h);
  }
  candidates.push_back(a);

  // Least desirable: worst tie group, then lowest promotion status.
  int worst_rank = -1;
  for (int c : candidates) worst_rank = std::max(worst_rank, prefs.rank(c));
  Status lowest = Status::Promoted2;
  for (int c : candidates) {
    if (prefs.rank(c) == worst_rank) lowest = std::min(lowest, men_[c].status);
  }
  int rejected = kUnmatched;
  int best_count = 0;
  for (int c : candidates) {
    if (prefs.rank(c) != worst_rank || men_[c].status != lowest) continue;
    const int count = graph_.multiplicity(c, b) + (c == a ? 1 : 0);
    if (count > best_count || (count == best_count && c < rejected)) {
      best_count = count;
      rejected = c;
    }
  }

  if (rejected != a) {
    graph_.remove(rejected, b);
    graph_.add(a, b);
  }
  record(EventKind::Reject, rejected, b, a);
  reject_floor_[b] = std::min(reject_floor_[b], prefs.rank(rejected));
  trace_.popular[b] = true;
  trace_.rejected_pair[static_cast<std::size_t>(rejected) * inst_->n_women() + b] = 1;

  Man& man = men_[rejected];
  if (!man.in_history[b]) {
    man.in_history[b] = 1;
    ++man.history_size;
  }
  if (man.terminated || man.history_size != static_cast<int>(inst_->man(rejected).size())) return;
  if (man.status != Status::Promoted2) {
    man.status = static_cast<Status>(static_cast<int>(man.status) + 1);
    std::fill(man.in_history.begin(), man.in_history.end(), 0);
    man.history_size = 0;
    trace_.final_status[rejected] = man.status;
    record(EventKind::Promote, rejected, b, kUnmatched, kUnmatched, man.status);
  } else {
    man.terminated = true;
    record(EventKind::Terminate, rejected, b, kUnmatched, kUnmatched, man.status);
  }
}

void Stage1Engine::run() {
  for (int m = next_man(); m != kUnmatched; m = next_man()) propose(m, next_woman(m));
}

ManState Stage1Engine::man_state(int m) const {
  ManState s;
  s.status = men_[m].status;
  s.placed = graph_.man_degree(m);
  s.terminated = men_[m].terminated;
  for (int w = 0; w < inst_->n_women(); ++w) {
    if (men_[m].in_history[w]) s.rejection_history.push_back(w);
  }
  return s;
}

Stage1Result Stage1Engine::result() const {
  Stage1Result r{graph_, trace_, {}};
  r.men.reserve(men_.size());
  for (int m = 0; m < inst_->n_men(); ++m) r.men.push_back(man_state(m));
  return r;
}

Stage1Result run_stage1(const Instance& inst, const Policy& policy) {
  Stage1Engine engine(inst, policy);
  engine.run();
  return engine.result();
}

// ---------------------------------------------------------------------------
// Export

std::string trace_to_jsonl(const Trace& trace) {
  using nlohmann::ordered_json;
  std::string out;
  for (const Event& e : trace.events) {
    ordered_json j;
    j["t"] = e.seq;
    j["kind"] = to_string(e.kind);
    j["man"] = e.man + 1;
    j["woman"] = e.woman + 1;
    if (e.aux_man != kUnmatched) j["aux_man"] = e.aux_man + 1;
    if (e.aux_woman != kUnmatched) j["aux_woman"] = e.aux_woman + 1;
    if (e.status) j["status"] = static_cast<int>(*e.status);
    out += j.dump();
    out += '\n';
  }
  ordered_json s;
  s["summary"] = true;
  s["n_accept"] = trace.n_accept;
  s["n_bounce"] = trace.n_bounce;
  s["n_forward"] = trace.n_forward;
  s["n_reject"] = trace.n_reject;
  s["n_promote"] = trace.n_promote;
  s["n_terminate"] = trace.n_terminate;
  auto popular = ordered_json::array();
  for (std::size_t w = 0; w < trace.popular.size(); ++w) {
    if (trace.popular[w]) popular.push_back(w + 1);
  }
  s["popular"] = popular;
  auto status = ordered_json::array();
  for (Status st : trace.final_status) status.push_back(static_cast<int>(st));
  s["final_status"] = status;
  out += s.dump();
  out += '\n';
  return out;
}

std::string graph_to_text(const ProposalGraph& g) {
  std::ostringstream os;
  for (const auto& e : g.edges()) os << e.man + 1 << ' ' << e.woman + 1 << ' ' << e.count << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Final-state checks

namespace {

std::string pair_str(int m, int w) {
  return "(m" + std::to_string(m + 1) + ", w" + std::to_string(w + 1) + ")";
}

}  // namespace

std::vector<std::string> check_graph_invariants(const Instance& inst, const Stage1Result& r) {
  std::vector<std::string> bad;
  const auto& g = r.graph;
  const int L = inst.tie_cap();
  for (int m = 0; m < inst.n_men(); ++m) {
    if (g.man_degree(m) > L) bad.push_back("deg(m" + std::to_string(m + 1) + ") > L");
  }
  for (int w = 0; w < inst.n_women(); ++w) {
    if (g.woman_degree(w) > L) bad.push_back("deg(w" + std::to_string(w + 1) + ") > L");
  }
  for (const auto& e : g.edges()) {
    if (!inst.acceptable(e.man, e.woman)) bad.push_back(pair_str(e.man, e.woman) + " not in E");
  }
  for (int m = 0; m < inst.n_men(); ++m) {
    const ManState& s = r.men[m];
    const std::string who = "m" + std::to_string(m + 1);
    for (int w : s.rejection_history) {
      if (!inst.acceptable(m, w)) bad.push_back(who + ": rejection history outside N(a)");
    }
    if (s.placed != g.man_degree(m)) bad.push_back(who + ": placed != degree");
    const bool exhausted = s.rejection_history.size() == inst.man(m).size();
    if (s.terminated && !(s.status == Status::Promoted2 && exhausted)) {
      bad.push_back(who + ": terminated without being 2-promoted and exhausted");
    }
    if (!(g.man_degree(m) == L || s.terminated || inst.man(m).empty())) {
      bad.push_back(who + ": neither fully placed nor terminated at the end");
    }
    if (s.status != r.trace.final_status[m]) bad.push_back(who + ": trace status disagrees");
  }

  std::vector<bool> rejecting(inst.n_women(), false);
  std::size_t counts[6] = {};
  for (const Event& e : r.trace.events) {
    ++counts[static_cast<int>(e.kind)];
    if (e.kind == EventKind::Reject) rejecting[e.woman] = true;
  }
  for (int w = 0; w < inst.n_women(); ++w) {
    if (rejecting[w] != static_cast<bool>(r.trace.popular[w])) {
      bad.push_back("w" + std::to_string(w + 1) + ": popular flag disagrees with reject events");
    }
  }
  const auto& t = r.trace;
  if (counts[0] != t.n_accept || counts[1] != t.n_bounce || counts[2] != t.n_forward ||
      counts[3] != t.n_reject || counts[4] != t.n_promote || counts[5] != t.n_terminate) {
    bad.push_back("event counters disagree with the event log");
  }
  return bad;
}

std::vector<std::string> check_step_counters(const Instance& inst, const Trace& t) {
  std::vector<std::string> bad;
  const std::size_t L = inst.tie_cap();
  const std::size_t A = inst.n_men();
  const std::size_t B = inst.n_women();
  if (t.n_bounce > L * B) {
    bad.push_back("bounces " + std::to_string(t.n_bounce) + " > L|B| = " + std::to_string(L * B));
  }
  if (t.n_forward > 3 * A * B) {
    bad.push_back("forwards " + std::to_string(t.n_forward) + " > 3|A||B| = " + std::to_string(3 * A * B));
  }
  if (t.n_reject > 3 * L * A * B) {
    bad.push_back("rejections " + std::to_string(t.n_reject) + " > 3L|A||B| = " +
                  std::to_string(3 * L * A * B));
  }
  return bad;
}

std::vector<std::string> check_tied_free_woman_unpopular(const Instance& inst, const Stage1Result& r) {
  std::vector<std::string> bad;
  const int L = inst.tie_cap();
  for (const auto& e : r.graph.edges()) {
    if (!r.trace.popular[e.woman]) continue;
    for (int other : inst.man(e.man).group_of(e.woman)) {
      if (other != e.woman && r.graph.woman_degree(other) < L) {
        bad.push_back(pair_str(e.man, e.woman) + " held by a popular woman while tied w" +
                      std::to_string(other + 1) + " is unsuccessful");
      }
    }
  }
  return bad;
}

std::vector<std::string> check_rejected_tie_holds_edge(const Instance& inst, const Stage1Result& r) {
  std::vector<std::string> bad;
  for (const auto& e : r.graph.edges()) {
    if (e.count < 2 || r.men[e.man].status != Status::Basic) continue;
    for (int other : inst.woman(e.woman).group_of(e.man)) {
      if (r.trace.ever_rejected(other, e.woman) && r.graph.multiplicity(other, e.woman) == 0) {
        bad.push_back("w" + std::to_string(e.woman + 1) + " holds two proposals of basic m" +
                      std::to_string(e.man + 1) + ", rejected tied m" + std::to_string(other + 1) +
                      " and holds none of his");
      }
    }
  }
  return bad;
}

}  // namespace smti
