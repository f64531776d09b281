#include <gtest/gtest.h>

#include <json.hpp>

#include "smti/audit.hpp"
#include "smti/generate.hpp"
#include "smti/oracle.hpp"
#include "smti/pipeline.hpp"
#include "support/oracles.hpp"

namespace smti {
namespace {

PrefList P(std::vector<std::vector<int>> groups) { return PrefList(std::move(groups)); }

struct TightRun {
  Instance inst;
  Solution sol;
  Matching opt;
};

// The L=2 execution described alongside the tight family ends in
// {(a0,b0), (a1a,b1g), (a1b,b1a)}; our Stage 2 picks another maximum
// saturating matching of the same G', {(a0,b1g), (a1a,b1a), (a1b,b0)}.
Matching scripted_m() {
  Matching m(4, 4);
  m.add(0, 0);
  m.add(1, 3);
  m.add(2, 1);
  return m;
}

TightRun tight_run(int L) {
  Instance inst = gen_tight(L);
  Solution sol = solve(inst);
  return {std::move(inst), std::move(sol), tight_optimum(L)};
}

const PairTokens* find_pair(const EdgeClassification& cls, int a, int b) {
  for (const auto& p : cls.pairs) {
    if (p.man == a && p.woman == b) return &p;
  }
  return nullptr;
}

TEST(Classify, TightTwoGammaWoman) {
  const TightRun r = tight_run(2);
  const EdgeClassification cls = classify(r.inst, r.sol.stage1.graph, r.sol.stage1.trace, scripted_m(), r.opt);
  // (a0, b1g) is in neither matching; a0 ~ a1a at b1g and OPT(b1g) = a1g
  // is unsuccessful, so the token is a bad input.
  const PairTokens* p = find_pair(cls, 0, 3);
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->tokens, 1);
  EXPECT_EQ(p->input, TokenKind::Bad);
  EXPECT_EQ(p->output, TokenKind::Good);
  const PairTokens* q = find_pair(cls, 1, 3);
  ASSERT_NE(q, nullptr);
  EXPECT_EQ(q->tokens, 0);
  EXPECT_EQ(cls.bad_inputs[3], 1);
  EXPECT_EQ(cls.good_inputs[3], 0);
}

TEST(Classify, TightTwoGammaWomanPipelineMatching) {
  const TightRun r = tight_run(2);
  ASSERT_TRUE(r.sol.matching.contains(0, 3));
  const EdgeClassification cls = classify(r.inst, r.sol.stage1.graph, r.sol.stage1.trace, r.sol.matching, r.opt);
  // Now (a1a, b1g) carries the token; a1a >_b1g a1g = OPT(b1g).
  const PairTokens* p = find_pair(cls, 1, 3);
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->tokens, 1);
  EXPECT_EQ(p->input, TokenKind::Bad);
  EXPECT_EQ(cls.bad_inputs[3], 1);
}

TEST(Classify, UnpopularWomenOnlyHaveGoodInputs) {
  testing::sweep(200, 31, [](const testing::SweepCase& c) {
    const Solution sol = solve(c.inst);
    const Matching opt = brute_force_opt(c.inst).matching;
    const auto cls = classify(c.inst, sol.stage1.graph, sol.stage1.trace, sol.matching, opt);
    for (int b = 0; b < c.inst.n_women(); ++b) {
      if (!sol.stage1.trace.popular[b]) EXPECT_EQ(cls.bad_inputs[b], 0);
    }
  });
}

TEST(Classify, TokenCounts) {
  // s = n - [in M] - [in OPT], floored at zero.
  testing::sweep(150, 61, [](const testing::SweepCase& c) {
    const Solution sol = solve(c.inst);
    const Matching opt = brute_force_opt(c.inst).matching;
    const auto cls = classify(c.inst, sol.stage1.graph, sol.stage1.trace, sol.matching, opt);
    for (const auto& p : cls.pairs) {
      int expect = p.multiplicity;
      if (sol.matching.contains(p.man, p.woman)) --expect;
      if (opt.contains(p.man, p.woman)) --expect;
      EXPECT_EQ(p.tokens, std::max(expect, 0));
    }
  });
}

TEST(ClassifyProperty, AgreesWithPositiveDefinitions) {
  const Policy policies[] = {Policy::index_order(), Policy::shuffled(17)};
  testing::sweep(400, 1234, [&](const testing::SweepCase& c) {
    const Matching opt = brute_force_opt(c.inst).matching;
    for (const Policy& pol : policies) {
      const Solution sol = solve(c.inst, pol);
      const auto cls = classify(c.inst, sol.stage1.graph, sol.stage1.trace, sol.matching, opt);
      for (const auto& p : cls.pairs) {
        EXPECT_EQ(p.input == TokenKind::Good,
                  testing::good_input(c.inst, sol.stage1, sol.matching, opt, p.man, p.woman))
            << "seed " << c.spec.seed << " pair " << p.man << "," << p.woman;
        EXPECT_EQ(p.output == TokenKind::Good,
                  testing::good_output(c.inst, sol.stage1, sol.matching, opt, p.man, p.woman))
            << "seed " << c.spec.seed << " pair " << p.man << "," << p.woman;
      }
    }
  }, true);
}

TEST(Classify, RejectsForeignArtifacts) {
  const TightRun r = tight_run(2);
  const Instance other = gen_tight(3);
  EXPECT_THROW(classify(other, r.sol.stage1.graph, r.sol.stage1.trace, tight_optimum(3), tight_optimum(3)),
               std::invalid_argument);
  Matching bad(4, 4);
  bad.add(3, 0);
  EXPECT_THROW(classify(r.inst, r.sol.stage1.graph, r.sol.stage1.trace, bad, r.opt), std::invalid_argument);
}

TEST(Costs, TightTwoTotals) {
  const TightRun r = tight_run(2);
  for (const Matching& m : {scripted_m(), r.sol.matching}) {
    const auto cls = classify(r.inst, r.sol.stage1.graph, r.sol.stage1.trace, m, r.opt);
    const CostVector cost = costs(cls, r.sol.stage1.graph);
    EXPECT_EQ(cost.total(), 12);  // = 2L|M|
    EXPECT_EQ(cost.of(PersonId::man(3)), 0);  // a1g holds nothing at the end
    EXPECT_EQ(cost.of(PersonId::woman(3)), 2);
  }
}

TEST(Costs, IsolatedNodeIsFree) {
  const Instance inst({P({{0}}), P({})}, {P({{0}})});
  const Solution sol = solve(inst);
  const Matching opt = brute_force_opt(inst).matching;
  const auto cls = classify(inst, sol.stage1.graph, sol.stage1.trace, sol.matching, opt);
  EXPECT_EQ(costs(cls, sol.stage1.graph).of(PersonId::man(1)), 0);
}

TEST(Decompose, IdenticalMatchings) {
  const Matching opt = tight_optimum(2);
  Matching m(5, 4);
  for (auto [a, b] : opt.pairs()) m.add(a, b);
  const auto comps = decompose(m, m);
  int cycles = 0;
  for (const auto& c : comps) {
    if (c.kind == ComponentKind::Trivial) {
      EXPECT_EQ(c.nodes.size(), 1u);
      continue;
    }
    EXPECT_EQ(c.kind, ComponentKind::AlternatingCycle);
    EXPECT_EQ(c.length, 2);
    EXPECT_EQ(c.m_edges, 1);
    EXPECT_EQ(c.opt_edges, 1);
    ++cycles;
  }
  EXPECT_EQ(cycles, 4);
  EXPECT_EQ(comps.size(), 5u);
}

TEST(Decompose, EmptyAlgorithmMatching) {
  const Matching opt = tight_optimum(3);
  const auto comps = decompose(Matching(7, 7), opt);
  ASSERT_EQ(comps.size(), 7u);
  for (const auto& c : comps) {
    EXPECT_EQ(c.kind, ComponentKind::MAugmenting);
    EXPECT_EQ(c.length, 1);
    EXPECT_EQ(c.nodes.front().side, Side::Man);
  }
}

std::vector<Component> m_augmenting(const Matching& m, const Matching& opt) {
  std::vector<Component> out;
  for (const auto& c : decompose(m, opt)) {
    if (c.kind == ComponentKind::MAugmenting) out.push_back(c);
  }
  return out;
}

// (a0, b0) is in both matchings and forms its own 2-cycle, so the path is
// a1g-b1g-a1a-b1a-a1b-b1b, of length 5.
TEST(Decompose, TightTwoScriptedMatching) {
  const auto aug = m_augmenting(scripted_m(), tight_optimum(2));
  ASSERT_EQ(aug.size(), 1u);
  EXPECT_EQ(aug[0].length, 5);
  const std::vector<PersonId> path = {PersonId::man(3), PersonId::woman(3), PersonId::man(1),
                                      PersonId::woman(1), PersonId::man(2), PersonId::woman(2)};
  EXPECT_EQ(aug[0].nodes, path);
}

// Pipeline matching: (a1a, b1a) is the shared pair and the path runs
// a1g-b1g-a0-b0-a1b-b1b.
TEST(Decompose, TightTwoPipelineMatching) {
  const TightRun r = tight_run(2);
  const auto comps = decompose(r.sol.matching, r.opt);
  std::vector<Component> aug;
  for (const auto& c : comps) {
    if (c.kind == ComponentKind::MAugmenting) aug.push_back(c);
  }
  ASSERT_EQ(aug.size(), 1u);
  EXPECT_EQ(aug[0].length, 5);
  EXPECT_EQ(aug[0].opt_edges, 3);
  EXPECT_EQ(aug[0].m_edges, 2);
  const std::vector<PersonId> path = {PersonId::man(3), PersonId::woman(3), PersonId::man(0),
                                      PersonId::woman(0), PersonId::man(2), PersonId::woman(2)};
  EXPECT_EQ(aug[0].nodes, path);
}

TEST(Decompose, PathsAndCycles) {
  // M: m1-w1, m2-w2. OPT: m1-w2, m2-w1 (4-cycle); OPT: m3-w3 vs M: m3-w4
  // gives a path w3-m3-w4.
  Matching m(3, 4);
  m.add(0, 0);
  m.add(1, 1);
  m.add(2, 3);
  Matching opt(3, 4);
  opt.add(0, 1);
  opt.add(1, 0);
  opt.add(2, 2);
  const auto comps = decompose(m, opt);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].kind, ComponentKind::AlternatingCycle);
  EXPECT_EQ(comps[0].length, 4);
  EXPECT_EQ(comps[1].kind, ComponentKind::AlternatingPath);
  EXPECT_EQ(comps[1].length, 2);
}

TEST(DecomposeProperty, SymmetricUpToLabels) {
  testing::sweep(200, 555, [](const testing::SweepCase& c) {
    const Matching m = solve(c.inst, Policy::shuffled(c.spec.seed)).matching;
    const Matching opt = brute_force_opt(c.inst).matching;
    const auto fwd = decompose(m, opt);
    const auto rev = decompose(opt, m);
    ASSERT_EQ(fwd.size(), rev.size());
    std::size_t covered = 0;
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      covered += fwd[i].nodes.size();
      EXPECT_EQ(fwd[i].length, rev[i].length);
      EXPECT_EQ(fwd[i].m_edges, rev[i].opt_edges);
      ComponentKind swapped = rev[i].kind;
      if (swapped == ComponentKind::MAugmenting) {
        swapped = ComponentKind::OptAugmenting;
      } else if (swapped == ComponentKind::OptAugmenting) {
        swapped = ComponentKind::MAugmenting;
      }
      EXPECT_EQ(fwd[i].kind, swapped);
    }
    EXPECT_EQ(covered, static_cast<std::size_t>(c.inst.n_men() + c.inst.n_women()));
  }, true);
}

TEST(CheckAll, TightFamilyPassesWithEquality) {
  for (int L = 2; L <= 6; ++L) {
    const TightRun r = tight_run(L);
    const AuditReport rep = check_all(r.inst, r.sol.stage1, r.sol.matching, r.opt);
    EXPECT_TRUE(rep.all_pass()) << "L=" << L << " " << rep.to_json();
    EXPECT_EQ(rep.alg_size, static_cast<std::size_t>(2 * L - 1));
    EXPECT_EQ(rep.opt_size, static_cast<std::size_t>(3 * L - 2));
  }
  const TightRun r = tight_run(2);
  const AuditReport scripted = check_all(r.inst, r.sol.stage1, scripted_m(), r.opt);
  EXPECT_TRUE(scripted.all_pass()) << scripted.to_json();
  // (L+1)|OPT| + (L-2)(|OPT|-|M|) = 12 = total cost.
  const auto cls = classify(r.inst, r.sol.stage1.graph, r.sol.stage1.trace, scripted_m(), r.opt);
  EXPECT_EQ(costs(cls, r.sol.stage1.graph).total(), 12);
}

TEST(CheckAll, FlagsCorruptedInputs) {
  const TightRun r = tight_run(2);
  const AuditReport rep = check_all(r.inst, r.sol.stage1, Matching(4, 4), r.opt);
  EXPECT_FALSE(rep.all_pass());
  const auto failed = rep.failed();
  auto has = [&](const std::string& n) { return std::find(failed.begin(), failed.end(), n) != failed.end(); };
  EXPECT_TRUE(has("output_stable"));
  EXPECT_TRUE(has("saturation"));
  EXPECT_TRUE(has("no_short_m_augmenting_path"));
  EXPECT_TRUE(has("approximation_ratio"));
  ASSERT_NE(rep.find("saturation"), nullptr);
  EXPECT_FALSE(rep.find("saturation")->witnesses.empty());
  EXPECT_EQ(rep.find("nonexistent"), nullptr);
}

TEST(CheckAll, JsonShape) {
  const TightRun r = tight_run(2);
  const AuditReport rep = check_all(r.inst, r.sol.stage1, r.sol.matching, r.opt);
  const auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["summary"]["alg"], 3);
  EXPECT_EQ(j["summary"]["opt"], 4);
  EXPECT_EQ(j["summary"]["ratio"], "4/3");
  EXPECT_EQ(j["summary"]["all_pass"], true);
  EXPECT_EQ(j["checks"].size(), rep.checks.size());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("claim"));
    EXPECT_TRUE(c["witnesses"].is_array());
  }
}

TEST(CheckAllProperty, RandomRunsUnderAllPolicies) {
  const Policy policies[] = {Policy::index_order(), Policy::shuffled(1), Policy::shuffled(2),
                             {Policy::Order::Shuffled, Policy::Order::Index, 4}};
  testing::sweep(300, 4242, [&](const testing::SweepCase& c) {
    const Matching opt = brute_force_opt(c.inst).matching;
    for (const Policy& pol : policies) {
      const Solution sol = solve(c.inst, pol);
      const AuditReport rep = check_all(c.inst, sol.stage1, sol.matching, opt);
      EXPECT_TRUE(rep.all_pass()) << "seed " << c.spec.seed << "\n" << rep.to_json();
    }
  }, true);
}

TEST(CheckAllProperty, StrictInstancesReduceToCostBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random({5, 5, 0.7, 1, seed});
    const Solution sol = solve(inst);
    const Matching opt = brute_force_opt(inst).matching;
    ASSERT_EQ(sol.matching.size(), opt.size());
    const AuditReport rep = check_all(inst, sol.stage1, sol.matching, opt);
    EXPECT_TRUE(rep.all_pass()) << rep.to_json();
  }
}

}  // namespace
}  // namespace smti
