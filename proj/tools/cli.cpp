#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "smti/audit.hpp"
#include "smti/generate.hpp"
#include "smti/io.hpp"
#include "smti/oracle.hpp"
#include "smti/pipeline.hpp"
#include "smti/stability.hpp"

namespace smti::cli {

namespace {

// Raised for anything the user can fix: unreadable files, bad flags.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

Instance load_instance(const std::string& path, std::optional<int> tiecap = std::nullopt) {
  Instance inst = parse_instance(read_file(path));
  if (tiecap) inst = Instance(inst.men(), inst.women(), *tiecap);
  return inst;
}

Policy make_policy(const std::string& name, std::optional<std::uint64_t> seed) {
  Policy p;
  p.seed = seed.value_or(0);
  std::string mode = name;
  if (mode.empty()) mode = seed ? "shuffle" : "index";
  if (mode == "index") {
  } else if (mode == "shuffle") {
    p.man_order = p.woman_tiebreak = Policy::Order::Shuffled;
  } else if (mode == "shuffle-men") {
    p.man_order = Policy::Order::Shuffled;
  } else if (mode == "shuffle-women") {
    p.woman_tiebreak = Policy::Order::Shuffled;
  } else {
    throw InputError("unknown policy '" + name + "'");
  }
  return p;
}

struct Fraction {
  long long num = 0;
  long long den = 1;

  // Empty matchings compare as ratio 1.
  bool less_than(const Fraction& o) const {
    const long long a = den == 0 ? 1 : num, b = den == 0 ? 1 : den;
    const long long c = o.den == 0 ? 1 : o.num, d = o.den == 0 ? 1 : o.den;
    return a * d < c * b;
  }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct BenchRow {
  std::string seed_label;
  int n = 0;
  int L = 1;
  std::size_t edges = 0;
  std::size_t alg = 0;
  std::size_t opt = 0;
  bool pass = false;
  std::string error;
};

// `known_opt`, when given, must be a perfect stable matching; it is then
// maximum without a search.
BenchRow bench_row(const Instance& inst, int limit, const std::optional<Matching>& known_opt = std::nullopt) {
  BenchRow row;
  row.n = std::max(inst.n_men(), inst.n_women());
  row.L = inst.tie_cap();
  row.edges = inst.num_edges();
  const Solution sol = solve(inst);
  Matching opt;
  if (known_opt) {
    const auto n = static_cast<std::size_t>(std::min(inst.n_men(), inst.n_women()));
    if (known_opt->size() != n || !is_stable(inst, *known_opt)) {
      throw std::logic_error("reference optimum is not a perfect stable matching");
    }
    opt = *known_opt;
  } else {
    opt = brute_force_opt(inst, limit).matching;
  }
  const AuditReport report = check_all(inst, sol.stage1, sol.matching, opt);
  row.alg = sol.matching.size();
  row.opt = opt.size();
  const long long L = row.L;
  const bool floor_ok =
      (3 * L - 2) * static_cast<long long>(row.alg) >= (2 * L - 1) * static_cast<long long>(row.opt);
  row.pass = report.all_pass() && floor_ok;
  if (!row.pass) {
    auto failed = report.failed();
    if (!floor_ok) failed.emplace_back("floor");
    for (const auto& f : failed) row.error += (row.error.empty() ? "" : ",") + f;
  }
  return row;
}

int cmd_bench(const std::string& family, int count, int men, int women, double density, int maxtie,
              std::uint64_t seed0, const std::string& csv, int limit, int jobs, std::ostream& out,
              std::ostream& err) {
  std::vector<std::function<BenchRow()>> makers;
  std::vector<std::string> labels;
  if (family == "random") {
    if (count < 0) throw InputError("--count must be non-negative");
    for (int i = 0; i < count; ++i) {
      const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
      makers.emplace_back([=] { return bench_row(gen_random({men, women, density, maxtie, seed}), limit); });
      labels.push_back(std::to_string(seed));
    }
  } else if (family == "tight") {
    if (maxtie < 2) throw InputError("--family tight needs --maxtie >= 2");
    for (int L = 2; L <= maxtie; ++L) {
      makers.emplace_back([=] { return bench_row(gen_tight(L), limit, tight_optimum(L)); });
      labels.push_back("tight" + std::to_string(L));
    }
  } else {
    throw InputError("unknown family '" + family + "'");
  }

  std::vector<BenchRow> rows(makers.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < makers.size(); i = next++) {
      try {
        rows[i] = makers[i]();
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
      rows[i].seed_label = labels[i];
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(makers.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream table;
  table << "seed,n,L,edges,alg,opt,ratio,all_checks_pass\n";
  bool all_ok = true;
  std::optional<Fraction> min_ratio;
  int max_L = 1;
  for (const BenchRow& r : rows) {
    // Generator and oracle failures are input problems, not check failures.
    if (r.n == 0) {
      err << "instance " << r.seed_label << ": " << r.error << '\n';
      return kInputError;
    }
    const Fraction ratio{static_cast<long long>(r.alg), static_cast<long long>(r.opt)};
    table << r.seed_label << ',' << r.n << ',' << r.L << ',' << r.edges << ',' << r.alg << ',' << r.opt
          << ',' << ratio.str() << ',' << (r.pass ? "true" : "false") << '\n';
    if (!r.pass) {
      all_ok = false;
      err << "instance " << r.seed_label << " failed: " << r.error << '\n';
    }
    if (!min_ratio || ratio.less_than(*min_ratio)) min_ratio = ratio;
    max_L = std::max(max_L, r.L);
  }
  if (csv.empty() || csv == "-") {
    out << table.str();
  } else {
    write_file(csv, table.str());
  }
  const Fraction floor{2LL * max_L - 1, 3LL * max_L - 2};
  out << "instances " << rows.size() << ", min ratio |M|/|OPT| = "
      << (min_ratio ? min_ratio->str() : std::string("n/a")) << ", floor at L=" << max_L << " = "
      << floor.str() << (all_ok ? "" : ", FAILURES") << '\n';
  return all_ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable matching with ties and incomplete lists", "smti"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string matching_path;
  std::optional<int> tiecap;
  std::optional<std::uint64_t> seed;
  std::string policy;
  std::string trace_path;
  std::string gprime_path;
  int limit = kDefaultOracleLimit;

  auto* solve_cmd = app.add_subcommand("solve", "Run the two-stage algorithm and print the matching");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--tiecap", tiecap, "Tie bound L (at least the longest tie)");
  solve_cmd->add_option("--seed", seed, "Seed for shuffled proposal order");
  solve_cmd->add_option("--policy", policy, "index | shuffle | shuffle-men | shuffle-women");
  solve_cmd->add_option("--trace", trace_path, "Write the event trace as JSON lines");
  solve_cmd->add_option("--gprime", gprime_path, "Write the proposal graph as 'man woman count' lines");

  auto* opt_cmd = app.add_subcommand("opt", "Exhaustive maximum stable matching");
  opt_cmd->add_option("instance", instance_path, "Instance file")->required();
  opt_cmd->add_option("--limit", limit, "Largest side size the search accepts");

  auto* verify_cmd = app.add_subcommand("verify", "Check a matching for blocking pairs");
  verify_cmd->add_option("instance", instance_path, "Instance file")->required();
  verify_cmd->add_option("matching", matching_path, "Matching file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  std::string gen_out;
  RandomSpec spec;
  auto* gen_random_cmd = gen_cmd->add_subcommand("random", "Seeded random instance");
  gen_random_cmd->add_option("--men", spec.n_men)->required();
  gen_random_cmd->add_option("--women", spec.n_women)->required();
  gen_random_cmd->add_option("--density", spec.density, "Edge probability in (0, 1]");
  gen_random_cmd->add_option("--maxtie", spec.max_tie, "Largest tie group");
  gen_random_cmd->add_option("--seed", spec.seed);
  gen_random_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");
  int tight_L = 2;
  auto* gen_tight_cmd = gen_cmd->add_subcommand("tight", "Worst-case family for a given L");
  gen_tight_cmd->add_option("L", tight_L, "Tie bound, at least 2")->required();
  gen_tight_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  auto* audit_cmd = app.add_subcommand("audit", "Check the cost accounting of one run against an optimum");
  audit_cmd->add_option("instance", instance_path, "Instance file")->required();
  audit_cmd->add_option("--limit", limit, "Largest side size the oracle accepts");
  audit_cmd->add_option("--tiecap", tiecap, "Tie bound L (at least the longest tie)");
  audit_cmd->add_option("--seed", seed, "Seed for shuffled proposal order");
  audit_cmd->add_option("--policy", policy, "index | shuffle | shuffle-men | shuffle-women");

  std::string family = "random";
  int count = 100;
  int men = 6;
  int women = 6;
  double density = 0.6;
  int maxtie = 2;
  std::uint64_t seed0 = 1;
  std::string csv;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* bench_cmd = app.add_subcommand("bench", "Audit a batch of instances and summarise the ratios");
  bench_cmd->add_option("--family", family, "random | tight (tight runs L = 2..maxtie)");
  bench_cmd->add_option("--count", count, "Number of random instances");
  bench_cmd->add_option("--men", men);
  bench_cmd->add_option("--women", women);
  bench_cmd->add_option("--density", density);
  bench_cmd->add_option("--maxtie", maxtie);
  bench_cmd->add_option("--seed0", seed0, "Seed of the first instance");
  bench_cmd->add_option("--csv", csv, "CSV output file (default stdout)");
  bench_cmd->add_option("--limit", limit, "Largest side size the oracle accepts");
  bench_cmd->add_option("--jobs", jobs, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (solve_cmd->parsed()) {
      const Instance inst = load_instance(instance_path, tiecap);
      const Solution sol = solve(inst, make_policy(policy, seed));
      if (!trace_path.empty()) write_file(trace_path, trace_to_jsonl(sol.stage1.trace));
      if (!gprime_path.empty()) write_file(gprime_path, graph_to_text(sol.stage1.graph));
      out << serialize_matching(sol.matching);
      return kOk;
    }
    if (opt_cmd->parsed()) {
      const Instance inst = load_instance(instance_path);
      const OptResult r = brute_force_opt(inst, limit);
      out << "# size " << r.size << " (optima: " << r.count << ")\n" << serialize_matching(r.matching);
      return kOk;
    }
    if (verify_cmd->parsed()) {
      const Instance inst = load_instance(instance_path);
      const Matching m = parse_matching(read_file(matching_path), inst);
      const auto blocking = find_blocking_pairs(inst, m);
      if (blocking.empty()) {
        out << "stable\n";
        return kOk;
      }
      out << "# blocking pairs: " << blocking.size() << '\n';
      for (auto [a, b] : blocking) out << a + 1 << ' ' << b + 1 << '\n';
      return kCheckFailed;
    }
    if (gen_cmd->parsed()) {
      const Instance inst = gen_tight_cmd->parsed() ? gen_tight(tight_L) : gen_random(spec);
      const std::string text = serialize_instance(inst);
      if (gen_out.empty() || gen_out == "-") {
        out << text;
      } else {
        write_file(gen_out, text);
      }
      return kOk;
    }
    if (audit_cmd->parsed()) {
      const Instance inst = load_instance(instance_path, tiecap);
      const OptResult opt = brute_force_opt(inst, limit);
      const Solution sol = solve(inst, make_policy(policy, seed));
      const AuditReport report = check_all(inst, sol.stage1, sol.matching, opt.matching);
      out << report.to_json() << '\n';
      return report.all_pass() ? kOk : kCheckFailed;
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(family, count, men, women, density, maxtie, seed0, csv, limit, jobs, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    // Engine or extraction post-condition failures.
    err << "internal check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace smti::cli
