#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tricolor/io.hpp"
#include "tricolor/oracle.hpp"
#include "tricolor/rng.hpp"
#include "tricolor/solver.hpp"

namespace tricolor {

namespace {

using ojson = nlohmann::ordered_json;

TargetTriple to_target(const std::vector<int>& v) { return {v.at(0), v.at(1), v.at(2)}; }

// Fixed seed if given, otherwise a fresh one that is reported so the run can
// be replayed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << ojson{{"seed", s}}.dump() << '\n';
  return s;
}

struct SolveArgs {
  std::string input;
  std::vector<int> target;
  bool trace = false;
  std::string output;
  long long guard = 0;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance_file(a.input);
  const TargetTriple target = to_target(a.target);
  StreamTrace trace(err);
  const Matching m = solve(inst, target, {a.trace ? &trace : nullptr, nullptr, a.guard});
  const VerifyReport rep = verify_matching(inst, m, target);
  if (!rep.ok) throw Error(ErrorCode::InternalInvariant, "solver output failed verification: " + rep.detail);
  if (a.output.empty()) {
    out << format_matching(m);
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw Error(ErrorCode::Parse, "cannot write " + a.output);
    f << format_matching(m);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  std::string matching;
  std::vector<int> target;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Instance inst = read_instance_file(a.input);
  const Matching m = read_matching_file(a.matching);
  const VerifyReport rep = verify_matching(inst, m, to_target(a.target));
  ojson j;
  j["ok"] = rep.ok;
  j["failure"] = std::string(to_string(rep.failure));
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  j["counts"] = matching_to_json(m)["counts"];
  out << j.dump() << '\n';
  return rep.ok ? kExitOk : kExitVerifyFail;
}

struct GenArgs {
  int n = 0;
  std::optional<std::uint64_t> seed;
  bool connected = false;
  int k = 3;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(a.seed, err);
  const PermFamily f = gen_family(a.n, a.k, seed, a.connected);
  out << format_perms(f.n, f.perms);
  return kExitOk;
}

struct FuzzArgs {
  FuzzConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string policy = "mixed";
  bool failures_only = false;
};

int cmd_fuzz(FuzzArgs a, std::ostream& out, std::ostream& err) {
  a.cfg.seed = resolve_seed(a.seed, err);
  if (a.cfg.n_min < 3 || a.cfg.n_max < a.cfg.n_min) throw Error(ErrorCode::OutOfRange, "need 3 <= n-min <= n-max");
  a.cfg.policy = a.policy == "exhaustive" ? TargetPolicy::Exhaustive
                 : a.policy == "sampled"  ? TargetPolicy::Sampled
                                          : TargetPolicy::Mixed;
  const FuzzReport rep = fuzz_campaign(a.cfg);
  for (const FuzzRecord& r : rep.records) {
    if (!a.failures_only || r.failures > 0 || r.oracle_mismatches > 0) out << to_json(r).dump() << '\n';
  }
  ojson s = summary_json(rep);
  s["seed"] = a.cfg.seed;
  out << s.dump() << '\n';
  return rep.failures == 0 && rep.oracle_mismatches == 0 ? kExitOk : kExitVerifyFail;
}

struct OracleArgs {
  std::string input;
  std::vector<int> target;
  int size = -1;
  int cap = kDefaultCap;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const Instance inst = read_instance_file(a.input);
  ojson j;
  j["n"] = inst.n();
  if (!a.target.empty()) {
    j["target"] = a.target;
    j["exists"] = exists_bruteforce(inst, to_target(a.target), a.cap);
  }
  if (a.size >= 0) {
    long long count = 0;
    enumerate_matchings(
        inst, a.size,
        [&](const Matching&) {
          ++count;
          return true;
        },
        a.cap);
    j["size"] = a.size;
    j["matchings"] = count;
  }
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_tightness(TightnessConfig cfg, const std::optional<std::uint64_t>& seed, std::ostream& out,
                  std::ostream& err) {
  cfg.seed = resolve_seed(seed, err);
  const auto witnesses = search_tightness(cfg);
  long long verified = 0;
  for (const TightnessWitness& w : witnesses) {
    const bool absent = !exists_bruteforce(w.inst, w.target, cfg.cap);
    verified += absent ? 1 : 0;
    ojson j;
    j["family"] = w.family;
    j["n"] = w.inst.n();
    j["perms"] = {w.inst.perm(1), w.inst.perm(2), w.inst.perm(3)};
    j["target"] = {w.target[1], w.target[2], w.target[3]};
    j["verified"] = absent;
    out << j.dump() << '\n';
  }
  out << ojson{{"summary", true}, {"seed", cfg.seed}, {"witnesses", witnesses.size()}, {"verified", verified}}.dump()
      << '\n';
  return verified == static_cast<long long>(witnesses.size()) ? kExitOk : kExitVerifyFail;
}

int cmd_k4(K4Config cfg, const std::optional<std::uint64_t>& seed, std::ostream& out, std::ostream& err) {
  cfg.seed = resolve_seed(seed, err);
  if (cfg.n_min < 4 || cfg.n_max < cfg.n_min) throw Error(ErrorCode::NTooSmall, "need 4 <= n-min <= n-max");
  const K4Report rep = search_k4(cfg);
  for (const K4Record& r : rep.records) out << to_json(r).dump() << '\n';
  out << ojson{{"summary", true},
               {"seed", cfg.seed},
               {"instances", rep.instances},
               {"tuples", rep.tuples},
               {"counterexamples", rep.counterexamples}}
             .dump()
      << '\n';
  return rep.counterexamples == 0 ? kExitOk : kExitVerifyFail;
}

struct BenchArgs {
  std::vector<int> sizes{50, 100, 200, 500, 1000};
  std::optional<std::uint64_t> seed;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(a.seed, err);
  char line[160];
  std::snprintf(line, sizeof line, "%8s %12s %10s %8s %8s %8s\n", "n", "wall_s", "switches", "a1", "a2", "a3");
  out << line;
  bool ok = true;
  for (int n : a.sizes) {
    const Instance inst = gen_random(n, derive_seed(seed, static_cast<std::uint64_t>(n)), true);
    const int third = (n - 1) / 3;
    const TargetTriple target{third, third, n - 1 - 2 * third};
    SwitchStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    const Matching m = solve(inst, target, {nullptr, &stats, 0});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && verify_matching(inst, m, target).ok;
    std::snprintf(line, sizeof line, "%8d %12.6f %10lld %8d %8d %8d\n", n, secs, stats.switches, target[1], target[2],
                  target[3]);
    out << line;
  }
  return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matchings with prescribed color counts in a union of three perfect matchings"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "build an (a1,a2,a3)-matching with a1+a2+a3 = n-1");
  solve_cmd->add_option("--input", solve_args.input, "instance file")->required();
  solve_cmd->add_option("--target", solve_args.target, "a1 a2 a3")->required()->expected(3);
  solve_cmd->add_flag("--trace", solve_args.trace, "JSON event lines on stderr");
  solve_cmd->add_option("--output", solve_args.output, "write the matching here instead of stdout");
  solve_cmd->add_option("--guard", solve_args.guard, "step limit per switch (0: default)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check a matching against an instance and target");
  verify_cmd->add_option("--input", verify_args.input)->required();
  verify_cmd->add_option("--matching", verify_args.matching)->required();
  verify_cmd->add_option("--target", verify_args.target)->required()->expected(3);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "random instance on stdout");
  gen_cmd->add_option("--n", gen_args.n)->required();
  gen_cmd->add_option("--seed", gen_args.seed);
  gen_cmd->add_flag("--connected", gen_args.connected);
  gen_cmd->add_option("--k", gen_args.k)->check(CLI::IsMember({3, 4}));

  FuzzArgs fuzz_args;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "solve and verify random instances");
  fuzz_cmd->add_option("--trials", fuzz_args.cfg.trials);
  fuzz_cmd->add_option("--n-min", fuzz_args.cfg.n_min);
  fuzz_cmd->add_option("--n-max", fuzz_args.cfg.n_max);
  fuzz_cmd->add_option("--seed", fuzz_args.seed);
  fuzz_cmd->add_option("--policy", fuzz_args.policy)->check(CLI::IsMember({"exhaustive", "sampled", "mixed"}));
  fuzz_cmd->add_option("--exhaustive-max-n", fuzz_args.cfg.exhaustive_max_n);
  fuzz_cmd->add_option("--samples", fuzz_args.cfg.samples);
  fuzz_cmd->add_option("--oracle-cap", fuzz_args.cfg.oracle_cap);
  fuzz_cmd->add_option("--disconnected-percent", fuzz_args.cfg.disconnected_percent)->check(CLI::Range(0, 100));
  fuzz_cmd->add_option("--workers", fuzz_args.cfg.workers);
  fuzz_cmd->add_flag("--failures-only", fuzz_args.failures_only, "only print failing trials and the summary");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force existence check or matching count");
  oracle_cmd->add_option("--input", oracle_args.input)->required();
  oracle_cmd->add_option("--target", oracle_args.target)->expected(3);
  oracle_cmd->add_option("--size", oracle_args.size, "count matchings of this size");
  oracle_cmd->add_option("--cap", oracle_args.cap);

  auto* search_cmd = app.add_subcommand("search", "exhaustive searches");
  search_cmd->require_subcommand(1);
  TightnessConfig tight_cfg;
  std::optional<std::uint64_t> tight_seed;
  auto* tight_cmd = search_cmd->add_subcommand("tightness", "instances and triples summing to n with no matching");
  tight_cmd->add_option("--n-max", tight_cfg.n_max);
  tight_cmd->add_option("--seed", tight_seed);
  tight_cmd->add_option("--random-per-n", tight_cfg.random_per_n);
  tight_cmd->add_option("--max-witnesses", tight_cfg.max_witnesses);
  tight_cmd->add_option("--cap", tight_cfg.cap);
  K4Config k4_cfg;
  std::optional<std::uint64_t> k4_seed;
  auto* k4_cmd = search_cmd->add_subcommand("k4", "four matchings, every tuple summing to n-1");
  k4_cmd->add_option("--n-min", k4_cfg.n_min);
  k4_cmd->add_option("--n-max", k4_cfg.n_max);
  k4_cmd->add_option("--instances", k4_cfg.instances);
  k4_cmd->add_option("--seed", k4_seed);
  k4_cmd->add_option("--cap", k4_cfg.cap);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "solve time against n");
  bench_cmd->add_option("--n", bench_args.sizes, "instance sizes");
  bench_cmd->add_option("--seed", bench_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*verify_cmd) return cmd_verify(verify_args, out);
    if (*gen_cmd) return cmd_gen(gen_args, out, err);
    if (*fuzz_cmd) return cmd_fuzz(fuzz_args, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle_args, out);
    if (*tight_cmd) return cmd_tightness(tight_cfg, tight_seed, out, err);
    if (*k4_cmd) return cmd_k4(k4_cfg, k4_seed, out, err);
    if (*bench_cmd) return cmd_bench(bench_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_internal() ? kExitInternal : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalid;
}

}  // namespace tricolor
