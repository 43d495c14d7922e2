#include "tricolor/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "tricolor/rng.hpp"
#include "tricolor/solver.hpp"

namespace tricolor {

namespace {

constexpr int kGenerationAttempts = 2000;
constexpr int kPermutationAttempts = 20000;

void check_cap(int n, int cap) {
  if (n > cap) throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
}

// choice[u] = 0 (u unmatched) or the color of u's edge. Visits every choice
// vector with exactly `size` edges; stops when visit returns false.
class Enumerator {
 public:
  Enumerator(const PermFamily& f, int size, const std::function<bool(const std::vector<int>&)>& visit)
      : f_(f), size_(size), visit_(visit), choice_(static_cast<std::size_t>(f.n), 0),
        used_(static_cast<std::size_t>(f.n), 0) {}

  void run() { dfs(0, 0); }

 private:
  bool dfs(int u, int edges) {
    if (edges + (f_.n - u) < size_) return true;
    if (u == f_.n) return visit_(choice_);
    if (edges < size_) {
      for (int c = 1; c <= f_.k(); ++c) {
        const int b = f_.perms[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)];
        if (used_[static_cast<std::size_t>(b)]) continue;
        used_[static_cast<std::size_t>(b)] = 1;
        choice_[static_cast<std::size_t>(u)] = c;
        const bool go_on = dfs(u + 1, edges + 1);
        used_[static_cast<std::size_t>(b)] = 0;
        choice_[static_cast<std::size_t>(u)] = 0;
        if (!go_on) return false;
      }
    }
    return dfs(u + 1, edges);
  }

  const PermFamily& f_;
  int size_;
  const std::function<bool(const std::vector<int>&)>& visit_;
  std::vector<int> choice_;
  std::vector<char> used_;
};

// Pruned search for exact per-color counts.
class CountSearch {
 public:
  CountSearch(const PermFamily& f, std::vector<int> need, int skips)
      : f_(f), need_(std::move(need)), skips_(skips), used_(static_cast<std::size_t>(f.n), 0) {}

  bool run() { return dfs(0); }

 private:
  bool dfs(int u) {
    if (u == f_.n) return true;  // skips and needs are exhausted together
    for (int c = 1; c <= f_.k(); ++c) {
      int& need = need_[static_cast<std::size_t>(c - 1)];
      const int b = f_.perms[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)];
      if (need == 0 || used_[static_cast<std::size_t>(b)]) continue;
      --need;
      used_[static_cast<std::size_t>(b)] = 1;
      const bool ok = dfs(u + 1);
      used_[static_cast<std::size_t>(b)] = 0;
      ++need;
      if (ok) return true;
    }
    if (skips_ > 0) {
      --skips_;
      const bool ok = dfs(u + 1);
      ++skips_;
      if (ok) return true;
    }
    return false;
  }

  const PermFamily& f_;
  std::vector<int> need_;
  int skips_;
  std::vector<char> used_;
};

bool discordant(const std::vector<int>& p, const std::vector<std::vector<int>>& others) {
  for (const auto& q : others) {
    for (std::size_t u = 0; u < p.size(); ++u) {
      if (p[u] == q[u]) return false;
    }
  }
  return true;
}

Instance from_family(const PermFamily& f) {
  return Instance::from_perms({f.perms[0], f.perms[1], f.perms[2]});
}

TargetTriple sample_triple(Rng& rng, int sum) {
  const auto all = all_triples(sum);
  return all[static_cast<std::size_t>(rng.below(all.size()))];
}

}  // namespace

PermFamily validate_family(const RawInstance& raw) {
  const int k = static_cast<int>(raw.perms.size());
  if (k < 1) throw Error(ErrorCode::LengthMismatch, "no permutations");
  if (raw.n < std::max(3, k)) {
    throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(raw.n) + " < " + std::to_string(std::max(3, k)));
  }
  PermFamily f;
  f.n = static_cast<int>(raw.n);
  for (int c = 0; c < k; ++c) {
    const auto& p = raw.perms[static_cast<std::size_t>(c)];
    if (p.size() != static_cast<std::size_t>(f.n)) {
      throw Error(ErrorCode::LengthMismatch, "permutation " + std::to_string(c + 1) + " has the wrong length");
    }
    std::vector<char> seen(static_cast<std::size_t>(f.n), 0);
    std::vector<int> perm;
    for (long long b : p) {
      if (b < 0 || b >= f.n || seen[static_cast<std::size_t>(b)]) {
        throw Error(ErrorCode::NotABijection, "color " + std::to_string(c + 1));
      }
      seen[static_cast<std::size_t>(b)] = 1;
      perm.push_back(static_cast<int>(b));
    }
    f.perms.push_back(std::move(perm));
  }
  for (int u = 0; u < f.n; ++u) {
    for (int c = 0; c < k; ++c) {
      for (int c2 = c + 1; c2 < k; ++c2) {
        if (f.perms[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)] ==
            f.perms[static_cast<std::size_t>(c2)][static_cast<std::size_t>(u)]) {
          throw Error(ErrorCode::MatchingsOverlap, "vertex " + std::to_string(u) + ", colors " +
                                                       std::to_string(c + 1) + " and " + std::to_string(c2 + 1));
        }
      }
    }
  }
  return f;
}

PermFamily to_family(const Instance& inst) {
  PermFamily f;
  f.n = inst.n();
  for (int c = 1; c <= 3; ++c) f.perms.push_back(inst.perm(c));
  return f;
}

bool is_connected(const PermFamily& f) {
  std::vector<int> parent(static_cast<std::size_t>(2 * f.n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int groups = 2 * f.n;
  for (const auto& p : f.perms) {
    for (int u = 0; u < f.n; ++u) {
      const int a = find(u);
      const int b = find(f.n + p[static_cast<std::size_t>(u)]);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --groups;
      }
    }
  }
  return groups == 1;
}

void enumerate_matchings(const Instance& inst, int size, const std::function<bool(const Matching&)>& visit, int cap) {
  check_cap(inst.n(), cap);
  if (size < 0 || size > inst.n()) return;
  const PermFamily f = to_family(inst);
  const std::function<bool(const std::vector<int>&)> wrap = [&](const std::vector<int>& choice) {
    std::vector<Edge> edges;
    for (int u = 0; u < f.n; ++u) {
      if (choice[static_cast<std::size_t>(u)] != 0) edges.push_back({u, choice[static_cast<std::size_t>(u)]});
    }
    return visit(Matching(std::move(edges)));
  };
  Enumerator(f, size, wrap).run();
}

std::vector<Matching> all_matchings(const Instance& inst, int size, int cap) {
  std::vector<Matching> out;
  enumerate_matchings(
      inst, size,
      [&](const Matching& m) {
        out.push_back(m);
        return true;
      },
      cap);
  return out;
}

bool exists_bruteforce(const PermFamily& f, const std::vector<int>& target, int cap) {
  check_cap(f.n, cap);
  if (static_cast<int>(target.size()) != f.k()) throw Error(ErrorCode::LengthMismatch, "target length != k");
  int sum = 0;
  for (int t : target) {
    if (t < 0) return false;
    sum += t;
  }
  if (sum > f.n) return false;
  return CountSearch(f, target, f.n - sum).run();
}

bool exists_bruteforce(const Instance& inst, const TargetTriple& target, int cap) {
  return exists_bruteforce(to_family(inst), {target[1], target[2], target[3]}, cap);
}

PermFamily gen_family(int n, int k, std::uint64_t seed, bool connected) {
  if (n < std::max(3, k)) throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(n));
  Rng rng(seed);
  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    PermFamily f;
    f.n = n;
    bool ok = true;
    for (int c = 0; c < k && ok; ++c) {
      ok = false;
      for (int tries = 0; tries < kPermutationAttempts; ++tries) {
        std::vector<int> p = rng.permutation(n);
        if (discordant(p, f.perms)) {
          f.perms.push_back(std::move(p));
          ok = true;
          break;
        }
      }
    }
    if (ok && (!connected || is_connected(f))) return f;
  }
  throw Error(ErrorCode::GenerationBudgetExceeded, "n = " + std::to_string(n) + ", k = " + std::to_string(k));
}

Instance gen_random(int n, std::uint64_t seed, bool connected) { return from_family(gen_family(n, 3, seed, connected)); }

Instance gen_blocks(const std::vector<int>& sizes, std::uint64_t seed) {
  Rng rng(seed);
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  std::array<std::vector<int>, 3> perms;
  for (auto& p : perms) p.reserve(static_cast<std::size_t>(n));
  int offset = 0;
  for (int s : sizes) {
    const PermFamily block = gen_family(s, 3, rng.next(), true);
    for (int c = 0; c < 3; ++c) {
      for (int b : block.perms[static_cast<std::size_t>(c)]) perms[static_cast<std::size_t>(c)].push_back(b + offset);
    }
    offset += s;
  }
  const std::vector<int> pa = rng.permutation(n);
  const std::vector<int> pb = rng.permutation(n);
  std::array<std::vector<int>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      out[static_cast<std::size_t>(c)][static_cast<std::size_t>(pa[static_cast<std::size_t>(u)])] =
          pb[static_cast<std::size_t>(perms[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)])];
    }
  }
  return Instance::from_perms(std::move(out));
}

Instance gen_disconnected(int n, std::uint64_t seed) {
  if (n < 6) return gen_random(n, seed, true);
  Rng rng(seed);
  const int blocks = rng.uniform(2, n / 3);
  std::vector<int> sizes(static_cast<std::size_t>(blocks), 3);
  for (int extra = n - 3 * blocks; extra > 0; --extra) ++sizes[static_cast<std::size_t>(rng.below(sizes.size()))];
  return gen_blocks(sizes, rng.next());
}

std::vector<TargetTriple> all_triples(int sum) {
  std::vector<TargetTriple> out;
  for (int a1 = 0; a1 <= sum; ++a1) {
    for (int a2 = 0; a1 + a2 <= sum; ++a2) out.push_back({a1, a2, sum - a1 - a2});
  }
  return out;
}

// ---------------------------------------------------------------- fuzzing

FuzzRecord fuzz_trial(const FuzzConfig& cfg, long long index) {
  const auto t0 = std::chrono::steady_clock::now();
  FuzzRecord rec;
  rec.trial = index;
  rec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
  Rng rng(rec.seed);
  rec.n = rng.uniform(cfg.n_min, cfg.n_max);
  const bool split = rec.n >= 6 && static_cast<int>(rng.below(100)) < cfg.disconnected_percent;
  const std::uint64_t gen_seed = rng.next();
  const Instance inst = split ? gen_disconnected(rec.n, gen_seed) : gen_random(rec.n, gen_seed, true);
  rec.components = static_cast<int>(components(inst).size());

  std::vector<TargetTriple> targets;
  const bool exhaustive = cfg.policy == TargetPolicy::Exhaustive ||
                          (cfg.policy == TargetPolicy::Mixed && rec.n <= cfg.exhaustive_max_n);
  if (exhaustive) {
    targets = all_triples(rec.n - 1);
  } else {
    for (int s = 0; s < cfg.samples; ++s) targets.push_back(sample_triple(rng, rec.n - 1));
  }
  rec.targets = static_cast<int>(targets.size());

  for (const TargetTriple& target : targets) {
    SwitchStats stats;
    bool ok = false;
    std::string why;
    try {
      const Matching m = solve(inst, target, {nullptr, &stats, 0});
      const VerifyReport rep = verify_matching(inst, m, target);
      ok = rep.ok;
      why = rep.detail;
    } catch (const std::exception& e) {
      why = e.what();
    }
    rec.max_switch_steps = std::max(rec.max_switch_steps, stats.max_steps_one_switch);
    if (!ok) {
      ++rec.failures;
      if (rec.detail.empty()) rec.detail = "target " + to_string(target) + ": " + why;
    }
    if (rec.n <= cfg.oracle_cap && exists_bruteforce(inst, target, std::max(cfg.oracle_cap, rec.n)) != ok) {
      ++rec.oracle_mismatches;
    }
  }
  rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

FuzzReport fuzz_campaign(const FuzzConfig& cfg) {
  FuzzReport report;
  report.records.resize(static_cast<std::size_t>(std::max(0LL, cfg.trials)));
  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (long long t = 0; t < cfg.trials; ++t) report.records[static_cast<std::size_t>(t)] = fuzz_trial(cfg, t);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long long t = next++; t < cfg.trials; t = next++) {
          report.records[static_cast<std::size_t>(t)] = fuzz_trial(cfg, t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const FuzzRecord& r : report.records) {
    ++report.trials;
    report.solves += r.targets;
    report.failures += r.failures;
    report.oracle_mismatches += r.oracle_mismatches;
    if (r.n <= cfg.oracle_cap) report.oracle_checks += r.targets;
    (r.components == 1 ? report.connected : report.disconnected) += 1;
    report.max_switch_steps = std::max(report.max_switch_steps, r.max_switch_steps);
  }
  return report;
}

nlohmann::ordered_json to_json(const FuzzRecord& r) {
  nlohmann::ordered_json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["components"] = r.components;
  j["targets"] = r.targets;
  j["failures"] = r.failures;
  j["oracle_mismatches"] = r.oracle_mismatches;
  j["max_switch_steps"] = r.max_switch_steps;
  j["millis"] = r.millis;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::ordered_json summary_json(const FuzzReport& r) {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["trials"] = r.trials;
  j["solves"] = r.solves;
  j["failures"] = r.failures;
  j["oracle_checks"] = r.oracle_checks;
  j["oracle_mismatches"] = r.oracle_mismatches;
  j["connected"] = r.connected;
  j["disconnected"] = r.disconnected;
  j["max_switch_steps"] = r.max_switch_steps;
  return j;
}

// --------------------------------------------------------------- searches

std::vector<TightnessWitness> search_tightness(const TightnessConfig& cfg) {
  std::vector<TightnessWitness> out;
  const auto full = [&] { return static_cast<int>(out.size()) >= cfg.max_witnesses; };
  const auto probe = [&](const Instance& inst, const std::string& family) {
    const int n = inst.n();
    for (const TargetTriple& t : all_triples(n)) {
      if (full()) return;
      if (t[1] > n - 1 || t[2] > n - 1 || t[3] > n - 1) continue;
      if (!exists_bruteforce(inst, t, cfg.cap)) out.push_back({inst, t, family});
    }
  };

  // Cyclic shifts u -> u + s_c (mod n) for distinct s_1 < s_2 < s_3.
  for (int n = 3; n <= cfg.n_max && !full(); ++n) {
    for (int s1 = 0; s1 < n; ++s1) {
      for (int s2 = s1 + 1; s2 < n; ++s2) {
        for (int s3 = s2 + 1; s3 < n && !full(); ++s3) {
          std::array<std::vector<int>, 3> perms;
          const int shifts[3] = {s1, s2, s3};
          for (int c = 0; c < 3; ++c) {
            for (int u = 0; u < n; ++u) perms[static_cast<std::size_t>(c)].push_back((u + shifts[c]) % n);
          }
          probe(Instance::from_perms(perms), "cyclic shifts " + std::to_string(s1) + "," + std::to_string(s2) + "," +
                                                 std::to_string(s3));
        }
      }
    }
  }
  for (int n = 3; n <= cfg.n_max && !full(); ++n) {
    for (int r = 0; r < cfg.random_per_n && !full(); ++r) {
      const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n * 100000 + r));
      probe(gen_random(n, seed, false), "random seed " + std::to_string(seed));
    }
  }
  return out;
}

K4Report search_k4(const K4Config& cfg) {
  K4Report report;
  for (long long idx = 0; idx < cfg.instances; ++idx) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(idx));
    Rng rng(seed);
    const int n = rng.uniform(cfg.n_min, cfg.n_max);
    const PermFamily f = gen_family(n, 4, rng.next(), false);
    ++report.instances;
    for (int a = 0; a <= n - 1; ++a) {
      for (int b = 0; a + b <= n - 1; ++b) {
        for (int c = 0; a + b + c <= n - 1; ++c) {
          const std::vector<int> tuple{a, b, c, n - 1 - a - b - c};
          bool found = exists_bruteforce(f, tuple, cfg.cap);
          if (!found) {
            // Independent re-check: scan every matching of size n-1.
            const std::function<bool(const std::vector<int>&)> scan = [&](const std::vector<int>& choice) {
              std::vector<int> counts(4, 0);
              for (int x : choice) {
                if (x != 0) ++counts[static_cast<std::size_t>(x - 1)];
              }
              if (counts == tuple) found = true;
              return !found;
            };
            Enumerator(f, n - 1, scan).run();
          }
          ++report.tuples;
          if (!found) ++report.counterexamples;
          report.records.push_back({idx, seed, n, tuple, found});
        }
      }
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const K4Record& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["tuple"] = r.tuple;
  j["found"] = r.found;
  return j;
}

}  // namespace tricolor
