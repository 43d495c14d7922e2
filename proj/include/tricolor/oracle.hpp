#pragma once

// Ground truth and input supply: brute-force matching enumeration, seeded
// instance generators, fuzz campaigns and the two exhaustive searches.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tricolor/core.hpp"

namespace tricolor {

constexpr int kDefaultCap = 8;

/// k pairwise-discordant permutations of [0, n): the k-matching analogue of
/// Instance, used where k != 3.
struct PermFamily {
  int n = 0;
  std::vector<std::vector<int>> perms;

  int k() const { return static_cast<int>(perms.size()); }
};

/// Throws NTooSmall (n < max(3, k)), LengthMismatch, NotABijection,
/// MatchingsOverlap.
PermFamily validate_family(const RawInstance& raw);
PermFamily to_family(const Instance& inst);
bool is_connected(const PermFamily& f);

/// Calls `visit` on every matching with exactly `size` edges, in a fixed
/// order, until it returns false. Throws TooLarge when n > cap.
void enumerate_matchings(const Instance& inst, int size, const std::function<bool(const Matching&)>& visit,
                         int cap = kDefaultCap);
std::vector<Matching> all_matchings(const Instance& inst, int size, int cap = kDefaultCap);

/// Whether some matching has exactly target[c] edges of color c. Throws
/// TooLarge when n > cap.
bool exists_bruteforce(const Instance& inst, const TargetTriple& target, int cap = kDefaultCap);
/// Same for a k-family; `target` has k entries.
bool exists_bruteforce(const PermFamily& f, const std::vector<int>& target, int cap = kDefaultCap);

/// Throws GenerationBudgetExceeded when no instance is found within budget.
Instance gen_random(int n, std::uint64_t seed, bool connected);
PermFamily gen_family(int n, int k, std::uint64_t seed, bool connected);
/// Disjoint union of connected random blocks of the given sizes (each >= 3),
/// with both sides relabeled by random permutations.
Instance gen_blocks(const std::vector<int>& sizes, std::uint64_t seed);
/// At least two components when n >= 6; a connected instance otherwise.
Instance gen_disconnected(int n, std::uint64_t seed);

/// All triples of non-negative integers summing to `sum`.
std::vector<TargetTriple> all_triples(int sum);

enum class TargetPolicy { Exhaustive, Sampled, Mixed };

struct FuzzConfig {
  int n_min = 3;
  int n_max = 12;
  long long trials = 100;
  std::uint64_t seed = 1;
  TargetPolicy policy = TargetPolicy::Mixed;
  int exhaustive_max_n = 6;   // Mixed: exhaustive targets up to this n
  int samples = 3;            // sampled targets per instance
  int oracle_cap = 6;         // cross-check with brute force up to this n
  int disconnected_percent = 50;
  int workers = 1;
};

struct FuzzRecord {
  long long trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int components = 0;
  int targets = 0;
  int failures = 0;
  int oracle_mismatches = 0;
  long long max_switch_steps = 0;
  double millis = 0;
  std::string detail;  // first failure, if any
};

struct FuzzReport {
  long long trials = 0;
  long long solves = 0;
  long long failures = 0;
  long long oracle_mismatches = 0;
  long long oracle_checks = 0;
  long long connected = 0;
  long long disconnected = 0;
  long long max_switch_steps = 0;
  std::vector<FuzzRecord> records;
};

/// Replays trial `index` of a campaign exactly.
FuzzRecord fuzz_trial(const FuzzConfig& cfg, long long index);
FuzzReport fuzz_campaign(const FuzzConfig& cfg);

nlohmann::ordered_json to_json(const FuzzRecord& r);
nlohmann::ordered_json summary_json(const FuzzReport& r);

struct TightnessConfig {
  int n_max = 6;
  std::uint64_t seed = 1;
  int random_per_n = 20;
  int max_witnesses = 64;
  int cap = kDefaultCap;
};

struct TightnessWitness {
  Instance inst;
  TargetTriple target;
  std::string family;
};

/// Instances and triples summing to n with no matching of those counts.
/// Structured cyclic-shift families are tried before random instances.
std::vector<TightnessWitness> search_tightness(const TightnessConfig& cfg);

struct K4Config {
  int n_min = 4;
  int n_max = 5;
  long long instances = 20;
  std::uint64_t seed = 1;
  int cap = kDefaultCap;
};

struct K4Record {
  long long instance = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::vector<int> tuple;
  bool found = false;
};

struct K4Report {
  long long instances = 0;
  long long tuples = 0;
  long long counterexamples = 0;
  std::vector<K4Record> records;
};

/// Four-matching instances, every 4-part tuple summing to n-1 checked by
/// brute force. A negative result is re-checked by full enumeration before it
/// is counted.
K4Report search_k4(const K4Config& cfg);

nlohmann::ordered_json to_json(const K4Record& r);

}  // namespace tricolor
