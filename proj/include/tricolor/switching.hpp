#pragma once

// One-step color exchange on connected instances: from an (a1,a2,a3)-matching
// with a3 >= 1, build an (a1+1,a2,a3-1)-matching (direction 1) or an
// (a1,a2+1,a3-1)-matching (direction 2).
//
// The subroutines are exposed individually so that their intermediate objects
// can be inspected and tested.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tricolor/core.hpp"
#include "tricolor/structure.hpp"
#include "tricolor/trace.hpp"

namespace tricolor {

struct SwitchStats {
  long long switches = 0;
  long long pipeline_steps = 0;   // outer re-entries plus repair iterations
  long long resolve_calls = 0;
  long long resolve_improved = 0;
  long long c0_repairs = 0;        // path re-rooted on C0 after a rotation
  long long interval_repairs = 0;  // path rerouted along a cycle arc
  long long phase2_flips = 0;      // C_j flipped after rebalancing C0
  long long phase2_reroots = 0;    // C0 filled, path re-rooted on C_j
  long long can_move_steps = 0;
  long long ivl_calls = 0;
  long long case1_reentries = 0;
  long long case2_runs = 0;
  long long max_steps_one_switch = 0;

  void merge(const SwitchStats& other);
};

struct SwitchOptions {
  TraceSink* trace = nullptr;
  SwitchStats* stats = nullptr;
  /// Maximum pipeline steps per switch; 0 means 16 n^2.
  long long guard = 0;
};

/// Matching on cycle C with k edges of M_c and |C|/2-1-k edges of M_{3-c},
/// leaving v unsaturated. `c` in {1,2}, C a cycle of M1 ∪ M2. Throws
/// KOutOfRange unless 0 <= k < |C|/2, PreconditionViolated if v is not on C.
Matching rotate_cycle_matching(const Instance& inst, const Cycle& cycle, Vertex v, int c, int k);

struct ResolveResult {
  /// Set when an (a1+1,a2,a3-1)-matching was built.
  std::optional<Matching> improved;
  /// Set otherwise: C0(M) as an M1 ∪ M2 cycle starting at u_a.
  std::optional<Cycle> c0;
  int l1 = -1;  // M1-edges before the first M3 edge on P1, -1 when there is none
  int l2 = -1;
  bool direct_edge = false;  // the two unsaturated vertices share an M1 edge
};

/// Throws MatchingWrongSize, NotAMatching, or A3Zero.
ResolveResult resolve_c0(const Instance& inst, const Matching& m, TraceSink* trace = nullptr);

struct P0Certificate {
  Matching matching;  // same counts as the input matching
  AltPath path;       // P0 = (v_1, ..., v_{l+1}), v_1 unsaturated
  StructureView view;
  int color = 0;      // c with M ∩ P0 ⊆ M_c

  Vertex u1() const { return path.at(1); }
};

/// Empty when every property holds, otherwise a description of the first
/// failure.
std::string p0_violation(const Instance& inst, const P0Certificate& cert);

/// Requires a connected instance and a matching whose C0 is an M1 ∪ M2 cycle
/// (resolve_c0 returned a cycle). Throws NotConnected, A3Zero,
/// PreconditionViolated, IterationGuardExceeded.
P0Certificate find_p0(const Instance& inst, const Matching& m, const SwitchOptions& opts = {});

struct SwitchCertificate {
  Matching matching;   // M, with M = M(P;1,h)
  NearlyAltPath path;  // P = (w_1, ..., w_k)
  int h = 0;
  int t = 0;
  int c = 0;

  int k() const { return path.vertex_count(); }
};

std::string switch_violation(const Instance& inst, const SwitchCertificate& cert);

SwitchCertificate find_switch_path(const Instance& inst, const P0Certificate& p0, TraceSink* trace = nullptr);
/// find_p0 followed by the path assembly.
SwitchCertificate find_switch_path(const Instance& inst, const Matching& m, const SwitchOptions& opts = {});

struct ShiftPositions {
  int i = 0;
  int j = 0;

  friend bool operator==(const ShiftPositions&, const ShiftPositions&) = default;
};

/// One shift of the unsaturated positions (i,j) keeping a2 and moving a3 by at
/// most one. nullopt when the step's hypotheses fail (including a path that is
/// not good).
std::optional<ShiftPositions> can_move_step(const NearlyAltPath& p, int i, int j);

/// The chain of shift positions from (i,j) to (i2,j2) on a good path, each
/// step keeping a2 and moving a3 by at most one. Both endpoints must have the
/// same a2. Throws PreconditionViolated.
std::vector<ShiftPositions> intermediate_value_sequence(const NearlyAltPath& p, ShiftPositions from,
                                                        ShiftPositions to);

/// First matching on the chain from `low` to `high` with exactly a3_star M3
/// edges. Requires a3(low) <= a3_star <= a3(high). Throws PreconditionViolated.
Matching intermediate_value(const NearlyAltPath& p, ShiftPositions low, ShiftPositions high, int a3_star);

/// Matching form: `path` must be good and nearly-alternating for both m and
/// m2, with m \ path = m2 \ path.
Matching intermediate_value(const Instance& inst, const AltPath& path, const Matching& m, const Matching& m2,
                            int a3_star);

/// Direction 1: (a1+1,a2,a3-1); direction 2: (a1,a2+1,a3-1). Throws
/// NotConnected, A3Zero, MatchingWrongSize, NotAMatching,
/// PreconditionViolated (bad direction), IterationGuardExceeded.
Matching switch_matching(const Instance& inst, const Matching& m, int direction, const SwitchOptions& opts = {});

}  // namespace tricolor
