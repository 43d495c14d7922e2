#pragma once

// Top-level driver: an (a1,a2,a3)-matching for any valid instance and any
// target summing to n-1.

#include "tricolor/core.hpp"
#include "tricolor/switching.hpp"
#include "tricolor/trace.hpp"

namespace tricolor {

struct SolveOptions {
  TraceSink* trace = nullptr;
  SwitchStats* stats = nullptr;
  long long guard = 0;  // per-switch step limit, 0 for the default
};

/// Throws InvalidTargetSum when a target entry is negative or the sum is not
/// n-1. Engine failures surface as IterationGuardExceeded or
/// InternalInvariant.
Matching solve(const Instance& inst, const TargetTriple& target, const SolveOptions& opts = {});

/// Matching with a_i edges of M_{c_i} and a_j edges of M_{c_j}, built cycle by
/// cycle on M_{c_i} ∪ M_{c_j}. Throws InvalidTargetSum unless a_i + a_j = n-1
/// with both non-negative; PreconditionViolated for bad colors.
Matching solve_two_color(const Instance& inst, int c_i, int c_j, int a_i, int a_j);

}  // namespace tricolor
