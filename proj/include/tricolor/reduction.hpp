#pragma once

// Budgeted perfect matchings: a perfect matching of a component using at most
// b_i edges of M_i, whenever b1 + b2 + b3 >= 2m - 1 on 2m vertices.

#include "tricolor/core.hpp"
#include "tricolor/trace.hpp"

namespace tricolor {

struct ReductionStats {
  int levels = 0;           // cycles consumed, one per recursion level
  int initial_cycles = 0;   // cycles of (M1 ∪ M2) - V(seed)
  bool used_walk = false;   // the single-cycle case needed the M3 exchange path
};

/// Throws BudgetTooSmall if b1 + b2 + b3 < 2m - 1.
Matching reduce_perfect(const Instance& f, const BudgetTriple& b, TraceSink* trace = nullptr,
                        ReductionStats* stats = nullptr);

/// Extends `seed` (a perfect matching of some M1 ∪ M2 cycles, using only M1
/// and M2 edges) to a perfect matching within budgets. Requires b1 + b2 >= m
/// and b1 + b2 + b3 >= 2m - 1. Throws PreconditionViolated naming the failed
/// clause.
Matching reduce_extend(const Instance& f, const BudgetTriple& b, const Matching& seed,
                       TraceSink* trace = nullptr, ReductionStats* stats = nullptr);

}  // namespace tricolor
