#include "tricolor/solver.hpp"

#include "tricolor/reduction.hpp"
#include "tricolor/structure.hpp"

namespace tricolor {

namespace {

void check_target(const Instance& inst, const TargetTriple& target) {
  for (int c = 1; c <= 3; ++c) {
    if (target[c] < 0) throw Error(ErrorCode::InvalidTargetSum, "negative entry in " + to_string(target));
  }
  if (target.sum() != inst.n() - 1) {
    throw Error(ErrorCode::InvalidTargetSum,
                to_string(target) + " sums to " + std::to_string(target.sum()) + ", expected " +
                    std::to_string(inst.n() - 1));
  }
}

Matching lowest_edges(int color, int count) {
  std::vector<Edge> edges;
  for (int u = 0; u < count; ++u) edges.push_back({u, color});
  return Matching(std::move(edges));
}

Matching solve_connected(const Instance& inst, const TargetTriple& target, const SolveOptions& opts) {
  Matching m = lowest_edges(3, inst.n() - 1);
  const SwitchOptions sopts{opts.trace, opts.stats, opts.guard};
  for (int s = 0; s < target[1]; ++s) m = switch_matching(inst, m, 1, sopts);
  for (int s = 0; s < target[2]; ++s) m = switch_matching(inst, m, 2, sopts);
  return m;
}

}  // namespace

Matching solve_two_color(const Instance& inst, int c_i, int c_j, int a_i, int a_j) {
  if (c_i < 1 || c_i > 3 || c_j < 1 || c_j > 3 || c_i == c_j) {
    throw Error(ErrorCode::PreconditionViolated, "two distinct colors in 1..3 required");
  }
  if (a_i < 0 || a_j < 0 || a_i + a_j != inst.n() - 1) {
    throw Error(ErrorCode::InvalidTargetSum, "a_i + a_j must equal n-1");
  }
  std::vector<Edge> edges;
  int left = a_i;
  bool split_done = false;
  for (const Cycle& cyc : cycle_decomposition(inst, c_i, c_j)) {
    const int half = cyc.edge_count() / 2;
    // Cycle positions 0, 2, ... carry M_{c_i}; 1, 3, ... carry M_{c_j}.
    if (!split_done && left >= half) {
      for (int q = 0; q < cyc.edge_count(); q += 2) edges.push_back(inst.edge_at(cyc.vertices[q], c_i));
      left -= half;
    } else if (!split_done) {
      for (int q = 0; q < 2 * left; q += 2) edges.push_back(inst.edge_at(cyc.vertices[q], c_i));
      for (int q = 2 * left + 1; q <= cyc.edge_count() - 3; q += 2) {
        edges.push_back(inst.edge_at(cyc.vertices[q], c_j));
      }
      split_done = true;
    } else {
      for (int q = 1; q < cyc.edge_count(); q += 2) edges.push_back(inst.edge_at(cyc.vertices[q], c_j));
    }
  }
  Matching out(std::move(edges));
  ensure(split_done && static_cast<int>(out.size()) == inst.n() - 1, "solve_two_color: wrong size");
  return out;
}

Matching solve(const Instance& inst, const TargetTriple& target, const SolveOptions& opts) {
  check_target(inst, target);
  int nonzero = 0;
  for (int c = 1; c <= 3; ++c) nonzero += target[c] > 0 ? 1 : 0;

  if (nonzero == 1) {
    int c = 1;
    while (target[c] == 0) ++c;
    emit(opts.trace, "solve", {{"n", inst.n()}, {"path", "one_color"}, {"color", c}});
    return lowest_edges(c, inst.n() - 1);
  }
  if (nonzero == 2) {
    int ci = 1;
    while (target[ci] == 0) ++ci;
    int cj = ci + 1;
    while (target[cj] == 0) ++cj;
    emit(opts.trace, "solve", {{"n", inst.n()}, {"path", "two_color"}, {"colors", {ci, cj}}});
    return solve_two_color(inst, ci, cj, target[ci], target[cj]);
  }

  const std::vector<Component> comps = components(inst);
  if (comps.size() == 1) {
    emit(opts.trace, "solve", {{"n", inst.n()}, {"path", "switching"}, {"target", {target[1], target[2], target[3]}}});
    return solve_connected(inst, target, opts);
  }

  const Component& f = comps.front();
  const Component rest = merge({comps.begin() + 1, comps.end()});
  const Matching mf = reduce_perfect(restrict(inst, f), triple_cast<BudgetTag>(target), opts.trace);
  const ColorCounts used = mf.counts();
  const TargetTriple residual{target[1] - used[1], target[2] - used[2], target[3] - used[3]};
  emit(opts.trace, "peel", {{"m", f.size()}, {"counts", {used[1], used[2], used[3]}}});
  const Matching mr = solve(restrict(inst, rest), residual, opts);
  return join(lift(f, mf), lift(rest, mr));
}

}  // namespace tricolor
