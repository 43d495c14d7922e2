#include "tricolor/reduction.hpp"

#include <algorithm>

#include "tricolor/structure.hpp"

namespace tricolor {

namespace {

void check_extend_preconditions(const Instance& f, const BudgetTriple& b, const Matching& seed,
                                const MateTable& table, const TwoFactor& tf) {
  const int m = f.n();
  for (const Edge& e : seed.edges()) {
    if (e.color == 3) throw Error(ErrorCode::PreconditionViolated, "seed must use only M1 and M2 edges");
  }
  for (const Cycle& c : tf.cycles()) {
    const bool first = table.saturated(c.vertices[0]);
    for (Vertex v : c.vertices) {
      if (table.saturated(v) != first) {
        throw Error(ErrorCode::PreconditionViolated, "(M1 ∪ M2) - V(seed) must be a union of whole cycles");
      }
    }
  }
  const ColorCounts used = seed.counts();
  if (used[1] > b[1] || used[2] > b[2]) throw Error(ErrorCode::PreconditionViolated, "seed exceeds b1 or b2");
  if (b[1] + b[2] < m) throw Error(ErrorCode::PreconditionViolated, "b1 + b2 < m");
  if (b.sum() < 2 * m - 1) throw Error(ErrorCode::PreconditionViolated, "b1 + b2 + b3 < 2m - 1");
}

void add_cycle_edges(MateTable& table, const Cycle& c, int color) {
  for (std::size_t p = 0; p < c.vertices.size(); ++p) {
    if (c.edge_colors[p] == color) table.add(c.vertices[p], color);
  }
}

// The single remaining cycle when the primary color's budget cannot cover it.
// `vs` is the cycle as v_1..v_{2m'} (1-based via vs[k-1]) with v_1 v_2 in
// M_primary and v_{2m'} v_1 in M_secondary.
void close_last_cycle(MateTable& table, const std::vector<Vertex>& vs, int primary, int secondary, int b_primary,
                      int b_secondary, int b3, TraceSink* trace) {
  const int mp = static_cast<int>(vs.size()) / 2;
  const auto v = [&](int k) { return vs[static_cast<std::size_t>(k - 1)]; };

  MateTable with_seed = table;  // M'
  for (int i = 1; i <= mp - b_primary - 1; ++i) with_seed.add(v(2 * i), secondary);
  for (int j = 0; j <= mp - b_secondary - 2; ++j) with_seed.add(v(2 * (mp - j) - 1), primary);

  const AltPath walk = max_alt_walk(with_seed, v(1));
  ensure(walk.length() % 2 == 1, "reduction: exchange path must have odd length");
  const Vertex end = walk.vertices.back();
  const auto it = std::find(vs.begin(), vs.end(), end);
  ensure(it != vs.end(), "reduction: exchange path must end on the cycle");
  const int k = static_cast<int>(it - vs.begin()) + 1;
  ensure(k % 2 == 0, "reduction: landing index must be even");
  ensure(k >= 2 * (mp - b_primary - 1) + 2 && k <= 2 * (b_secondary + 2) - 2,
         "reduction: landing index outside its window");
  const int walk_m3 = (walk.length() + 1) / 2;
  ensure(walk_m3 <= with_seed.size() + 1 && with_seed.size() + 1 <= b3, "reduction: |P ∩ M3| <= |M'| + 1 <= b3");

  // M'': M_secondary edges on (v_1..v_k), M_primary edges on (v_k..v_{2m'}, v_1).
  for (int s = 2; s + 1 <= k - 1; s += 2) table.add(v(s), secondary);
  for (int s = k + 1; s + 1 <= 2 * mp; s += 2) table.add(v(s), primary);

  // M* = M'' Δ P.
  for (int p = 2; p <= walk.length(); p += 2) {
    ensure(table.has_edge(walk.at(p), walk.at(p + 1)), "reduction: M' must be contained in M''");
    table.remove(walk.at(p));
  }
  for (int p = 1; p <= walk.length(); p += 2) table.add(walk.at(p), 3);

  emit(trace, "reduction_walk", {{"m_prime", mp}, {"landing", k}, {"walk_m3", walk_m3}});
}

}  // namespace

Matching reduce_extend(const Instance& f, const BudgetTriple& b, const Matching& seed, TraceSink* trace,
                       ReductionStats* stats) {
  MateTable table(f);
  try {
    table = MateTable(f, seed);
  } catch (const Error&) {
    throw Error(ErrorCode::PreconditionViolated, "seed is not a matching");
  }
  const TwoFactor tf(f, 1, 2);
  check_extend_preconditions(f, b, seed, table, tf);

  std::vector<int> remaining;
  for (int id = 0; id < static_cast<int>(tf.cycles().size()); ++id) {
    if (!table.saturated(tf.cycle(id).vertices[0])) remaining.push_back(id);
  }
  ReductionStats local;
  local.initial_cycles = static_cast<int>(remaining.size());

  while (!remaining.empty()) {
    ++local.levels;
    const int m_prime = (f.vertex_count() - 2 * table.size()) / 2;
    const ColorCounts used = table.counts();
    const int b1p = b[1] - used[1];
    const int b2p = b[2] - used[2];
    // Relabel 1 <-> 2 at this level so the primary color has the larger budget.
    const int primary = b1p >= b2p ? 1 : 2;
    const int secondary = 3 - primary;
    const int bp = std::max(b1p, b2p);
    const int bs = std::min(b1p, b2p);
    ensure(2 * bp >= bp + bs && bp + bs >= m_prime, "reduction: 2b1' >= b1' + b2' >= m'");

    if (remaining.size() > 1) {
      auto shortest = std::min_element(remaining.begin(), remaining.end(), [&](int x, int y) {
        return tf.cycle(x).edge_count() < tf.cycle(y).edge_count();
      });
      const Cycle& c = tf.cycle(*shortest);
      const int half = c.edge_count() / 2;
      ensure(half <= bp, "reduction: shortest cycle must fit the primary budget");
      add_cycle_edges(table, c, primary);
      emit(trace, "reduction_level", {{"case", "fill"}, {"m_prime", m_prime}, {"half", half}, {"color", primary}});
      remaining.erase(shortest);
      continue;
    }

    const Cycle& c = tf.cycle(remaining.front());
    remaining.clear();
    if (bp >= m_prime) {
      add_cycle_edges(table, c, primary);
      emit(trace, "reduction_level", {{"case", "base_fill"}, {"m_prime", m_prime}, {"color", primary}});
      break;
    }
    // Orient from the lowest A vertex along its primary edge.
    std::vector<Vertex> vs;
    Vertex x = c.vertices[0];
    int color = primary;
    do {
      vs.push_back(x);
      x = f.neighbor(x, color);
      color = 3 - color;
    } while (x != c.vertices[0]);
    emit(trace, "reduction_level", {{"case", "base_walk"}, {"m_prime", m_prime}, {"b1p", bp}, {"b2p", bs}});
    close_last_cycle(table, vs, primary, secondary, bp, bs, b[3], trace);
    local.used_walk = true;
  }

  ensure(table.size() == f.n(), "reduction: result must be perfect");
  const ColorCounts got = table.counts();
  ensure(got[1] <= b[1] && got[2] <= b[2] && got[3] <= b[3], "reduction: result exceeds a budget");
  if (stats) *stats = local;
  return table.to_matching();
}

Matching reduce_perfect(const Instance& f, const BudgetTriple& b, TraceSink* trace, ReductionStats* stats) {
  const int m = f.n();
  if (b.sum() < 2 * m - 1) {
    throw Error(ErrorCode::BudgetTooSmall, "b1 + b2 + b3 = " + std::to_string(b.sum()) + " < " +
                                               std::to_string(2 * m - 1));
  }
  // Make the smallest budget color 3 so that b1 + b2 >= m.
  int low = 3;
  for (int c = 2; c >= 1; --c) {
    if (b[c] < b[low]) low = c;
  }
  std::array<int, 3> to_old{};
  for (int c = 1, k = 0; c <= 3; ++c) {
    if (c != low) to_old[static_cast<std::size_t>(k++)] = c;
  }
  to_old[2] = low;
  const BudgetTriple relabeled_b{b[to_old[0]], b[to_old[1]], b[to_old[2]]};
  const Instance relabeled = f.relabel(to_old);
  const Matching local = reduce_extend(relabeled, relabeled_b, Matching{}, trace, stats);

  std::vector<Edge> edges;
  edges.reserve(local.size());
  for (const Edge& e : local.edges()) edges.push_back({e.u, to_old[static_cast<std::size_t>(e.color - 1)]});
  return Matching(std::move(edges));
}

}  // namespace tricolor
