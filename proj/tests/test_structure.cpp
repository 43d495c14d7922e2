#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "support.hpp"
#include "tricolor/structure.hpp"

using namespace tricolor;
using tsupport::Gen;
using tsupport::direct_f;
using tsupport::direct_shift;
using tsupport::fuzz_paths;
using tsupport::PathSet;

namespace {

std::optional<int> direct_good(const AltPath& p) {
  const auto fits = [&](int c) {
    for (int pos = 1; pos <= p.length(); ++pos) {
      if (p.color(pos) == c && pos % 2 == 0) return false;
      if (p.color(pos) == 3 - c && pos % 2 == 1) return false;
    }
    return true;
  };
  if (fits(1)) return 1;
  if (fits(2)) return 2;
  return std::nullopt;
}

AltPath random_walk(Gen& g, const Instance& inst, int max_len) {
  std::vector<Vertex> vs{g.below(inst.vertex_count())};
  std::set<Vertex> used{vs[0]};
  while (static_cast<int>(vs.size()) <= max_len) {
    std::vector<Vertex> options;
    for (int c = 1; c <= 3; ++c) {
      const Vertex w = inst.neighbor(vs.back(), c);
      if (!used.count(w)) options.push_back(w);
    }
    if (options.empty()) break;
    vs.push_back(options[static_cast<std::size_t>(g.below(static_cast<int>(options.size())))]);
    used.insert(vs.back());
  }
  return make_path(inst, vs);
}

// Alternating BFS written out directly: A vertices are entered through
// matching edges, B vertices through non-matching edges (root on either side).
std::vector<char> direct_reach(const Instance& inst, const Matching& m, Vertex root) {
  const int n = inst.n();
  std::vector<int> mate(static_cast<std::size_t>(2 * n), -1);
  for (const Edge& e : m.edges()) {
    mate[static_cast<std::size_t>(e.u)] = n + inst.perm(e.color)[static_cast<std::size_t>(e.u)];
    mate[static_cast<std::size_t>(n + inst.perm(e.color)[static_cast<std::size_t>(e.u)])] = e.u;
  }
  std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
  std::vector<Vertex> queue{root};
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Vertex x = queue[q];
    for (int c = 1; c <= 3; ++c) {
      const Vertex y = inst.neighbor(x, c);
      if (y == mate[static_cast<std::size_t>(x)] || seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = 1;
      queue.push_back(y);
      const Vertex z = mate[static_cast<std::size_t>(y)];
      if (z >= 0 && !seen[static_cast<std::size_t>(z)]) {
        seen[static_cast<std::size_t>(z)] = 1;
        queue.push_back(z);
      }
    }
  }
  return seen;
}

}  // namespace

TEST(CycleDecomposition, CyclicThreeIsOneSixCycle) {
  const auto cycles = cycle_decomposition(tsupport::cyclic3(), 1, 2);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].edge_count(), 6);
  EXPECT_EQ(tsupport::two_factor_cycle_lengths(tsupport::cyclic3(), 1, 2), std::vector<int>{6});
}

TEST(CycleDecomposition, OneCyclePerBlock) {
  const Instance inst = Instance::from_perms({{{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4}}});
  const auto cycles = cycle_decomposition(inst, 1, 2);
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0].edge_count(), 6);
  EXPECT_EQ(cycles[1].edge_count(), 6);
}

TEST(CycleDecomposition, MatchesPermutationCycleType) {
  Gen g(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 30), false);
    for (auto [c, c2] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
      const auto cycles = cycle_decomposition(inst, c, c2);
      std::vector<int> lengths;
      std::vector<int> cover(static_cast<std::size_t>(inst.vertex_count()), 0);
      int total = 0;
      for (const Cycle& cy : cycles) {
        lengths.push_back(cy.edge_count());
        total += cy.edge_count();
        ASSERT_TRUE(inst.is_a(cy.vertices[0]));
        EXPECT_EQ(cy.edge_colors[0], c);
        for (int p = 0; p < cy.edge_count(); ++p) {
          ++cover[static_cast<std::size_t>(cy.vertices[static_cast<std::size_t>(p)])];
          const Vertex next = cy.vertices[static_cast<std::size_t>((p + 1) % cy.edge_count())];
          EXPECT_EQ(inst.edge_color(cy.vertices[static_cast<std::size_t>(p)], next), cy.edge_colors[static_cast<std::size_t>(p)]);
          EXPECT_EQ(cy.edge_colors[static_cast<std::size_t>(p)], p % 2 == 0 ? c : c2);
        }
      }
      std::sort(lengths.begin(), lengths.end());
      EXPECT_EQ(lengths, tsupport::two_factor_cycle_lengths(inst, c, c2));
      EXPECT_EQ(total, 2 * inst.n());
      for (int x : cover) EXPECT_EQ(x, 1);
    }
  }
}

TEST(StructureView, CyclicThreeTwoM1Edges) {
  const Instance inst = tsupport::cyclic3();
  const Matching m({{0, 1}, {1, 1}});
  const StructureView v = structure_view(inst, m);
  EXPECT_EQ(v.u_a, 2);
  EXPECT_EQ(v.u_b, 5);
  // 2 and B2 share an M1 edge, so P1 is that edge alone.
  EXPECT_EQ(v.p1.vertices, (std::vector<Vertex>{2, 5}));
  // M ∪ M2 walked by hand: 2 -M2- B0 -M- 0 -M2- B1 -M- 1 -M2- B2.
  EXPECT_EQ(v.p2.vertices, (std::vector<Vertex>{2, 3, 0, 4, 1, 5}));
  EXPECT_EQ(v.p2.edge_colors, (std::vector<int>{2, 1, 2, 1, 2}));
  EXPECT_GE(v.p2.length(), 3);
  EXPECT_TRUE(v.c0_is_cycle);
  const NearlyAltPath p(inst, v.p2, m);
  EXPECT_EQ(p.counts(), m.counts());
}

TEST(StructureView, AlternatingCyclesOfM1Subsets) {
  Gen g(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 12), false);
    // n-1 edges of M1: every vertex but one A and one B vertex is saturated.
    const int skip = g.below(inst.n());
    std::vector<Edge> edges;
    for (int u = 0; u < inst.n(); ++u) {
      if (u != skip) edges.push_back({u, 1});
    }
    const Matching m(edges);
    const StructureView v = structure_view(inst, m);
    std::size_t expected = 0;
    for (const Cycle& cy : cycle_decomposition(inst, 1, 2)) {
      const bool has_skip = std::find(cy.vertices.begin(), cy.vertices.end(), skip) != cy.vertices.end();
      if (!has_skip) ++expected;
    }
    EXPECT_EQ(v.alt_cycles.size(), expected);
    for (const Cycle& cy : v.alt_cycles) {
      EXPECT_EQ(std::find(cy.vertices.begin(), cy.vertices.end(), skip), cy.vertices.end());
    }
  }
}

TEST(StructureView, ComponentPathsAreNearlyAlternating) {
  Gen g(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 15), g.below(2) == 0);
    const Matching m = tsupport::random_near_perfect(g, inst);
    const StructureView v = structure_view(inst, m);
    for (int c = 1; c <= 2; ++c) {
      const AltPath& p = c == 1 ? v.p1 : v.p2;
      EXPECT_EQ(p.at(1), v.u_a);
      EXPECT_EQ(p.at(p.vertex_count()), v.u_b);
      EXPECT_EQ(p.length() % 2, 1);
      for (int pos = 1; pos <= p.length(); ++pos) {
        const bool matched = m.contains(tsupport::path_edge(inst, p, pos));
        EXPECT_EQ(matched, pos % 2 == 0);
        if (!matched) {
          EXPECT_EQ(p.color(pos), c);
        }
      }
    }
  }
}

TEST(Shift, ReferencePositionsGiveReference) {
  for (const NearlyAltPath& p : fuzz_paths(11, 100)) {
    const Matching ref = p.shift(p.i(), p.j());
    EXPECT_EQ(direct_shift(p, p.i(), p.j()), ref);
    EXPECT_EQ(NearlyAltPath(p.instance(), p.path(), ref).shift(p.i(), p.j()), ref);
  }
}

TEST(Shift, FourVertexExample) {
  const Instance inst = tsupport::cyclic3();
  // 0 -M1- B0 -M3- 1 -M1- B1, with B0-1 matched and 2-B2 off the path.
  const AltPath path = make_path(inst, {0, 3, 1, 4});
  EXPECT_EQ(path.edge_colors, (std::vector<int>{1, 3, 1}));
  const Matching m({{1, 3}, {2, 1}});
  const NearlyAltPath p(inst, path, m);
  EXPECT_EQ(p.i(), 1);
  EXPECT_EQ(p.j(), 4);
  EXPECT_EQ(p.shift(1, 2), Matching({{1, 1}, {2, 1}}));
  EXPECT_EQ(shift_matching(p, 1, 2), Matching({{1, 1}, {2, 1}}));
  EXPECT_EQ(p.shift(1, 4), m);
  EXPECT_THROW(p.shift(2, 4), Error);
  EXPECT_THROW(p.shift(1, 6), Error);
}

TEST(Shift, MatchesDefinitionAndStaysNearlyAlternating) {
  for (const NearlyAltPath& p : fuzz_paths(12, 150)) {
    const int k = p.vertex_count();
    for (int i = 1; i < k; i += 2) {
      for (int j = i + 1; j <= k; j += 2) {
        const Matching m = p.shift(i, j);
        ASSERT_EQ(m, direct_shift(p, i, j));
        EXPECT_EQ(static_cast<int>(m.size()), p.instance().n() - 1);
        EXPECT_TRUE(is_matching(p.instance(), m));
        const NearlyAltPath q(p.instance(), p.path(), m);
        EXPECT_EQ(q.i(), i);
        EXPECT_EQ(q.j(), j);
        EXPECT_EQ(q.shift(p.i(), p.j()), p.shift(p.i(), p.j()));
      }
    }
  }
}

TEST(Shift, DeterministicAndCountsAgree) {
  for (const NearlyAltPath& p : fuzz_paths(13, 100)) {
    const int k = p.vertex_count();
    for (int i = 1; i < k; i += 2) {
      for (int j = i + 1; j <= k; j += 2) EXPECT_EQ(p.counts_at(i, j), p.shift(i, j).counts());
    }
  }
}

TEST(SignedCounts, SmallExamples) {
  const Instance inst = tsupport::cyclic3();
  const AltPath path = make_path(inst, {0, 3, 1, 4});
  const NearlyAltPath p(inst, path, Matching({{1, 3}, {2, 1}}));
  // P_{1,4}: M1 not in M, M3 in M, M1 not in M.
  EXPECT_EQ(p.f(1), -2);
  EXPECT_EQ(p.f(2), 0);
  EXPECT_EQ(p.f(3), 1);
  // Single edge between the unsaturated positions, in M3 \ M.
  const NearlyAltPath q = p.reposition(1, 2);
  EXPECT_EQ(q.f(1), -1);
  EXPECT_EQ(f_c(p.reposition(3, 4), 1), -1);

  // 0 -M1- B0 -M2- 2 -M3- B1 -M1- 1: M1 out, M2 in, M3 out.
  const AltPath path2 = make_path(inst, {0, 3, 2, 4, 1, 5});
  EXPECT_EQ(path2.edge_colors, (std::vector<int>{1, 2, 3, 1, 2}));
  const NearlyAltPath r(inst, path2, Matching({{2, 2}, {1, 2}}));
  ASSERT_EQ(r.i(), 1);
  ASSERT_EQ(r.j(), 4);
  EXPECT_EQ(r.f(1), -1);
  EXPECT_EQ(r.f(2), 1);
  EXPECT_EQ(r.f(3), -1);
  const NearlyAltPath s = r.reposition(3, 4);
  EXPECT_EQ(s.f(3), -1);
}

TEST(SignedCounts, SumIsMinusOne) {
  for (const NearlyAltPath& p : fuzz_paths(14, 100)) {
    EXPECT_EQ(p.f(1) + p.f(2) + p.f(3), -1);
  }
}

// For any two shifts of one path, a_c changes exactly as f_c does.
TEST(SignedCounts, ChangeIdentityOverAllShiftPairs) {
  for (const NearlyAltPath& p : fuzz_paths(15, 120)) {
    struct At {
      ColorCounts counts;
      int f[4];
    };
    std::vector<At> all;
    const int k = p.vertex_count();
    for (int i = 1; i < k; i += 2) {
      for (int j = i + 1; j <= k; j += 2) {
        const Matching m = direct_shift(p, i, j);
        At at{m.counts(), {0, 0, 0, 0}};
        for (int c = 1; c <= 3; ++c) {
          at.f[c] = direct_f(p, m, c, i, j);
          ASSERT_EQ(at.f[c], p.f_at(c, i, j));
        }
        all.push_back(at);
      }
    }
    for (const At& x : all) {
      for (const At& y : all) {
        for (int c = 1; c <= 3; ++c) ASSERT_EQ(y.counts[c] - x.counts[c], y.f[c] - x.f[c]);
      }
    }
  }
}

TEST(SignedCounts, GoodPathsCountColorsBySign) {
  int good_paths = 0;
  for (const NearlyAltPath& p : fuzz_paths(16, 300)) {
    const auto c = is_good(p.path());
    if (!c) continue;
    ++good_paths;
    const int k = p.vertex_count();
    for (int i = 1; i < k; i += 2) {
      for (int j = i + 1; j <= k; j += 2) {
        EXPECT_EQ(p.color_edges_between(*c, i, j), -p.f_at(*c, i, j));
        EXPECT_EQ(p.color_edges_between(3 - *c, i, j), p.f_at(3 - *c, i, j));
      }
    }
  }
  EXPECT_GT(good_paths, 100);
}

TEST(Good, Examples) {
  const Instance inst = tsupport::cyclic3();
  // M3 edge alone: both conditions hold vacuously, reported as 1.
  EXPECT_EQ(is_good(make_path(inst, {0, 5})), 1);
  EXPECT_TRUE(is_c_good(make_path(inst, {0, 5}), 2));
  // M1 at positions 1 and 3, M2 at 2 (an M1-alternating path).
  const AltPath m1_alt = make_path(inst, {0, 3, 2, 5, 1});
  ASSERT_EQ(m1_alt.edge_colors, (std::vector<int>{1, 2, 1, 2}));
  EXPECT_EQ(is_good(m1_alt), 1);
  // M1 at an even position with M2 at an odd one is the 2-good pattern.
  const AltPath two_good = make_path(inst, {2, 3, 0, 4});
  ASSERT_EQ(two_good.edge_colors, (std::vector<int>{2, 1, 2}));
  EXPECT_EQ(is_good(two_good), 2);
  // M1 at both parities: neither.
  const AltPath mixed = make_path(inst, {0, 3, 2, 4, 1, 5});
  ASSERT_EQ(mixed.edge_colors, (std::vector<int>{1, 2, 3, 1, 2}));
  EXPECT_EQ(is_good(mixed), std::nullopt);
}

TEST(Good, M1AndM2AlternatingPathsAreGood) {
  Gen g(18);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 12), false);
    const int c = g.range(1, 2);
    const int other = g.range(1, 2) == 1 ? 3 - c : 3;
    // Walk alternating M_c and one other color, starting with either.
    std::vector<Vertex> vs{g.below(inst.vertex_count())};
    int color = g.below(2) == 0 ? c : other;
    std::set<Vertex> used{vs[0]};
    while (true) {
      const Vertex w = inst.neighbor(vs.back(), color);
      if (used.count(w)) break;
      vs.push_back(w);
      used.insert(w);
      color = color == c ? other : c;
    }
    if (vs.size() < 2) continue;
    const AltPath p = make_path(inst, vs);
    EXPECT_TRUE(is_good(p).has_value());
    ++checked;
  }
  EXPECT_GT(checked, 250);
}

TEST(Good, MatchesDefinitionOnRandomWalks) {
  Gen g(19);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 10), false);
    const AltPath p = random_walk(g, inst, g.range(1, 8));
    if (p.length() == 0) continue;
    EXPECT_EQ(is_good(p), direct_good(p));
    for (int c = 1; c <= 2; ++c) {
      bool expect = true;
      for (int pos = 1; pos <= p.length(); ++pos) {
        expect = expect && !(p.color(pos) == c && pos % 2 == 0) && !(p.color(pos) == 3 - c && pos % 2 == 1);
      }
      EXPECT_EQ(is_c_good(p, c), expect);
    }
  }
}

TEST(Reachability, CyclicThreeReachesEverything) {
  const Instance inst = tsupport::cyclic3();
  const Matching m({{0, 1}, {1, 1}});
  const AltReach r = alternating_reachability(inst, m, 2);
  for (int v = 0; v < 6; ++v) EXPECT_TRUE(r.reached[static_cast<std::size_t>(v)]) << v;
  const auto direct = direct_reach(inst, m, 2);
  EXPECT_EQ(std::count(direct.begin(), direct.end(), 1), 6);
  EXPECT_THROW(alternating_reachability(inst, m, 0), Error);
}

TEST(Reachability, MatchesDirectBfsAndCoversConnectedInstances) {
  Gen g(20);
  for (int trial = 0; trial < 300; ++trial) {
    const bool connected = g.below(2) == 0;
    const Instance inst = tsupport::random_instance(g, g.range(3, 16), connected);
    const Matching m = tsupport::random_near_perfect(g, inst);
    const StructureView v = structure_view(inst, m);
    if (!is_connected(inst)) {
      try {
        alternating_reachability(inst, m, v.u_a);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Disconnected);
      }
      continue;
    }
    for (Vertex root : {v.u_a, v.u_b}) {
      const AltReach r = alternating_reachability(inst, m, root);
      const auto direct = direct_reach(inst, m, root);
      EXPECT_EQ(std::vector<char>(r.reached.begin(), r.reached.end()), direct);
      EXPECT_EQ(std::count(r.reached.begin(), r.reached.end(), 1), inst.vertex_count());
      for (Vertex w : r.order) {
        const auto path = r.path_to(w);
        EXPECT_EQ(path.front(), root);
        EXPECT_EQ(path.back(), w);
        const AltPath ap = make_path(inst, path);
        for (int pos = 1; pos <= ap.length(); ++pos) {
          EXPECT_EQ(m.contains(tsupport::path_edge(inst, ap, pos)), pos % 2 == 0);
        }
      }
    }
  }
}

TEST(MaxAltWalk, StopsAtUnsaturatedPartner) {
  const Instance inst = tsupport::cyclic3();
  // 0's M3 partner is B2, left free.
  const AltPath p = max_alt_walk(inst, Matching({{1, 1}}), 0);
  EXPECT_EQ(p.vertices, (std::vector<Vertex>{0, 5}));
  EXPECT_EQ(p.edge_colors, std::vector<int>{3});
  EXPECT_THROW(max_alt_walk(inst, Matching({{0, 1}}), 0), Error);
}

TEST(MaxAltWalk, OddLengthBoundedAndDeterministic) {
  Gen g(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = tsupport::random_instance(g, g.range(3, 20), false);
    // A random matching inside M1 ∪ M2.
    std::vector<Edge> edges;
    std::vector<char> used_b(static_cast<std::size_t>(inst.n()), 0);
    for (int u : g.perm(inst.n())) {
      if (g.below(4) == 0) continue;
      const int c = g.range(1, 2);
      const int b = inst.perm(c)[static_cast<std::size_t>(u)];
      if (used_b[static_cast<std::size_t>(b)]) continue;
      used_b[static_cast<std::size_t>(b)] = 1;
      edges.push_back({u, c});
    }
    const Matching m(edges);
    std::vector<Vertex> free;
    for (int u = 0; u < inst.n(); ++u) {
      bool sat = false;
      for (const Edge& e : edges) sat = sat || e.u == u;
      if (!sat) free.push_back(u);
    }
    if (free.empty()) continue;
    const Vertex start = free[static_cast<std::size_t>(g.below(static_cast<int>(free.size())))];
    const AltPath p = max_alt_walk(inst, m, start);
    EXPECT_EQ(p.length() % 2, 1);
    int m3 = 0;
    for (int pos = 1; pos <= p.length(); ++pos) {
      if (pos % 2 == 1) {
        EXPECT_EQ(p.color(pos), 3);
        ++m3;
      } else {
        EXPECT_TRUE(m.contains(tsupport::path_edge(inst, p, pos)));
      }
    }
    EXPECT_LE(m3, static_cast<int>(m.size()) + 1);
    EXPECT_EQ(max_alt_walk(inst, m, start), p);
  }
}
