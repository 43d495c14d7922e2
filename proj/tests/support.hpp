#pragma once

// Test-side helpers. Everything here is recomputed from the raw permutations
// so the checks do not lean on the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <vector>

#include "tricolor/core.hpp"
#include "tricolor/structure.hpp"

namespace tsupport {

using tricolor::BudgetTriple;
using tricolor::ColorCounts;
using tricolor::Edge;
using tricolor::Instance;
using tricolor::Matching;
using tricolor::AltPath;
using tricolor::NearlyAltPath;
using tricolor::StructureView;
using tricolor::Vertex;
using tricolor::TargetTriple;

// splitmix64 stream; modulo bias is irrelevant at these bounds.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  std::vector<int> perm(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(below(i + 1))]);
    return p;
  }

 private:
  std::uint64_t s_;
};

inline Instance cyclic(int n, int s1, int s2, int s3) {
  std::array<std::vector<int>, 3> perms;
  const int s[3] = {s1, s2, s3};
  for (int c = 0; c < 3; ++c) {
    for (int u = 0; u < n; ++u) perms[static_cast<std::size_t>(c)].push_back((u + s[c]) % n);
  }
  return Instance::from_perms(perms);
}

inline Instance cyclic3() { return cyclic(3, 0, 1, 2); }

inline std::array<std::vector<int>, 3> raw_perms(const Instance& inst) {
  return {inst.perm(1), inst.perm(2), inst.perm(3)};
}

// Vertex counts of the connected components, by BFS over the union graph.
inline std::vector<int> component_sizes(const Instance& inst) {
  const int n = inst.n();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(2 * n));
  for (int c = 1; c <= 3; ++c) {
    for (int u = 0; u < n; ++u) {
      const int b = n + inst.perm(c)[static_cast<std::size_t>(u)];
      adj[static_cast<std::size_t>(u)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(u);
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
  std::vector<int> sizes;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int w : adj[static_cast<std::size_t>(queue[q])]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    sizes.push_back(static_cast<int>(queue.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Edge counts of the cycles of M_c ∪ M_c2, read off the cycle type of
// perm_c2^{-1} ∘ perm_c on the A side.
inline std::vector<int> two_factor_cycle_lengths(const Instance& inst, int c, int c2) {
  const int n = inst.n();
  std::vector<int> inv(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) inv[static_cast<std::size_t>(inst.perm(c2)[static_cast<std::size_t>(u)])] = u;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> out;
  for (int s = 0; s < n; ++s) {
    int len = 0;
    for (int u = s; !seen[static_cast<std::size_t>(u)]; u = inv[static_cast<std::size_t>(inst.perm(c)[static_cast<std::size_t>(u)])]) {
      seen[static_cast<std::size_t>(u)] = 1;
      ++len;
    }
    if (len > 0) out.push_back(2 * len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Instance random_instance(Gen& g, int n, bool connected) {
  while (true) {
    std::array<std::vector<int>, 3> perms;
    perms[0] = g.perm(n);
    for (int c = 1; c < 3; ++c) {
      while (true) {
        std::vector<int> p = g.perm(n);
        bool ok = true;
        for (int d = 0; d < c && ok; ++d) {
          for (int u = 0; u < n && ok; ++u) ok = p[static_cast<std::size_t>(u)] != perms[static_cast<std::size_t>(d)][static_cast<std::size_t>(u)];
        }
        if (ok) {
          perms[static_cast<std::size_t>(c)] = std::move(p);
          break;
        }
      }
    }
    Instance inst = Instance::from_perms(perms);
    if (!connected || component_sizes(inst).size() == 1) return inst;
  }
}

// Disjoint union of random connected blocks, A and B sides shuffled.
inline Instance random_blocks(Gen& g, const std::vector<int>& sizes) {
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  std::array<std::vector<int>, 3> perms;
  int off = 0;
  for (int s : sizes) {
    const Instance block = random_instance(g, s, true);
    for (int c = 0; c < 3; ++c) {
      for (int b : block.perm(c + 1)) perms[static_cast<std::size_t>(c)].push_back(b + off);
    }
    off += s;
  }
  const std::vector<int> pa = g.perm(n);
  const std::vector<int> pb = g.perm(n);
  std::array<std::vector<int>, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      out[static_cast<std::size_t>(c)][static_cast<std::size_t>(pa[static_cast<std::size_t>(u)])] =
          pb[static_cast<std::size_t>(perms[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)])];
    }
  }
  return Instance::from_perms(out);
}

// Either a connected instance or a union of 2+ blocks (n >= 6).
inline Instance random_mixed(Gen& g, int n) {
  if (n < 6 || g.below(2) == 0) return random_instance(g, n, true);
  const int blocks = g.range(2, n / 3);
  std::vector<int> sizes(static_cast<std::size_t>(blocks), 3);
  for (int extra = n - 3 * blocks; extra > 0; --extra) ++sizes[static_cast<std::size_t>(g.below(blocks))];
  return random_blocks(g, sizes);
}

// Direct check of a matching: in-range edges, vertex-disjointness, counts.
inline bool valid_with_counts(const Instance& inst, const Matching& m, const TargetTriple& t) {
  const int n = inst.n();
  std::vector<char> a(static_cast<std::size_t>(n), 0), b(static_cast<std::size_t>(n), 0);
  int counts[4] = {0, 0, 0, 0};
  for (const Edge& e : m.edges()) {
    if (e.u < 0 || e.u >= n || e.color < 1 || e.color > 3) return false;
    const int bb = inst.perm(e.color)[static_cast<std::size_t>(e.u)];
    if (a[static_cast<std::size_t>(e.u)] || b[static_cast<std::size_t>(bb)]) return false;
    a[static_cast<std::size_t>(e.u)] = b[static_cast<std::size_t>(bb)] = 1;
    ++counts[e.color];
  }
  return counts[1] == t[1] && counts[2] == t[2] && counts[3] == t[3];
}

inline bool perfect_within(const Instance& inst, const Matching& m, const BudgetTriple& budget) {
  const ColorCounts c = m.counts();
  return static_cast<int>(m.size()) == inst.n() && c[1] <= budget[1] && c[2] <= budget[2] && c[3] <= budget[3] &&
         valid_with_counts(inst, m, {c[1], c[2], c[3]});
}

// Every edge subset of the 3n edges that is a matching of the given size.
// Exponential in 3n; keep n <= 6.
inline void for_each_subset_matching(const Instance& inst, int size, const std::function<void(const std::vector<Edge>&)>& f) {
  const int n = inst.n();
  const int edges = 3 * n;
  for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<Edge> es;
    std::uint32_t a = 0, b = 0;
    bool ok = true;
    for (int e = 0; e < edges && ok; ++e) {
      if (!(mask >> e & 1u)) continue;
      const int u = e / 3;
      const int c = e % 3 + 1;
      const int bb = inst.perm(c)[static_cast<std::size_t>(u)];
      ok = !(a >> u & 1u) && !(b >> bb & 1u);
      a |= 1u << u;
      b |= 1u << bb;
      es.push_back({u, c});
    }
    if (ok) f(es);
  }
}

inline bool subset_exists(const Instance& inst, const TargetTriple& t) {
  bool found = false;
  for_each_subset_matching(inst, t.sum(), [&](const std::vector<Edge>& es) {
    int c[4] = {0, 0, 0, 0};
    for (const Edge& e : es) ++c[e.color];
    found = found || (c[1] == t[1] && c[2] == t[2] && c[3] == t[3]);
  });
  return found;
}

// Pairs of vertex-disjoint edges, counted directly.
inline long long disjoint_pairs(const Instance& inst) {
  const int n = inst.n();
  long long count = 0;
  for (int u = 0; u < n; ++u) {
    for (int c = 1; c <= 3; ++c) {
      for (int u2 = u + 1; u2 < n; ++u2) {
        for (int c2 = 1; c2 <= 3; ++c2) {
          if (inst.perm(c)[static_cast<std::size_t>(u)] != inst.perm(c2)[static_cast<std::size_t>(u2)]) ++count;
        }
      }
    }
  }
  return count;
}

// A perfect matching by augmenting paths over a shuffled edge order, with one
// random edge dropped: a random matching of size n-1.
inline Matching random_near_perfect(Gen& g, const Instance& inst) {
  const int n = inst.n();
  std::vector<std::vector<int>> order(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    order[static_cast<std::size_t>(u)] = {1, 2, 3};
    for (int i = 2; i > 0; --i) std::swap(order[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)], order[static_cast<std::size_t>(u)][static_cast<std::size_t>(g.below(i + 1))]);
  }
  std::vector<int> owner(static_cast<std::size_t>(n), -1);  // B -> A
  std::vector<int> color(static_cast<std::size_t>(n), 0);   // A -> color
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int u) {
    for (int c : order[static_cast<std::size_t>(u)]) {
      const int b = inst.perm(c)[static_cast<std::size_t>(u)];
      if (seen[static_cast<std::size_t>(b)]) continue;
      seen[static_cast<std::size_t>(b)] = 1;
      if (owner[static_cast<std::size_t>(b)] < 0 || augment(owner[static_cast<std::size_t>(b)])) {
        owner[static_cast<std::size_t>(b)] = u;
        color[static_cast<std::size_t>(u)] = c;
        return true;
      }
    }
    return false;
  };
  const std::vector<int> a_order = g.perm(n);
  for (int u : a_order) {
    seen.assign(static_cast<std::size_t>(n), 0);
    augment(u);
  }
  const int drop = g.below(n);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    if (u != drop) edges.push_back({u, color[static_cast<std::size_t>(u)]});
  }
  return Matching(std::move(edges));
}

// A-vertex key of the edge v_p v_{p+1}.
inline Edge path_edge(const Instance& inst, const AltPath& p, int pos) {
  const Vertex x = p.at(pos);
  const Vertex y = p.at(pos + 1);
  return {inst.is_a(x) ? x : y, p.color(pos)};
}

// M(P;i,j) straight from the definition: off-path edges of the reference,
// odd positions outside [i,j), even positions inside.
inline Matching direct_shift(const NearlyAltPath& p, int i, int j) {
  const Instance& inst = p.instance();
  std::vector<Edge> edges = p.off_path();
  for (int pos = 1; pos < p.vertex_count(); ++pos) {
    const bool inside = pos >= i && pos < j;
    if ((pos % 2 == 1) != inside) edges.push_back(path_edge(inst, p.path(), pos));
  }
  return Matching(edges);
}

// f_c from the definition: color-c edges of P_{i,j} in M minus those not in M.
inline int direct_f(const NearlyAltPath& p, const Matching& m, int c, int i, int j) {
  int f = 0;
  for (int pos = i; pos < j; ++pos) {
    if (p.path().color(pos) != c) continue;
    f += m.contains(path_edge(p.instance(), p.path(), pos)) ? 1 : -1;
  }
  return f;
}

struct Pair {
  Instance inst;
  Matching m;
};

// Connected instance with a random matching of size n-1 that uses M3.
inline Pair random_pair(Gen& g, int n_min, int n_max) {
  while (true) {
    Instance inst = random_instance(g, g.range(n_min, n_max), true);
    for (int tries = 0; tries < 20; ++tries) {
      Matching m = random_near_perfect(g, inst);
      if (m.counts()[3] >= 1) return {std::move(inst), std::move(m)};
    }
  }
}

// Paths keep a pointer to their instance, so the instances live here.
struct PathSet {
  std::deque<Instance> instances;
  std::vector<NearlyAltPath> paths;

  auto begin() const { return paths.begin(); }
  auto end() const { return paths.end(); }
};

// Nearly-alternating paths from random near-perfect matchings: the two
// components P1(M), P2(M), re-anchored at random positions.
inline PathSet fuzz_paths(std::uint64_t seed, int count) {
  Gen g(seed);
  PathSet set;
  auto& out = set.paths;
  while (static_cast<int>(out.size()) < count) {
    const Instance& inst =
        set.instances.emplace_back(random_instance(g, g.range(3, 12), g.below(2) == 0));
    const Matching m = random_near_perfect(g, inst);
    const StructureView view = structure_view(inst, m);
    for (const AltPath* path : {&view.p1, &view.p2}) {
      NearlyAltPath p(inst, *path, m);
      const int k = p.vertex_count();
      const int i = 2 * g.below(k / 2) + 1;
      const int j = i + 1 + 2 * g.below((k - i + 1) / 2);
      out.push_back(p.reposition(i, j));
    }
  }
  return set;
}

}  // namespace tsupport
