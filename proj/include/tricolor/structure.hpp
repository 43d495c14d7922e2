#pragma once

// Alternating structures over a three-matching instance: per-vertex matching
// tables, paths with 1-based positions, 2-factor cycle decompositions, the
// derived objects P1(M), P2(M), C0(M), and the cycle family of M-alternating
// M1∪M2 cycles, nearly-alternating paths with their shift matchings M(P;i,j)
// and the signed counts f_c.
//
// Path positions are 1-based: vertex position p is v_p, and edge position p is
// the edge v_p v_{p+1}. Parity statements about unsaturated positions hold in
// this numbering.

#include <optional>
#include <vector>

#include "tricolor/core.hpp"

namespace tricolor {

/// Mutable per-vertex view of a matching: the color of the matched edge at
/// every vertex (0 when unsaturated). Holds a pointer to the instance, which
/// must outlive it.
class MateTable {
 public:
  explicit MateTable(const Instance& inst);
  /// Throws NotAMatching if `m` is not a matching of `inst`.
  MateTable(const Instance& inst, const Matching& m);

  const Instance& instance() const { return *inst_; }

  int color_at(Vertex v) const { return color_[static_cast<std::size_t>(v)]; }
  bool saturated(Vertex v) const { return color_at(v) != 0; }
  Vertex mate(Vertex v) const { return saturated(v) ? inst_->neighbor(v, color_at(v)) : kNoVertex; }
  bool has_edge(Vertex x, Vertex y) const { return saturated(x) && mate(x) == y; }

  /// Adds the edge of `color` at v. Both endpoints must be free.
  void add(Vertex v, int color);
  void add(const Edge& e) { add(e.u, e.color); }
  /// Removes the matched edge at v (which must be saturated).
  void remove(Vertex v);

  int size() const { return size_; }
  ColorCounts counts() const { return counts_; }

  /// Unsaturated vertices in increasing id order.
  std::vector<Vertex> unsaturated() const;

  Matching to_matching() const;

  bool operator==(const MateTable& other) const { return color_ == other.color_; }

 private:
  const Instance* inst_;
  std::vector<std::uint8_t> color_;
  int size_ = 0;
  ColorCounts counts_;
};

struct AltPath {
  std::vector<Vertex> vertices;
  std::vector<int> edge_colors;  // edge_colors[p-1] is the color of edge position p

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int length() const { return static_cast<int>(edge_colors.size()); }
  Vertex at(int pos) const { return vertices[static_cast<std::size_t>(pos - 1)]; }
  int color(int pos) const { return edge_colors[static_cast<std::size_t>(pos - 1)]; }

  /// Sub-path P_{i,j} as a new path (positions renumbered from 1).
  AltPath sub(int i, int j) const;

  bool operator==(const AltPath&) const = default;
};

/// Builds a path from a vertex sequence. Throws PreconditionViolated if two
/// consecutive vertices are not adjacent or a vertex repeats.
AltPath make_path(const Instance& inst, std::vector<Vertex> vertices);

/// Cyclic vertex sequence; edge p joins vertices[p] and vertices[p+1 mod L].
struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<int> edge_colors;

  int edge_count() const { return static_cast<int>(vertices.size()); }
};

/// All cycles of M_c ∪ M_c2. Each cycle starts at its lowest A vertex with an
/// M_c edge; cycles are ordered by that vertex.
std::vector<Cycle> cycle_decomposition(const Instance& inst, int c, int c2);

/// M_c ∪ M_c2 cycles with per-vertex lookup.
class TwoFactor {
 public:
  TwoFactor(const Instance& inst, int c, int c2);

  const std::vector<Cycle>& cycles() const { return cycles_; }
  const Cycle& cycle(int id) const { return cycles_[static_cast<std::size_t>(id)]; }
  int cycle_of(Vertex v) const { return cycle_of_[static_cast<std::size_t>(v)]; }
  int position_of(Vertex v) const { return position_of_[static_cast<std::size_t>(v)]; }

  /// Walks cycle `id` from `from` in direction `step` (+1 or -1) through `to`.
  std::vector<Vertex> arc(int id, Vertex from, Vertex to, int step) const;

 private:
  std::vector<Cycle> cycles_;
  std::vector<int> cycle_of_;
  std::vector<int> position_of_;
};

/// True if every vertex of the cycle is matched by an edge of the cycle.
bool is_alternating_cycle(const MateTable& m, const Cycle& c);

struct StructureView {
  Vertex u_a = kNoVertex;  // unsaturated A-side vertex
  Vertex u_b = kNoVertex;  // unsaturated B-side vertex
  AltPath p1;              // component of M ∪ M1 through u_a, u_b; oriented from u_a
  AltPath p2;              // component of M ∪ M2 through u_a, u_b; oriented from u_a
  bool c0_is_cycle = false;
  std::vector<Cycle> alt_cycles;  // the M-alternating cycles of M1 ∪ M2
};

/// Throws MatchingWrongSize unless |M| = n-1.
StructureView structure_view(const Instance& inst, const Matching& m);
StructureView structure_view(const MateTable& m);

/// Path component of M ∪ M_c from the unsaturated vertex `from` to the other
/// unsaturated vertex. Requires |M| = n-1.
AltPath component_path(const MateTable& m, int c, Vertex from);

/// c in {1,2} when the path is c-good; 1 when it is both (all-M3); nullopt
/// when neither.
std::optional<int> is_good(const AltPath& path);
bool is_c_good(const AltPath& path, int c);

/// A path holding both unsaturated vertices of a size n-1 matching, with the
/// rest of the path saturated by matching edges on the path.
class NearlyAltPath {
 public:
  /// Throws PreconditionViolated if the nearly-alternating conditions fail.
  NearlyAltPath(const Instance& inst, AltPath path, const Matching& ref);
  NearlyAltPath(const Instance& inst, AltPath path, const MateTable& ref);

  const Instance& instance() const { return *inst_; }
  const AltPath& path() const { return path_; }
  int i() const { return i_; }
  int j() const { return j_; }
  int vertex_count() const { return path_.vertex_count(); }

  /// Counts of the reference matching.
  ColorCounts counts() const { return counts_at(i_, j_); }
  /// Counts of M(P;i2,j2), in O(1).
  ColorCounts counts_at(int i2, int j2) const;

  /// f_c(P, M) at the reference positions.
  int f(int color) const { return f_at(color, i_, j_); }
  /// f_c(P, M(P;i2,j2)).
  int f_at(int color, int i2, int j2) const;

  /// Number of edges of `color` on P_{i2,j2}.
  int color_edges_between(int color, int i2, int j2) const;

  /// M(P;i2,j2) = (M_P Δ P_{i2,j2}) ∪ (M \ P). Throws BadParity / OutOfRange.
  Matching shift(int i2, int j2) const;

  /// The same path with the shifted matching as reference.
  NearlyAltPath reposition(int i2, int j2) const;

  /// Edges of the reference matching not on the path.
  const std::vector<Edge>& off_path() const { return off_path_; }

  void check_positions(int i2, int j2) const;

 private:
  void init(const MateTable& ref);
  int prefix(int color, int parity, int pos) const;

  const Instance* inst_;
  AltPath path_;
  int i_ = 0;
  int j_ = 0;
  std::vector<Edge> off_path_;
  ColorCounts off_counts_;
  // prefix_[c-1][parity][p] = #edges at positions < p of color c and parity.
  std::array<std::array<std::vector<int>, 2>, 3> prefix_;
};

/// f_c(P, M) for a path P nearly-alternating for M.
int f_c(const NearlyAltPath& p, int color);

/// M(P;i2,j2).
Matching shift_matching(const NearlyAltPath& p, int i2, int j2);

/// BFS over M-alternating paths from an unsaturated vertex.
struct AltReach {
  Vertex root = kNoVertex;
  std::vector<Vertex> pred;   // predecessor on the alternating tree, kNoVertex at root/unreached
  std::vector<Vertex> order;  // discovery order
  std::vector<char> reached;

  /// Vertex sequence from root to w (w must be reached).
  std::vector<Vertex> path_to(Vertex w) const;
};

/// Throws Disconnected or VertexSaturated.
AltReach alternating_reachability(const Instance& inst, const Matching& m, Vertex v);
AltReach alternating_reachability(const MateTable& m, Vertex v);

/// The maximal walk from `start` alternating M3-edge, M'-edge, ..., ending
/// with an M3-edge at an M'-unsaturated vertex. Throws StartSaturated.
AltPath max_alt_walk(const Instance& inst, const Matching& m, Vertex start);
AltPath max_alt_walk(const MateTable& m, Vertex start);

}  // namespace tricolor
