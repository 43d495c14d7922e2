#pragma once

// Instance and matching model for bipartite graphs that are the union of three
// disjoint perfect matchings M1, M2, M3.
//
// Vertices carry a unified id: A-side vertex u is `u`, B-side vertex b is
// `n + b`. An edge is keyed by its A-side endpoint and its color; the B-side
// endpoint is always derived from the instance.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tricolor/error.hpp"

namespace tricolor {

inline constexpr int kColors = 3;

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

/// Three per-color integers addressed by color (1-based).
template <class Tag>
struct ColorTriple {
  std::array<int, 3> v{};

  constexpr ColorTriple() = default;
  constexpr ColorTriple(int x1, int x2, int x3) : v{x1, x2, x3} {}

  constexpr int& operator[](int color) { return v[static_cast<std::size_t>(color - 1)]; }
  constexpr int operator[](int color) const { return v[static_cast<std::size_t>(color - 1)]; }
  constexpr int sum() const { return v[0] + v[1] + v[2]; }

  bool operator==(const ColorTriple&) const = default;
};

struct TargetTag;
struct BudgetTag;
struct CountTag;

/// Exact multiplicities (a1, a2, a3).
using TargetTriple = ColorTriple<TargetTag>;
/// Upper bounds (b1, b2, b3).
using BudgetTriple = ColorTriple<BudgetTag>;
/// Observed per-color edge counts of a matching.
using ColorCounts = ColorTriple<CountTag>;

template <class To, class From>
constexpr ColorTriple<To> triple_cast(const ColorTriple<From>& t) {
  return {t.v[0], t.v[1], t.v[2]};
}

std::string to_string(const TargetTriple& t);
std::string to_string(const ColorCounts& t);

struct Edge {
  int u = 0;      // A-side vertex
  int color = 0;  // 1..3

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Instance {
 public:
  /// Validates and builds. Throws Error with NTooSmall, LengthMismatch,
  /// NotABijection or MatchingsOverlap.
  static Instance from_perms(std::array<std::vector<int>, 3> perms);

  int n() const { return n_; }
  int vertex_count() const { return 2 * n_; }

  const std::vector<int>& perm(int color) const { return perm_[color - 1]; }

  bool is_a(Vertex v) const { return v < n_; }
  Vertex b_vertex(int b) const { return n_ + b; }

  /// The neighbor of v along its edge of the given color.
  Vertex neighbor(Vertex v, int color) const {
    return v < n_ ? n_ + perm_[color - 1][v] : inv_[color - 1][v - n_];
  }

  /// Color of the edge joining x and y, or 0 when they are not adjacent.
  int edge_color(Vertex x, Vertex y) const;

  /// The edge of the given color incident to v.
  Edge edge_at(Vertex v, int color) const {
    return {v < n_ ? v : inv_[color - 1][v - n_], color};
  }

  Vertex a_end(const Edge& e) const { return e.u; }
  Vertex b_end(const Edge& e) const { return n_ + perm_[e.color - 1][e.u]; }

  /// Instance whose color i is this instance's color `to_old[i-1]`.
  Instance relabel(const std::array<int, 3>& to_old) const;

  bool operator==(const Instance& other) const { return perm_ == other.perm_; }

 private:
  friend Instance validate_instance(const struct RawInstance& raw);
  Instance() = default;

  int n_ = 0;
  std::array<std::vector<int>, 3> perm_;
  std::array<std::vector<int>, 3> inv_;
};

/// Raw, unvalidated instance data as read from a file or built by hand.
struct RawInstance {
  long long n = 0;
  std::vector<std::vector<long long>> perms;
};

Instance validate_instance(const RawInstance& raw);

/// A set of colored edges. Stored sorted; duplicates and conflicts are kept
/// so that verify_matching can report them.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  ColorCounts counts() const { return counts_; }
  bool contains(const Edge& e) const;

  bool operator==(const Matching& other) const { return edges_ == other.edges_; }

 private:
  std::vector<Edge> edges_;
  ColorCounts counts_;
};

/// Vertex set of a union of connected components, with the re-indexing used
/// by restrict(): local A vertex i is global `a_vertices[i]`, likewise for B.
struct Component {
  std::vector<int> a_vertices;  // sorted global A indices
  std::vector<int> b_vertices;  // sorted global B indices (0-based, side-local)

  int size() const { return static_cast<int>(a_vertices.size()); }
};

/// Connected components of M1 ∪ M2 ∪ M3, smallest first (ties by lowest A
/// vertex).
std::vector<Component> components(const Instance& inst);

bool is_connected(const Instance& inst);

/// Merges components into one vertex set (for restricting to G - V(F)).
Component merge(const std::vector<Component>& parts);

/// Re-indexed sub-instance induced by a union of components.
Instance restrict(const Instance& inst, const Component& comp);

/// Maps a matching of restrict(inst, comp) back to global A indices.
Matching lift(const Component& comp, const Matching& local);

/// Union of matchings on disjoint vertex sets.
Matching join(const Matching& a, const Matching& b);

enum class VerifyFailure { None, EdgeExistence, Disjointness, Counts };

struct VerifyReport {
  bool ok = true;
  VerifyFailure failure = VerifyFailure::None;
  std::string detail;
};

std::string_view to_string(VerifyFailure f);

/// Checks edge existence, vertex-disjointness, then exact counts; reports the
/// first violated condition.
VerifyReport verify_matching(const Instance& inst, const Matching& m, const TargetTriple& target);

/// Edge existence plus vertex-disjointness only.
bool is_matching(const Instance& inst, const Matching& m);

}  // namespace tricolor
