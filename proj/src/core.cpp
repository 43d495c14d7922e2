#include "tricolor/core.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace tricolor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::MatchingsOverlap: return "MatchingsOverlap";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidTargetSum: return "InvalidTargetSum";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::MatchingWrongSize: return "MatchingWrongSize";
    case ErrorCode::NotAMatching: return "NotAMatching";
    case ErrorCode::BadParity: return "BadParity";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::VertexSaturated: return "VertexSaturated";
    case ErrorCode::StartSaturated: return "StartSaturated";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::A3Zero: return "A3Zero";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::IterationGuardExceeded: return "IterationGuardExceeded";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

namespace {

template <class Tag>
std::string triple_string(const ColorTriple<Tag>& t) {
  std::ostringstream os;
  os << '(' << t[1] << ',' << t[2] << ',' << t[3] << ')';
  return os.str();
}

}  // namespace

std::string to_string(const TargetTriple& t) { return triple_string(t); }
std::string to_string(const ColorCounts& t) { return triple_string(t); }

Instance Instance::from_perms(std::array<std::vector<int>, 3> perms) {
  RawInstance raw;
  raw.n = static_cast<long long>(perms[0].size());
  for (const auto& p : perms) raw.perms.emplace_back(p.begin(), p.end());
  return validate_instance(raw);
}

Instance validate_instance(const RawInstance& raw) {
  if (raw.perms.size() != 3) {
    throw Error(ErrorCode::LengthMismatch,
                "expected 3 permutations, got " + std::to_string(raw.perms.size()));
  }
  if (raw.n < 3) {
    throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(raw.n) + " < 3");
  }
  const int n = static_cast<int>(raw.n);
  for (std::size_t c = 0; c < 3; ++c) {
    if (raw.perms[c].size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::LengthMismatch, "permutation " + std::to_string(c + 1) + " has length " +
                                                 std::to_string(raw.perms[c].size()) + ", expected " +
                                                 std::to_string(n));
    }
  }

  Instance inst;
  inst.n_ = n;
  for (std::size_t c = 0; c < 3; ++c) {
    inst.perm_[c].resize(static_cast<std::size_t>(n));
    inst.inv_[c].assign(static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
      const long long b = raw.perms[c][static_cast<std::size_t>(u)];
      if (b < 0 || b >= n || inst.inv_[c][static_cast<std::size_t>(b)] != -1) {
        throw Error(ErrorCode::NotABijection, "color " + std::to_string(c + 1));
      }
      inst.perm_[c][static_cast<std::size_t>(u)] = static_cast<int>(b);
      inst.inv_[c][static_cast<std::size_t>(b)] = u;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int c = 1; c <= 3; ++c) {
      for (int c2 = c + 1; c2 <= 3; ++c2) {
        if (inst.perm_[c - 1][u] == inst.perm_[c2 - 1][u]) {
          throw Error(ErrorCode::MatchingsOverlap, "vertex " + std::to_string(u) + ", colors " +
                                                       std::to_string(c) + " and " + std::to_string(c2));
        }
      }
    }
  }
  return inst;
}

int Instance::edge_color(Vertex x, Vertex y) const {
  if (is_a(x) == is_a(y)) return 0;
  const Vertex a = is_a(x) ? x : y;
  const Vertex b = is_a(x) ? y : x;
  for (int c = 1; c <= 3; ++c) {
    if (n_ + perm_[c - 1][a] == b) return c;
  }
  return 0;
}

Instance Instance::relabel(const std::array<int, 3>& to_old) const {
  Instance out;
  out.n_ = n_;
  for (std::size_t c = 0; c < 3; ++c) {
    out.perm_[c] = perm_[to_old[c] - 1];
    out.inv_[c] = inv_[to_old[c] - 1];
  }
  return out;
}

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.color >= 1 && e.color <= 3) ++counts_[e.color];
  }
}

bool Matching::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::vector<Component> components(const Instance& inst) {
  const int n = inst.n();
  std::vector<int> comp_of(static_cast<std::size_t>(2 * n), -1);
  std::vector<Component> out;
  for (int start = 0; start < n; ++start) {
    if (comp_of[start] != -1) continue;
    const int id = static_cast<int>(out.size());
    Component comp;
    std::queue<Vertex> queue;
    queue.push(start);
    comp_of[start] = id;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      if (inst.is_a(v)) {
        comp.a_vertices.push_back(v);
      } else {
        comp.b_vertices.push_back(v - n);
      }
      for (int c = 1; c <= 3; ++c) {
        const Vertex w = inst.neighbor(v, c);
        if (comp_of[w] == -1) {
          comp_of[w] = id;
          queue.push(w);
        }
      }
    }
    std::sort(comp.a_vertices.begin(), comp.a_vertices.end());
    std::sort(comp.b_vertices.begin(), comp.b_vertices.end());
    out.push_back(std::move(comp));
  }
  // Discovery order already sorts ties by lowest A vertex.
  std::stable_sort(out.begin(), out.end(),
                   [](const Component& x, const Component& y) { return x.size() < y.size(); });
  return out;
}

bool is_connected(const Instance& inst) { return components(inst).size() == 1; }

Component merge(const std::vector<Component>& parts) {
  Component out;
  for (const auto& p : parts) {
    out.a_vertices.insert(out.a_vertices.end(), p.a_vertices.begin(), p.a_vertices.end());
    out.b_vertices.insert(out.b_vertices.end(), p.b_vertices.begin(), p.b_vertices.end());
  }
  std::sort(out.a_vertices.begin(), out.a_vertices.end());
  std::sort(out.b_vertices.begin(), out.b_vertices.end());
  return out;
}

Instance restrict(const Instance& inst, const Component& comp) {
  std::vector<int> local_b(static_cast<std::size_t>(inst.n()), -1);
  for (std::size_t i = 0; i < comp.b_vertices.size(); ++i) local_b[comp.b_vertices[i]] = static_cast<int>(i);
  std::array<std::vector<int>, 3> perms;
  for (int c = 1; c <= 3; ++c) {
    auto& p = perms[c - 1];
    p.reserve(comp.a_vertices.size());
    for (int u : comp.a_vertices) {
      const int b = local_b[inst.perm(c)[u]];
      ensure(b >= 0, "restrict: component is not closed under the instance's edges");
      p.push_back(b);
    }
  }
  return Instance::from_perms(std::move(perms));
}

Matching lift(const Component& comp, const Matching& local) {
  std::vector<Edge> edges;
  edges.reserve(local.size());
  for (const Edge& e : local.edges()) edges.push_back({comp.a_vertices[e.u], e.color});
  return Matching(std::move(edges));
}

Matching join(const Matching& a, const Matching& b) {
  std::vector<Edge> edges = a.edges();
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return Matching(std::move(edges));
}

std::string_view to_string(VerifyFailure f) {
  switch (f) {
    case VerifyFailure::None: return "none";
    case VerifyFailure::EdgeExistence: return "edge-existence";
    case VerifyFailure::Disjointness: return "disjointness";
    case VerifyFailure::Counts: return "counts";
  }
  return "unknown";
}

namespace {

VerifyReport check_structure(const Instance& inst, const Matching& m) {
  const int n = inst.n();
  for (const Edge& e : m.edges()) {
    if (e.u < 0 || e.u >= n || e.color < 1 || e.color > 3) {
      return {false, VerifyFailure::EdgeExistence,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.color) + ") is not an instance edge"};
    }
  }
  std::vector<char> a_used(static_cast<std::size_t>(n), 0);
  std::vector<char> b_used(static_cast<std::size_t>(n), 0);
  for (const Edge& e : m.edges()) {
    const int b = inst.perm(e.color)[e.u];
    if (a_used[e.u]) return {false, VerifyFailure::Disjointness, "A-vertex " + std::to_string(e.u) + " covered twice"};
    if (b_used[b]) return {false, VerifyFailure::Disjointness, "B-vertex " + std::to_string(b) + " covered twice"};
    a_used[e.u] = b_used[b] = 1;
  }
  return {};
}

}  // namespace

bool is_matching(const Instance& inst, const Matching& m) { return check_structure(inst, m).ok; }

VerifyReport verify_matching(const Instance& inst, const Matching& m, const TargetTriple& target) {
  VerifyReport report = check_structure(inst, m);
  if (!report.ok) return report;
  const ColorCounts got = m.counts();
  if (triple_cast<TargetTag>(got) != target) {
    return {false, VerifyFailure::Counts, "counts " + to_string(got) + " != target " + to_string(target)};
  }
  return report;
}

}  // namespace tricolor
