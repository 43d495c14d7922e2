#include "tricolor/structure.hpp"

#include <algorithm>
#include <queue>

namespace tricolor {

// ---------------------------------------------------------------- MateTable

MateTable::MateTable(const Instance& inst)
    : inst_(&inst), color_(static_cast<std::size_t>(inst.vertex_count()), 0) {}

MateTable::MateTable(const Instance& inst, const Matching& m) : MateTable(inst) {
  if (!is_matching(inst, m)) throw Error(ErrorCode::NotAMatching, "edges overlap or do not exist");
  for (const Edge& e : m.edges()) add(e);
}

void MateTable::add(Vertex v, int color) {
  const Edge e = inst_->edge_at(v, color);
  const Vertex a = inst_->a_end(e);
  const Vertex b = inst_->b_end(e);
  ensure(!saturated(a) && !saturated(b), "MateTable::add on a saturated vertex");
  color_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(color);
  color_[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(color);
  ++size_;
  ++counts_[color];
}

void MateTable::remove(Vertex v) {
  const int c = color_at(v);
  ensure(c != 0, "MateTable::remove on an unsaturated vertex");
  const Vertex w = inst_->neighbor(v, c);
  color_[static_cast<std::size_t>(v)] = 0;
  color_[static_cast<std::size_t>(w)] = 0;
  --size_;
  --counts_[c];
}

std::vector<Vertex> MateTable::unsaturated() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < inst_->vertex_count(); ++v) {
    if (!saturated(v)) out.push_back(v);
  }
  return out;
}

Matching MateTable::to_matching() const {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(size_));
  for (Vertex u = 0; u < inst_->n(); ++u) {
    if (saturated(u)) edges.push_back({u, color_at(u)});
  }
  return Matching(std::move(edges));
}

// ------------------------------------------------------------------ AltPath

AltPath AltPath::sub(int i, int j) const {
  AltPath out;
  out.vertices.assign(vertices.begin() + (i - 1), vertices.begin() + j);
  out.edge_colors.assign(edge_colors.begin() + (i - 1), edge_colors.begin() + (j - 1));
  return out;
}

AltPath make_path(const Instance& inst, std::vector<Vertex> vertices) {
  AltPath p;
  std::vector<char> seen(static_cast<std::size_t>(inst.vertex_count()), 0);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Vertex v = vertices[k];
    if (v < 0 || v >= inst.vertex_count() || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::PreconditionViolated, "path vertex repeats or is out of range");
    }
    seen[static_cast<std::size_t>(v)] = 1;
    if (k > 0) {
      const int c = inst.edge_color(vertices[k - 1], v);
      if (c == 0) throw Error(ErrorCode::PreconditionViolated, "consecutive path vertices are not adjacent");
      p.edge_colors.push_back(c);
    }
  }
  p.vertices = std::move(vertices);
  return p;
}

// ------------------------------------------------------------------- cycles

std::vector<Cycle> cycle_decomposition(const Instance& inst, int c, int c2) {
  if (c == c2) throw Error(ErrorCode::PreconditionViolated, "cycle_decomposition needs two distinct colors");
  std::vector<char> seen(static_cast<std::size_t>(inst.n()), 0);
  std::vector<Cycle> out;
  for (Vertex start = 0; start < inst.n(); ++start) {
    if (seen[start]) continue;
    Cycle cyc;
    Vertex v = start;
    int color = c;
    do {
      if (inst.is_a(v)) seen[v] = 1;
      cyc.vertices.push_back(v);
      cyc.edge_colors.push_back(color);
      v = inst.neighbor(v, color);
      color = color == c ? c2 : c;
    } while (v != start);
    out.push_back(std::move(cyc));
  }
  return out;
}

TwoFactor::TwoFactor(const Instance& inst, int c, int c2)
    : cycles_(cycle_decomposition(inst, c, c2)),
      cycle_of_(static_cast<std::size_t>(inst.vertex_count()), -1),
      position_of_(static_cast<std::size_t>(inst.vertex_count()), -1) {
  for (std::size_t id = 0; id < cycles_.size(); ++id) {
    const auto& vs = cycles_[id].vertices;
    for (std::size_t p = 0; p < vs.size(); ++p) {
      cycle_of_[static_cast<std::size_t>(vs[p])] = static_cast<int>(id);
      position_of_[static_cast<std::size_t>(vs[p])] = static_cast<int>(p);
    }
  }
}

std::vector<Vertex> TwoFactor::arc(int id, Vertex from, Vertex to, int step) const {
  const auto& vs = cycle(id).vertices;
  const int len = static_cast<int>(vs.size());
  std::vector<Vertex> out;
  int p = position_of(from);
  out.push_back(from);
  while (out.back() != to) {
    p = ((p + step) % len + len) % len;
    out.push_back(vs[static_cast<std::size_t>(p)]);
    ensure(static_cast<int>(out.size()) <= len, "TwoFactor::arc: target not on cycle");
  }
  return out;
}

bool is_alternating_cycle(const MateTable& m, const Cycle& c) {
  for (std::size_t p = 0; p < c.vertices.size(); ++p) {
    const int col = m.color_at(c.vertices[p]);
    if (col != c.edge_colors[0] && col != c.edge_colors[1 % c.edge_colors.size()]) return false;
  }
  return true;
}

// ------------------------------------------------------------ StructureView

AltPath component_path(const MateTable& m, int c, Vertex from) {
  const Instance& inst = m.instance();
  ensure(!m.saturated(from), "component_path must start at an unsaturated vertex");
  std::vector<Vertex> vs{from};
  Vertex x = from;
  while (true) {
    const Vertex y = inst.neighbor(x, c);
    vs.push_back(y);
    if (!m.saturated(y)) break;
    ensure(m.color_at(y) != c, "component_path: matched edge repeats the walk color");
    x = m.mate(y);
    vs.push_back(x);
    ensure(static_cast<int>(vs.size()) <= inst.vertex_count(), "component_path: walk does not terminate");
  }
  return make_path(inst, std::move(vs));
}

StructureView structure_view(const MateTable& m) {
  const Instance& inst = m.instance();
  if (m.size() != inst.n() - 1) {
    throw Error(ErrorCode::MatchingWrongSize,
                "|M| = " + std::to_string(m.size()) + ", expected " + std::to_string(inst.n() - 1));
  }
  const auto free = m.unsaturated();
  ensure(free.size() == 2 && inst.is_a(free[0]) && !inst.is_a(free[1]), "expected one free vertex per side");

  StructureView view;
  view.u_a = free[0];
  view.u_b = free[1];
  view.p1 = component_path(m, 1, view.u_a);
  view.p2 = component_path(m, 2, view.u_a);
  const auto has_m3 = [](const AltPath& p) {
    return std::find(p.edge_colors.begin(), p.edge_colors.end(), 3) != p.edge_colors.end();
  };
  view.c0_is_cycle = !has_m3(view.p1) && !has_m3(view.p2);
  for (auto& cyc : cycle_decomposition(inst, 1, 2)) {
    if (is_alternating_cycle(m, cyc)) view.alt_cycles.push_back(std::move(cyc));
  }
  return view;
}

StructureView structure_view(const Instance& inst, const Matching& m) {
  if (m.size() != static_cast<std::size_t>(inst.n() - 1)) {
    throw Error(ErrorCode::MatchingWrongSize,
                "|M| = " + std::to_string(m.size()) + ", expected " + std::to_string(inst.n() - 1));
  }
  return structure_view(MateTable(inst, m));
}

// --------------------------------------------------------------- good paths

bool is_c_good(const AltPath& path, int c) {
  for (int p = 1; p <= path.length(); ++p) {
    const int col = path.color(p);
    if (col == c && p % 2 == 0) return false;
    if (col == 3 - c && p % 2 == 1) return false;
  }
  return true;
}

std::optional<int> is_good(const AltPath& path) {
  if (is_c_good(path, 1)) return 1;
  if (is_c_good(path, 2)) return 2;
  return std::nullopt;
}

// ------------------------------------------------------------ NearlyAltPath

NearlyAltPath::NearlyAltPath(const Instance& inst, AltPath path, const Matching& ref)
    : inst_(&inst), path_(std::move(path)) {
  if (ref.size() != static_cast<std::size_t>(inst.n() - 1)) {
    throw Error(ErrorCode::PreconditionViolated, "reference matching must have size n-1");
  }
  init(MateTable(inst, ref));
}

NearlyAltPath::NearlyAltPath(const Instance& inst, AltPath path, const MateTable& ref)
    : inst_(&inst), path_(std::move(path)) {
  if (ref.size() != inst.n() - 1) {
    throw Error(ErrorCode::PreconditionViolated, "reference matching must have size n-1");
  }
  init(ref);
}

void NearlyAltPath::init(const MateTable& ref) {
  const int len = path_.vertex_count();
  std::vector<int> pos_of(static_cast<std::size_t>(inst_->vertex_count()), 0);
  for (int p = 1; p <= len; ++p) pos_of[static_cast<std::size_t>(path_.at(p))] = p;

  std::vector<int> free_pos;
  for (int p = 1; p <= len; ++p) {
    const Vertex v = path_.at(p);
    if (!ref.saturated(v)) {
      free_pos.push_back(p);
      continue;
    }
    const int q = pos_of[static_cast<std::size_t>(ref.mate(v))];
    if (q != p - 1 && q != p + 1) {
      throw Error(ErrorCode::PreconditionViolated, "path vertex not saturated by a matching edge on the path");
    }
  }
  if (free_pos.size() != 2) {
    throw Error(ErrorCode::PreconditionViolated, "both unsaturated vertices must lie on the path");
  }
  i_ = free_pos[0];
  j_ = free_pos[1];
  ensure(i_ % 2 == 1 && j_ % 2 == 0 && len % 2 == 0, "unsaturated positions must be odd/even on an odd-length path");

  for (Vertex u = 0; u < inst_->n(); ++u) {
    if (ref.saturated(u) && pos_of[static_cast<std::size_t>(u)] == 0) {
      off_path_.push_back({u, ref.color_at(u)});
      ++off_counts_[ref.color_at(u)];
    }
  }
  for (int c = 0; c < 3; ++c) {
    for (int par = 0; par < 2; ++par) {
      auto& pre = prefix_[static_cast<std::size_t>(c)][static_cast<std::size_t>(par)];
      pre.assign(static_cast<std::size_t>(len + 1), 0);
      for (int p = 1; p < len; ++p) {
        pre[static_cast<std::size_t>(p)] =
            pre[static_cast<std::size_t>(p - 1)] + ((path_.color(p) == c + 1 && p % 2 == par) ? 1 : 0);
      }
      pre[static_cast<std::size_t>(len)] = pre[static_cast<std::size_t>(len - 1)];
    }
  }
  ensure(counts_at(i_, j_) == ref.counts(), "NearlyAltPath: matching on path is not M_P Δ P_{i,j}");
}

int NearlyAltPath::prefix(int color, int parity, int pos) const {
  // Number of edge positions q < pos with the given color and parity.
  const auto& pre = prefix_[static_cast<std::size_t>(color - 1)][static_cast<std::size_t>(parity)];
  return pos <= 1 ? 0 : pre[static_cast<std::size_t>(pos - 1)];
}

void NearlyAltPath::check_positions(int i2, int j2) const {
  if (i2 % 2 != 1 || j2 % 2 != 0) {
    throw Error(ErrorCode::BadParity, "need odd i' and even j', got (" + std::to_string(i2) + "," +
                                          std::to_string(j2) + ")");
  }
  if (i2 < 1 || i2 >= j2 || j2 > vertex_count()) {
    throw Error(ErrorCode::OutOfRange, "need 1 <= i' < j' <= " + std::to_string(vertex_count()));
  }
}

ColorCounts NearlyAltPath::counts_at(int i2, int j2) const {
  const int end = vertex_count();
  ColorCounts out = off_counts_;
  for (int c = 1; c <= 3; ++c) {
    const int odd_before = prefix(c, 1, i2);
    const int odd_after = prefix(c, 1, end) - prefix(c, 1, j2);
    const int even_inside = prefix(c, 0, j2) - prefix(c, 0, i2);
    out[c] += odd_before + odd_after + even_inside;
  }
  return out;
}

int NearlyAltPath::f_at(int color, int i2, int j2) const {
  const int in_m = prefix(color, 0, j2) - prefix(color, 0, i2);
  const int out_m = prefix(color, 1, j2) - prefix(color, 1, i2);
  return in_m - out_m;
}

int NearlyAltPath::color_edges_between(int color, int i2, int j2) const {
  return prefix(color, 0, j2) - prefix(color, 0, i2) + prefix(color, 1, j2) - prefix(color, 1, i2);
}

Matching NearlyAltPath::shift(int i2, int j2) const {
  check_positions(i2, j2);
  std::vector<Edge> edges = off_path_;
  for (int p = 1; p <= path_.length(); ++p) {
    const bool inside = p >= i2 && p < j2;
    if ((p % 2 == 0) == inside) edges.push_back(inst_->edge_at(path_.at(p), path_.color(p)));
  }
  return Matching(std::move(edges));
}

NearlyAltPath NearlyAltPath::reposition(int i2, int j2) const { return {*inst_, path_, shift(i2, j2)}; }

int f_c(const NearlyAltPath& p, int color) { return p.f(color); }

Matching shift_matching(const NearlyAltPath& p, int i2, int j2) { return p.shift(i2, j2); }

// ------------------------------------------------------------- reachability

std::vector<Vertex> AltReach::path_to(Vertex w) const {
  ensure(reached[static_cast<std::size_t>(w)] != 0, "AltReach::path_to: vertex not reached");
  std::vector<Vertex> out;
  for (Vertex x = w; x != kNoVertex; x = pred[static_cast<std::size_t>(x)]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

AltReach alternating_reachability(const MateTable& m, Vertex v) {
  const Instance& inst = m.instance();
  if (m.saturated(v)) throw Error(ErrorCode::VertexSaturated, "vertex " + std::to_string(v));
  if (!is_connected(inst)) throw Error(ErrorCode::Disconnected, "alternating reachability needs a connected instance");

  AltReach r;
  r.root = v;
  r.pred.assign(static_cast<std::size_t>(inst.vertex_count()), kNoVertex);
  r.reached.assign(static_cast<std::size_t>(inst.vertex_count()), 0);
  const bool root_side = inst.is_a(v);
  std::queue<Vertex> queue;
  queue.push(v);
  r.reached[static_cast<std::size_t>(v)] = 1;
  const auto visit = [&](Vertex from, Vertex to) {
    if (r.reached[static_cast<std::size_t>(to)]) return;
    r.reached[static_cast<std::size_t>(to)] = 1;
    r.pred[static_cast<std::size_t>(to)] = from;
    queue.push(to);
  };
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    r.order.push_back(x);
    if (inst.is_a(x) == root_side) {
      for (int c = 1; c <= 3; ++c) {
        if (m.color_at(x) != c) visit(x, inst.neighbor(x, c));
      }
    } else if (m.saturated(x)) {
      visit(x, m.mate(x));
    }
  }
  return r;
}

AltReach alternating_reachability(const Instance& inst, const Matching& m, Vertex v) {
  const MateTable table(inst, m);
  return alternating_reachability(table, v);
}

// ------------------------------------------------------------ max_alt_walk

AltPath max_alt_walk(const MateTable& m, Vertex start) {
  const Instance& inst = m.instance();
  if (m.saturated(start)) throw Error(ErrorCode::StartSaturated, "vertex " + std::to_string(start));
  std::vector<Vertex> vs{start};
  Vertex x = start;
  while (true) {
    const Vertex y = inst.neighbor(x, 3);
    vs.push_back(y);
    if (!m.saturated(y)) break;
    x = m.mate(y);
    vs.push_back(x);
    ensure(static_cast<int>(vs.size()) <= inst.vertex_count(), "max_alt_walk: walk does not terminate");
  }
  return make_path(inst, std::move(vs));
}

AltPath max_alt_walk(const Instance& inst, const Matching& m, Vertex start) {
  const MateTable table(inst, m);
  return max_alt_walk(table, start);
}

}  // namespace tricolor
