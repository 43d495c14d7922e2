#include "tricolor/switching.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

namespace tricolor {

void SwitchStats::merge(const SwitchStats& o) {
  switches += o.switches;
  pipeline_steps += o.pipeline_steps;
  resolve_calls += o.resolve_calls;
  resolve_improved += o.resolve_improved;
  c0_repairs += o.c0_repairs;
  interval_repairs += o.interval_repairs;
  phase2_flips += o.phase2_flips;
  phase2_reroots += o.phase2_reroots;
  can_move_steps += o.can_move_steps;
  ivl_calls += o.ivl_calls;
  case1_reentries += o.case1_reentries;
  case2_runs += o.case2_runs;
  max_steps_one_switch = std::max(max_steps_one_switch, o.max_steps_one_switch);
}

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::PreconditionViolated, what);
}

void ensure_msg(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InternalInvariant, what);
}

class Guard {
 public:
  Guard(const Instance& inst, const SwitchOptions& opts)
      : limit_(opts.guard > 0 ? opts.guard : 16LL * inst.n() * inst.n()), stats_(opts.stats) {}

  void tick(const char* where) {
    ++steps_;
    if (stats_) ++stats_->pipeline_steps;
    if (steps_ > limit_) {
      throw Error(ErrorCode::IterationGuardExceeded,
                  std::string(where) + ": more than " + std::to_string(limit_) + " pipeline steps");
    }
  }

  long long steps() const { return steps_; }

 private:
  long long limit_;
  long long steps_ = 0;
  SwitchStats* stats_;
};

template <class F>
void bump(SwitchStats* stats, F f) {
  if (stats) f(*stats);
}

// Drops the matched edges at the vertices of an M1 ∪ M2 cycle.
void clear_cycle(MateTable& m, const Cycle& c) {
  for (Vertex v : c.vertices) {
    if (m.saturated(v)) {
      ensure(m.color_at(v) != 3, "cycle vertex matched by a chord");
      m.remove(v);
    }
  }
}

void add_all(MateTable& m, const Matching& edges) {
  for (const Edge& e : edges.edges()) m.add(e);
}

void add_cycle_color(MateTable& m, const Cycle& c, int color) {
  for (std::size_t p = 0; p < c.vertices.size(); ++p) {
    if (c.edge_colors[p] == color) m.add(c.vertices[p], color);
  }
}

int count_on_cycle(const MateTable& m, const Cycle& c, int color) {
  const Instance& inst = m.instance();
  int out = 0;
  for (Vertex v : c.vertices) {
    if (inst.is_a(v) && m.color_at(v) == color) ++out;
  }
  return out;
}

int m3_edges(const Instance& inst, const std::vector<Vertex>& vs) {
  int out = 0;
  for (std::size_t q = 0; q + 1 < vs.size(); ++q) {
    if (inst.edge_color(vs[q], vs[q + 1]) == 3) ++out;
  }
  return out;
}

// Symmetric difference with an even-length path whose odd edge positions are
// unmatched and even positions matched.
void flip_path(MateTable& m, const std::vector<Vertex>& vs) {
  const Instance& inst = m.instance();
  for (std::size_t q = 1; q + 1 < vs.size(); q += 2) {
    ensure(m.has_edge(vs[q], vs[q + 1]), "flip_path: expected a matched edge");
    m.remove(vs[q]);
  }
  for (std::size_t q = 0; q + 1 < vs.size(); q += 2) {
    const int c = inst.edge_color(vs[q], vs[q + 1]);
    ensure(c != 0, "flip_path: vertices not adjacent");
    m.add(vs[q], c);
  }
}

// From an unsaturated vertex: `pairs` times an edge of walk_color followed by
// the matched edge, which must have mate_color.
std::vector<Vertex> paired_walk(const MateTable& m, Vertex start, int walk_color, int mate_color, int pairs) {
  const Instance& inst = m.instance();
  std::vector<Vertex> vs{start};
  Vertex x = start;
  for (int s = 0; s < pairs; ++s) {
    const Vertex y = inst.neighbor(x, walk_color);
    ensure(m.color_at(y) == mate_color, "resolve_c0: second path leaves the expected colors");
    x = m.mate(y);
    vs.push_back(y);
    vs.push_back(x);
  }
  make_path(inst, vs);  // rejects repeated vertices
  return vs;
}

Cycle cycle_through(const Instance& inst, Vertex v) {
  Cycle c;
  Vertex x = v;
  int color = 1;
  do {
    c.vertices.push_back(x);
    c.edge_colors.push_back(color);
    x = inst.neighbor(x, color);
    color = 3 - color;
  } while (x != v);
  return c;
}

// Number of M_c edges before the first M3 edge, -1 when there is none.
int edges_before_m3(const AltPath& p) {
  for (int pos = 1; pos <= p.length(); ++pos) {
    if (p.color(pos) == 3) {
      ensure(pos % 2 == 0, "resolve_c0: M3 edge at an unmatched position");
      return pos / 2;
    }
  }
  return -1;
}

ResolveResult resolve_on(MateTable& m, TraceSink* trace) {
  const Instance& inst = m.instance();
  const ColorCounts start = m.counts();
  if (start[3] == 0) throw Error(ErrorCode::A3Zero, "the matching has no M3 edge");
  const auto free = m.unsaturated();
  ensure(free.size() == 2, "resolve_c0: expected two unsaturated vertices");
  const Vertex u1 = free[0];
  const Vertex u2 = free[1];
  const ColorCounts goal{start[1] + 1, start[2], start[3] - 1};

  ResolveResult r;
  if (inst.edge_color(u1, u2) == 1) {
    Vertex drop = kNoVertex;
    for (Vertex u = 0; u < inst.n() && drop == kNoVertex; ++u) {
      if (m.color_at(u) == 3) drop = u;
    }
    m.remove(drop);
    m.add(u1, 1);
    r.direct_edge = true;
    r.improved = m.to_matching();
    emit(trace, "resolve_c0", {{"outcome", "direct_edge"}});
    return r;
  }

  const AltPath p1 = component_path(m, 1, u1);
  const AltPath p2 = component_path(m, 2, u2);
  r.l1 = edges_before_m3(p1);
  r.l2 = edges_before_m3(p2);
  if (r.l1 < 0 && r.l2 < 0) {
    r.c0 = cycle_through(inst, u1);
    ensure(std::find(r.c0->vertices.begin(), r.c0->vertices.end(), u2) != r.c0->vertices.end(),
           "resolve_c0: C0 cycle misses an unsaturated vertex");
    emit(trace, "resolve_c0", {{"outcome", "cycle"}, {"length", r.c0->edge_count()}});
    return r;
  }

  if (r.l1 >= 0 && (r.l2 < 0 || r.l1 <= r.l2)) {
    flip_path(m, {p1.vertices.begin(), p1.vertices.begin() + 2 * r.l1 + 1});
    flip_path(m, paired_walk(m, u2, 2, 1, r.l1 - 1));
  } else {
    flip_path(m, {p2.vertices.begin(), p2.vertices.begin() + 2 * r.l2 + 1});
    flip_path(m, paired_walk(m, u1, 1, 2, r.l2));
  }
  ensure(m.counts() == goal, "resolve_c0: result has the wrong counts");
  r.improved = m.to_matching();
  emit(trace, "resolve_c0", {{"outcome", "improved"}, {"l1", r.l1}, {"l2", r.l2}});
  return r;
}

// ----------------------------------------------------------------- find_p0

struct Frame {
  const TwoFactor* tf = nullptr;
  int c0 = -1;
  std::vector<char> alt;  // cycle id -> member of the alternating family

  bool in_s(Vertex v) const {
    const int id = tf->cycle_of(v);
    return id == c0 || alt[static_cast<std::size_t>(id)] != 0;
  }
};

Frame make_frame(const TwoFactor& tf, const MateTable& m, Vertex u1) {
  Frame f;
  f.tf = &tf;
  f.c0 = tf.cycle_of(u1);
  f.alt.assign(tf.cycles().size(), 0);
  for (std::size_t id = 0; id < tf.cycles().size(); ++id) {
    if (static_cast<int>(id) != f.c0 && is_alternating_cycle(m, tf.cycle(static_cast<int>(id)))) f.alt[id] = 1;
  }
  return f;
}

struct Visit {
  int id;
  int first;  // 0-based path indices
  int last;
};

std::vector<Visit> visited_cycles(const Frame& fr, const std::vector<Vertex>& path) {
  std::vector<Visit> out;
  std::vector<int> slot(fr.alt.size(), -1);
  for (int q = 0; q < static_cast<int>(path.size()); ++q) {
    const int id = fr.tf->cycle_of(path[static_cast<std::size_t>(q)]);
    if (!fr.alt[static_cast<std::size_t>(id)]) continue;
    int& s = slot[static_cast<std::size_t>(id)];
    if (s < 0) {
      s = static_cast<int>(out.size());
      out.push_back({id, q, q});
    }
    out[static_cast<std::size_t>(s)].last = q;
  }
  return out;
}

bool contiguous_on_cycle(const Instance& inst, const Frame& fr, const std::vector<Vertex>& path, const Visit& v) {
  for (int q = v.first; q < v.last; ++q) {
    const Vertex x = path[static_cast<std::size_t>(q)];
    const Vertex y = path[static_cast<std::size_t>(q + 1)];
    if (fr.tf->cycle_of(y) != v.id || inst.edge_color(x, y) == 3) return false;
  }
  return true;
}

void splice(std::vector<Vertex>& path, int first, int last, const std::vector<Vertex>& arc) {
  std::vector<Vertex> out(path.begin(), path.begin() + first);
  out.insert(out.end(), arc.begin(), arc.end());
  out.insert(out.end(), path.begin() + last + 1, path.end());
  path = std::move(out);
}

struct P0Work {
  MateTable m;
  Vertex u1;
  std::vector<Vertex> path;
};

void phase_one(const TwoFactor& tf, P0Work& w, Guard& guard, const SwitchOptions& opts) {
  const Instance& inst = w.m.instance();
  {
    const Frame fr = make_frame(tf, w.m, w.u1);
    const AltReach reach = alternating_reachability(w.m, w.u1);
    for (Vertex v : reach.order) {
      if (!fr.in_s(v)) {
        w.path = reach.path_to(v);
        break;
      }
    }
    require(!w.path.empty(), "find_p0: every vertex lies on C0 or an alternating cycle");
  }

  std::pair<int, int> prev{INT_MAX, INT_MAX};
  while (true) {
    guard.tick("find_p0 phase 1");
    const Frame fr = make_frame(tf, w.m, w.u1);
    auto out = std::find_if(w.path.begin(), w.path.end(), [&](Vertex v) { return !fr.in_s(v); });
    ensure(out != w.path.end(), "find_p0: path lost its endpoint outside S");
    w.path.erase(out + 1, w.path.end());
    const std::pair<int, int> cur{m3_edges(inst, w.path), static_cast<int>(w.path.size())};
    ensure(cur < prev, "find_p0: phase 1 measure did not decrease");
    prev = cur;
    ensure(w.path.size() >= 2 && w.path.size() % 2 == 0, "find_p0: path must end after an unmatched edge");

    int hit = 0;  // largest 1-based index >= 2 on C0
    for (int i = static_cast<int>(w.path.size()); i >= 2; --i) {
      if (tf.cycle_of(w.path[static_cast<std::size_t>(i - 1)]) == fr.c0) {
        hit = i;
        break;
      }
    }
    if (hit > 0) {
      ensure(hit % 2 == 1, "find_p0: path returns to C0 on a matched edge");
      const Cycle& c0 = tf.cycle(fr.c0);
      const Vertex v = w.path[static_cast<std::size_t>(hit - 1)];
      const Matching rot = rotate_cycle_matching(inst, c0, v, 1, count_on_cycle(w.m, c0, 1));
      clear_cycle(w.m, c0);
      add_all(w.m, rot);
      w.u1 = v;
      w.path.erase(w.path.begin(), w.path.begin() + (hit - 1));
      bump(opts.stats, [](SwitchStats& s) { ++s.c0_repairs; });
      emit(opts.trace, "p0_repair", {{"kind", "c0_rotation"}, {"index", hit}});
      continue;
    }

    bool rerouted = false;
    for (const Visit& v : visited_cycles(fr, w.path)) {
      if (contiguous_on_cycle(inst, fr, w.path, v)) continue;
      const Cycle& c = tf.cycle(v.id);
      const int len = c.edge_count();
      const Vertex va = w.path[static_cast<std::size_t>(v.first)];
      const Vertex vb = w.path[static_cast<std::size_t>(v.last)];
      const int pos = tf.position_of(va);
      const int step = c.vertices[static_cast<std::size_t>((pos + 1) % len)] == w.m.mate(va) ? 1 : -1;
      splice(w.path, v.first, v.last, tf.arc(v.id, va, vb, step));
      bump(opts.stats, [](SwitchStats& s) { ++s.interval_repairs; });
      emit(opts.trace, "p0_repair", {{"kind", "interval_reroute"}, {"cycle_length", len}});
      rerouted = true;
      break;
    }
    if (!rerouted) break;
  }
  const Vertex last = w.path.back();
  ensure(w.m.saturated(last), "find_p0: path endpoint is unsaturated");
  w.path.push_back(w.m.mate(last));
}

void phase_two(const TwoFactor& tf, P0Work& w, int c, Guard& guard, const SwitchOptions& opts) {
  const Instance& inst = w.m.instance();
  const int cbar = 3 - c;
  std::pair<int, int> prev{INT_MAX, INT_MAX};
  while (true) {
    guard.tick("find_p0 phase 2");
    const Frame fr = make_frame(tf, w.m, w.u1);
    const std::vector<Visit> visits = visited_cycles(fr, w.path);
    const int m3 = m3_edges(inst, w.path);
    ensure(m3 == static_cast<int>(visits.size()) + 1, "find_p0: P0 must carry one M3 edge per cycle plus one");
    int last_bar = 0;
    for (std::size_t q = 0; q + 1 < w.path.size(); ++q) {
      if (w.m.has_edge(w.path[q], w.path[q + 1]) && w.m.color_at(w.path[q]) == cbar) {
        last_bar = static_cast<int>(q) + 1;
      }
    }
    const std::pair<int, int> cur{m3, last_bar};
    ensure(cur < prev, "find_p0: phase 2 measure did not decrease");
    prev = cur;

    const Visit* target = nullptr;
    for (const Visit& v : visits) {
      if (w.m.color_at(tf.cycle(v.id).vertices[0]) == cbar) target = &v;
    }
    if (target == nullptr) return;
    const Visit v = *target;

    const Cycle& c0 = tf.cycle(fr.c0);
    const Cycle& cj = tf.cycle(v.id);
    const int k = count_on_cycle(w.m, c0, c);
    const int e = cj.edge_count() / 2;
    if (e <= k) {
      const Matching rot = rotate_cycle_matching(inst, c0, w.u1, c, k - e);
      clear_cycle(w.m, c0);
      add_all(w.m, rot);
      clear_cycle(w.m, cj);
      add_cycle_color(w.m, cj, c);
      ensure(v.first < v.last, "find_p0: visited cycle without a matched edge on the path");
      const int len = cj.edge_count();
      const Vertex va = w.path[static_cast<std::size_t>(v.first)];
      const Vertex vb = w.path[static_cast<std::size_t>(v.last)];
      const int pos = tf.position_of(va);
      const int dir = cj.vertices[static_cast<std::size_t>((pos + 1) % len)] ==
                              w.path[static_cast<std::size_t>(v.first + 1)]
                          ? 1
                          : -1;
      splice(w.path, v.first, v.last, tf.arc(v.id, va, vb, -dir));
      bump(opts.stats, [](SwitchStats& s) { ++s.phase2_flips; });
      emit(opts.trace, "p0_phase2", {{"case", "flip"}, {"k", k}, {"half", e}});
    } else {
      clear_cycle(w.m, c0);
      add_cycle_color(w.m, c0, cbar);
      const Vertex vh = w.path[static_cast<std::size_t>(v.last)];
      const Matching rot = rotate_cycle_matching(inst, cj, vh, c, k);
      clear_cycle(w.m, cj);
      add_all(w.m, rot);
      w.u1 = vh;
      w.path.erase(w.path.begin(), w.path.begin() + v.last);
      bump(opts.stats, [](SwitchStats& s) { ++s.phase2_reroots; });
      emit(opts.trace, "p0_phase2", {{"case", "reroot"}, {"k", k}, {"half", e}});
    }
  }
}

P0Certificate find_p0_impl(const Instance& inst, const MateTable& table, Guard& guard, const SwitchOptions& opts) {
  const StructureView view = structure_view(table);
  require(view.c0_is_cycle, "find_p0: C0(M) is not an M1 ∪ M2 cycle");
  const TwoFactor tf(inst, 1, 2);
  P0Work w{table, view.u_a, {}};
  phase_one(tf, w, guard, opts);
  const int c = w.m.color_at(w.path.back());
  ensure(c == 1 || c == 2, "find_p0: last edge of P0 must be in M1 or M2");
  phase_two(tf, w, c, guard, opts);

  P0Certificate cert{w.m.to_matching(), make_path(inst, w.path), structure_view(w.m), c};
  const std::string bad = p0_violation(inst, cert);
  ensure_msg(bad.empty(), "find_p0 certificate: " + bad);
  emit(opts.trace, "p0", {{"length", cert.path.length()}, {"color", c}});
  return cert;
}

// ------------------------------------------------------ shift sequences

std::optional<ShiftPositions> move_step(const NearlyAltPath& p, int i, int j) {
  const AltPath& path = p.path();
  const int len = p.vertex_count();
  if (i % 2 != 1 || j % 2 != 0 || i < 1 || i >= j || j > len - 2) return std::nullopt;
  if (!(i <= j - 3 || (i + 1 == j && path.color(i) != 3))) return std::nullopt;
  ShiftPositions next;
  if (path.color(j) != 2 && path.color(j + 1) != 2) {
    next = {i, j + 2};
  } else if (i <= j - 3) {
    next = (path.color(i) != 2 && path.color(i + 1) != 2) ? ShiftPositions{i + 2, j} : ShiftPositions{i + 2, j + 2};
  } else {
    next = {i + 2, j + 2};
  }
  const ColorCounts before = p.counts_at(i, j);
  const ColorCounts after = p.counts_at(next.i, next.j);
  ensure(before[2] == after[2], "can_move_step changed a2");
  ensure(std::abs(before[3] - after[3]) <= 1, "can_move_step moved a3 by more than one");
  return next;
}

std::vector<ShiftPositions> nested_chain(ShiftPositions outer, ShiftPositions inner) {
  std::vector<ShiftPositions> out;
  for (int x = outer.i; x <= inner.i; x += 2) out.push_back({x, outer.j});
  for (int y = outer.j - 2; y >= inner.j; y -= 2) out.push_back({inner.i, y});
  return out;
}

std::vector<ShiftPositions> forward_chain(const NearlyAltPath& p, ShiftPositions from, ShiftPositions to) {
  std::vector<ShiftPositions> out{from};
  ShiftPositions cur = from;
  while (cur.i != to.i && cur.j != to.j) {
    const auto next = move_step(p, cur.i, cur.j);
    ensure(next.has_value(), "intermediate value: shift walk stalled before reaching the target");
    cur = *next;
    ensure(cur.i <= to.i && cur.j <= to.j, "intermediate value: shift walk overshot the target");
    out.push_back(cur);
  }
  if (cur.i == to.i) {
    for (int y = cur.j + 2; y <= to.j; y += 2) out.push_back({to.i, y});
  } else {
    for (int x = cur.i + 2; x <= to.i; x += 2) out.push_back({x, to.j});
  }
  return out;
}

std::vector<ShiftPositions> reversed(std::vector<ShiftPositions> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

// -------------------------------------------------------------- public API

Matching rotate_cycle_matching(const Instance& inst, const Cycle& cycle, Vertex v, int c, int k) {
  require(c == 1 || c == 2, "rotate_cycle_matching: color must be 1 or 2");
  const int len = cycle.edge_count();
  if (k < 0 || k >= len / 2) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " not in [0, " + std::to_string(len / 2) + ")");
  }
  const auto it = std::find(cycle.vertices.begin(), cycle.vertices.end(), v);
  require(it != cycle.vertices.end(), "rotate_cycle_matching: vertex not on the cycle");
  const int pos = static_cast<int>(it - cycle.vertices.begin());
  const int step = cycle.edge_colors[static_cast<std::size_t>(pos)] == 3 - c ? 1 : -1;
  // vs[x-1] is v_x in the orientation with v_1 = v and v_1 v_2 in M_{3-c}.
  std::vector<Vertex> vs;
  for (int s = 0; s < len; ++s) vs.push_back(cycle.vertices[static_cast<std::size_t>(((pos + step * s) % len + len) % len)]);
  const auto at = [&](int x) { return vs[static_cast<std::size_t>((x - 1) % len)]; };
  ensure(inst.edge_color(at(1), at(2)) == 3 - c, "rotate_cycle_matching: orientation");

  std::vector<Edge> edges;
  for (int s = 1; s <= k; ++s) edges.push_back(inst.edge_at(at(2 * s), c));
  for (int s = k + 2; s <= len / 2; ++s) edges.push_back(inst.edge_at(at(2 * s - 1), 3 - c));
  return Matching(std::move(edges));
}

ResolveResult resolve_c0(const Instance& inst, const Matching& m, TraceSink* trace) {
  MateTable table(inst, m);
  if (table.size() != inst.n() - 1) {
    throw Error(ErrorCode::MatchingWrongSize, "|M| = " + std::to_string(table.size()));
  }
  return resolve_on(table, trace);
}

std::string p0_violation(const Instance& inst, const P0Certificate& cert) {
  std::optional<MateTable> mt;
  try {
    mt.emplace(inst, cert.matching);
  } catch (const Error&) {
    return "not a matching";
  }
  const MateTable& m = *mt;
  if (m.size() != inst.n() - 1) return "matching size is not n-1";
  const StructureView view = structure_view(m);
  if (!view.c0_is_cycle) return "C0(M) is not an M1 ∪ M2 cycle";
  if (view.u_a != cert.view.u_a || view.u_b != cert.view.u_b) return "stale structure view";
  const AltPath& p = cert.path;
  const int len = p.vertex_count();
  if (len < 3 || len % 2 != 1) return "P0 must have an even number of edges";
  if (m.saturated(p.at(1))) return "v_1 is saturated";
  for (int pos = 1; pos < len; ++pos) {
    if (m.has_edge(p.at(pos), p.at(pos + 1)) != (pos % 2 == 0)) {
      return "P0 is not M-alternating at edge " + std::to_string(pos);
    }
  }

  const TwoFactor tf(inst, 1, 2);
  const Frame fr = make_frame(tf, m, p.at(1));
  if (fr.in_s(p.at(len - 1)) || fr.in_s(p.at(len))) return "(i): last two vertices must lie outside C0 and the family";
  for (int pos = 2; pos <= len - 2; ++pos) {
    const int id = tf.cycle_of(p.at(pos));
    if (!fr.alt[static_cast<std::size_t>(id)]) return "(i): interior vertex off the alternating family";
  }
  if (!m.has_edge(p.at(len - 1), p.at(len))) return "(ii): last edge not in M";
  for (int pos = 2; pos <= len; ++pos) {
    if (tf.cycle_of(p.at(pos)) == fr.c0) return "(iii): path meets C0 again";
  }
  for (const Visit& v : visited_cycles(fr, p.vertices)) {
    if (!contiguous_on_cycle(inst, fr, p.vertices, v)) return "(iv): cycle visit is not a common sub-path";
  }
  for (int pos = 2; pos < len; pos += 2) {
    if (m.color_at(p.at(pos)) != cert.color) return "(v): matched edges on P0 use more than one color";
  }
  if (cert.color != 1 && cert.color != 2) return "(v): color must be 1 or 2";
  return {};
}

P0Certificate find_p0(const Instance& inst, const Matching& m, const SwitchOptions& opts) {
  if (!is_connected(inst)) throw Error(ErrorCode::NotConnected, "find_p0 needs a connected instance");
  const MateTable table(inst, m);
  if (table.size() != inst.n() - 1) throw Error(ErrorCode::MatchingWrongSize, "|M| = " + std::to_string(table.size()));
  if (table.counts()[3] == 0) throw Error(ErrorCode::A3Zero, "the matching has no M3 edge");
  Guard guard(inst, opts);
  return find_p0_impl(inst, table, guard, opts);
}

std::string switch_violation(const Instance& inst, const SwitchCertificate& cert) {
  std::optional<MateTable> mt;
  try {
    mt.emplace(inst, cert.matching);
  } catch (const Error&) {
    return "not a matching";
  }
  const MateTable& m = *mt;
  const NearlyAltPath& np = cert.path;
  const AltPath& p = np.path();
  const int k = p.vertex_count();
  const int h = cert.h;
  const int t = cert.t;
  const int c = cert.c;
  if (c != 1 && c != 2) return "color must be 1 or 2";
  const int cbar = 3 - c;
  if (!is_c_good(p, c)) return "path is not c-good";
  if (m.saturated(p.at(1)) || np.i() != 1 || np.j() != h || h % 2 != 0 || h <= 1 || h >= k) {
    return "(a): unsaturated positions must be (1,h)";
  }
  if (np.shift(1, h) != cert.matching) return "(a): M != M(P;1,h)";
  for (int pos = 1; pos < h; ++pos) {
    if (p.color(pos) == 3 || (pos > 1 && p.color(pos) == p.color(pos - 1))) return "(b): P_{1,h} not (M1,M2)-alternating";
  }
  if (np.f(3) != 0) return "(b): f3 != 0";
  if (t % 2 != 1 || t <= h || t >= k - 2) return "(c): t out of range";
  if (p.color(t - 1) != 3 || m.has_edge(p.at(t - 1), p.at(t))) return "(c): w_{t-1} w_t not in M3 \\ M";
  if (inst.edge_color(p.at(t), p.at(k)) != cbar) return "(c): w_t w_k not in M_{3-c}";
  for (int pos = 1; pos < t; ++pos) {
    if ((p.color(pos) == c) != (pos % 2 == 1)) return "(d): (w_1..w_t) not M_c-alternating";
  }
  bool has_m3 = false;
  for (int pos = t; pos < k; ++pos) {
    const bool in_m = m.has_edge(p.at(pos), p.at(pos + 1));
    if ((pos - t) % 2 == 0) {
      if (!in_m) return "(e): cycle edge should be matched";
      if (p.color(pos) == 3) has_m3 = true;
    } else if (in_m || p.color(pos) != cbar) {
      return "(e): cycle edge should be an unmatched M_{3-c} edge";
    }
  }
  if (m.has_edge(p.at(t), p.at(k))) return "(e): closing edge is matched";
  if (!has_m3) return "(e): cycle has no edge of M3 ∩ M";
  if (k - t + 1 < 4) return "(e): cycle shorter than four";
  return {};
}

SwitchCertificate find_switch_path(const Instance& inst, const P0Certificate& p0, TraceSink* trace) {
  const MateTable m(inst, p0.matching);
  const int c = p0.color;
  const int cbar = 3 - c;
  const Vertex u1 = p0.u1();
  const Vertex u2 = p0.view.u_a == u1 ? p0.view.u_b : p0.view.u_a;

  const AltPath pc = component_path(m, c, u2);
  ensure(pc.vertices.back() == u1, "find_switch_path: P_c(M) must end at u1");
  std::vector<Vertex> w = pc.vertices;
  const int h = static_cast<int>(w.size());
  const int l0 = p0.path.vertex_count();
  for (int pos = 2; pos <= l0; ++pos) w.push_back(p0.path.at(pos));

  const Vertex vl = p0.path.at(l0 - 1);
  const Vertex u = inst.neighbor(vl, cbar);
  Vertex cur = p0.path.at(l0);
  while (cur != u) {
    const Vertex y = inst.neighbor(cur, cbar);
    ensure(m.saturated(y), "find_switch_path: cycle vertex unsaturated");
    cur = m.mate(y);
    w.push_back(y);
    w.push_back(cur);
    ensure(static_cast<int>(w.size()) <= inst.vertex_count(), "find_switch_path: cycle walk does not close");
  }
  const int t = h + l0 - 2;
  SwitchCertificate cert{p0.matching, NearlyAltPath(inst, make_path(inst, std::move(w)), m), h, t, c};
  const std::string bad = switch_violation(inst, cert);
  ensure_msg(bad.empty(), "switch certificate: " + bad);
  emit(trace, "switch_path", {{"k", cert.k()}, {"h", h}, {"t", t}, {"c", c}});
  return cert;
}

SwitchCertificate find_switch_path(const Instance& inst, const Matching& m, const SwitchOptions& opts) {
  return find_switch_path(inst, find_p0(inst, m, opts), opts.trace);
}

std::optional<ShiftPositions> can_move_step(const NearlyAltPath& p, int i, int j) {
  if (!is_good(p.path())) return std::nullopt;
  return move_step(p, i, j);
}

std::vector<ShiftPositions> intermediate_value_sequence(const NearlyAltPath& p, ShiftPositions from,
                                                        ShiftPositions to) {
  require(is_good(p.path()).has_value(), "intermediate value: path is not good");
  try {
    p.check_positions(from.i, from.j);
    p.check_positions(to.i, to.j);
  } catch (const Error& e) {
    throw Error(ErrorCode::PreconditionViolated, e.what());
  }
  require(p.counts_at(from.i, from.j)[2] == p.counts_at(to.i, to.j)[2], "intermediate value: a2 differs");

  std::vector<ShiftPositions> seq;
  if (from.i <= to.i && to.j <= from.j) {
    seq = nested_chain(from, to);
  } else if (to.i <= from.i && from.j <= to.j) {
    seq = reversed(nested_chain(to, from));
  } else if (p.color_edges_between(2, from.i, from.j) == 0) {
    for (int x = from.i; x < from.j; x += 2) seq.push_back({x, from.j});
    if (!(seq.back() == ShiftPositions{to.j - 1, to.j})) seq.push_back({to.j - 1, to.j});
    for (int x = to.j - 3; x >= to.i; x -= 2) seq.push_back({x, to.j});
  } else if (from.i <= to.i && from.j <= to.j) {
    seq = forward_chain(p, from, to);
  } else {
    seq = reversed(forward_chain(p, to, from));
  }
  ensure(seq.front() == from && seq.back() == to, "intermediate value: chain endpoints");
  for (std::size_t s = 1; s < seq.size(); ++s) {
    const ColorCounts a = p.counts_at(seq[s - 1].i, seq[s - 1].j);
    const ColorCounts b = p.counts_at(seq[s].i, seq[s].j);
    ensure(a[2] == b[2], "intermediate value: a2 changed along the chain");
    ensure(std::abs(a[3] - b[3]) <= 1, "intermediate value: a3 jumped along the chain");
  }
  return seq;
}

Matching intermediate_value(const NearlyAltPath& p, ShiftPositions low, ShiftPositions high, int a3_star) {
  const auto seq = intermediate_value_sequence(p, low, high);
  const int lo = p.counts_at(low.i, low.j)[3];
  const int hi = p.counts_at(high.i, high.j)[3];
  require(lo <= a3_star && a3_star <= hi, "intermediate value: a3* outside [a3(M), a3(M')]");
  for (const ShiftPositions& s : seq) {
    if (p.counts_at(s.i, s.j)[3] == a3_star) return p.shift(s.i, s.j);
  }
  throw Error(ErrorCode::InternalInvariant, "intermediate value: no member with a3*");
}

Matching intermediate_value(const Instance& inst, const AltPath& path, const Matching& m, const Matching& m2,
                            int a3_star) {
  const NearlyAltPath p(inst, path, m);
  const NearlyAltPath p2(inst, path, m2);
  require(p.off_path() == p2.off_path(), "intermediate value: matchings differ off the path");
  return intermediate_value(p, {p.i(), p.j()}, {p2.i(), p2.j()}, a3_star);
}

// ------------------------------------------------------------ the switch

namespace {

Matching traced_ivl(const NearlyAltPath& p, ShiftPositions low, ShiftPositions high, int a3_star, TraceSink* trace) {
  Matching out = intermediate_value(p, low, high, a3_star);
  emit(trace, "ivl_result", {{"a3_star", a3_star}, {"a3", out.counts()[3]}});
  return out;
}

Matching finish_case_two(const Instance& inst, const SwitchCertificate& sc, int imax, int a2, int a3,
                         const SwitchOptions& opts) {
  const NearlyAltPath& p = sc.path;
  const AltPath& path = p.path();
  const int k = sc.k();
  const int h = sc.h;
  const int t = sc.t;
  const int c = sc.c;
  const int cbar = 3 - c;
  const auto w = [&](int x) { return path.at(x); };

  MateTable star(inst, p.shift(imax, k));
  const int a3_ik = star.counts()[3];
  ensure(path.color(t - 1) == 3 && star.has_edge(w(t - 1), w(t)), "case 2: w_{t-1} w_t must be matched");
  int istar = imax;
  if (c == 2) {
    ensure(inst.edge_color(w(k), w(t)) == 1, "case 2: w_k w_t must be in M1");
    star.remove(w(t - 1));
    star.add(w(t), 1);
  } else {
    ensure(path.color(imax) == 1 && !star.has_edge(w(imax), w(imax + 1)), "case 2: w_i w_{i+1} must be in M1 \\ M");
    ensure(path.color(imax + 1) == 2 && star.has_edge(w(imax + 1), w(imax + 2)),
           "case 2: w_{i+1} w_{i+2} must be in M ∩ M2");
    star.remove(w(t - 1));
    star.remove(w(imax + 1));
    star.add(w(t), 2);
    star.add(w(imax), 1);
    istar = imax + 2;
  }
  ensure(star.counts()[2] == a2 && star.counts()[3] == a3_ik - 1, "case 2: M* has the wrong counts");
  emit(opts.trace, "case2", {{"i", imax}, {"c", c}, {"a3_star_matching", star.counts()[3]}});
  if (star.counts()[3] == a3 - 1) return star.to_matching();

  // M^Δ = M Δ C, with C = (w_t, ..., w_k, w_t).
  MateTable delta(inst, sc.matching);
  for (int pos = t; pos < k; pos += 2) {
    ensure(delta.has_edge(w(pos), w(pos + 1)), "case 2: cycle edge should be matched");
    delta.remove(w(pos));
  }
  for (int pos = t + 1; pos < k - 1; pos += 2) delta.add(w(pos), path.color(pos));
  delta.add(w(t), cbar);

  const NearlyAltPath pd(inst, path.sub(1, t - 1), delta);
  ensure(pd.i() == 1 && pd.j() == h, "case 2: P' must have unsaturated positions (1,h)");
  const Matching star_m = star.to_matching();
  ensure(pd.shift(istar, t - 1) == star_m, "case 2: M* must be a shift of M^Δ along P'");

  const int f_star = pd.f_at(2, istar, t - 1);
  const int f_top = pd.f_at(2, 1, h);
  const int f_bot = pd.f_at(2, h - 1, h);
  ensure(std::abs(f_top) >= std::abs(f_star) && std::abs(f_star) >= std::abs(f_bot),
         "case 2: f2 interpolation inequality fails");
  ShiftPositions low{0, 0};
  for (int x = 1; x < h; x += 2) {
    const int f = pd.f_at(2, x, h);
    ensure(static_cast<long long>(f) * f_top >= 0 && static_cast<long long>(f) * f_star >= 0,
           "case 2: f2 signs disagree along the path");
    if (low.i == 0 && f == f_star) low = {x, h};
  }
  ensure(low.i != 0, "case 2: no shift of M^Δ matches f2(M*)");
  const ColorCounts low_counts = pd.counts_at(low.i, low.j);
  ensure(low_counts[2] == a2 && low_counts[3] < a3, "case 2: shifted M^Δ has the wrong counts");
  bump(opts.stats, [](SwitchStats& s) { ++s.ivl_calls; });
  return traced_ivl(pd, low, {istar, t - 1}, a3 - 1, opts.trace);
}

void switch_one(MateTable& m, Guard& guard, const SwitchOptions& opts) {
  const Instance& inst = m.instance();
  const ColorCounts start = m.counts();
  const ColorCounts goal{start[1] + 1, start[2], start[3] - 1};
  const int a2 = start[2];
  const int a3 = start[3];
  while (true) {
    guard.tick("switch pipeline");
    bump(opts.stats, [](SwitchStats& s) { ++s.resolve_calls; });
    const ResolveResult r = resolve_on(m, opts.trace);
    if (r.improved) {
      bump(opts.stats, [](SwitchStats& s) { ++s.resolve_improved; });
      break;
    }
    const P0Certificate p0 = find_p0_impl(inst, m, guard, opts);
    const SwitchCertificate sc = find_switch_path(inst, p0, opts.trace);
    const NearlyAltPath& p = sc.path;
    const int k = sc.k();

    ShiftPositions cur{1, sc.h};
    long long steps = 0;
    while (const auto next = move_step(p, cur.i, cur.j)) {
      if (opts.trace != nullptr) {
        const ColorCounts a = p.counts_at(cur.i, cur.j);
        const ColorCounts b = p.counts_at(next->i, next->j);
        emit(opts.trace, "shift_step",
             {{"from", {cur.i, cur.j}}, {"to", {next->i, next->j}}, {"a2", {a[2], b[2]}}, {"a3", {a[3], b[3]}}});
      }
      cur = *next;
      ++steps;
    }
    bump(opts.stats, [&](SwitchStats& s) { s.can_move_steps += steps; });
    emit(opts.trace, "can_move", {{"steps", steps}, {"i", cur.i}, {"j", cur.j}, {"k", k}});
    if (cur.j < k) {
      ensure(cur.i + 1 == cur.j && p.path().color(cur.i) == 3, "switch: shift walk stopped early");
      m = MateTable(inst, p.shift(cur.i, cur.j));
      break;
    }

    int imax = -1;
    for (int i = 1; i < k; i += 2) {
      if (p.counts_at(i, k)[2] == a2) imax = i;
    }
    ensure(imax >= cur.i, "switch: maximal i below the walk's endpoint");
    const ColorCounts cik = p.counts_at(imax, k);
    if (cik[3] < a3) {
      bump(opts.stats, [](SwitchStats& s) { ++s.ivl_calls; });
      emit(opts.trace, "ivl", {{"from", {imax, k}}, {"to", {1, sc.h}}});
      m = MateTable(inst, traced_ivl(p, {imax, k}, {1, sc.h}, a3 - 1, opts.trace));
      break;
    }
    if (imax >= sc.t) {
      ensure(cik[3] == a3, "switch: case 1 matching must keep a3");
      bump(opts.stats, [](SwitchStats& s) { ++s.case1_reentries; });
      emit(opts.trace, "case1_reentry", {{"i", imax}, {"k", k}});
      m = MateTable(inst, p.shift(imax, k));
      continue;
    }
    bump(opts.stats, [](SwitchStats& s) { ++s.case2_runs; });
    m = MateTable(inst, finish_case_two(inst, sc, imax, a2, a3, opts));
    break;
  }
  ensure(m.counts() == goal, "switch: result has the wrong counts");
}

Matching swap_12(const Matching& m) {
  std::vector<Edge> edges;
  edges.reserve(m.size());
  for (const Edge& e : m.edges()) edges.push_back({e.u, e.color == 3 ? 3 : 3 - e.color});
  return Matching(std::move(edges));
}

}  // namespace

Matching switch_matching(const Instance& inst, const Matching& m, int direction, const SwitchOptions& opts) {
  require(direction == 1 || direction == 2, "switch direction must be 1 or 2");
  if (!is_connected(inst)) throw Error(ErrorCode::NotConnected, "switching needs a connected instance");
  MateTable table(inst, m);
  if (table.size() != inst.n() - 1) throw Error(ErrorCode::MatchingWrongSize, "|M| = " + std::to_string(table.size()));
  if (table.counts()[3] == 0) throw Error(ErrorCode::A3Zero, "the matching has no M3 edge");
  const ColorCounts start = table.counts();

  Guard guard(inst, opts);
  emit(opts.trace, "switch", {{"direction", direction}, {"counts", {start[1], start[2], start[3]}}});
  Matching out;
  if (direction == 1) {
    switch_one(table, guard, opts);
    out = table.to_matching();
  } else {
    const Instance swapped = inst.relabel({2, 1, 3});
    MateTable t(swapped, swap_12(m));
    switch_one(t, guard, opts);
    out = swap_12(t.to_matching());
  }
  bump(opts.stats, [&](SwitchStats& s) {
    ++s.switches;
    s.max_steps_one_switch = std::max(s.max_steps_one_switch, guard.steps());
  });
  TargetTriple goal{start[1], start[2], start[3] - 1};
  goal.v[static_cast<std::size_t>(direction - 1)] += 1;
  const VerifyReport rep = verify_matching(inst, out, goal);
  ensure_msg(rep.ok, "switch output fails verification: " + rep.detail);
  return out;
}

}  // namespace tricolor
