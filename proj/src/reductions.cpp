#include "velim/reductions.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>

namespace velim::reductions {

UndirectedGraph UndirectedGraph::build(int n,
                                       const std::vector<std::pair<int, int>>& edges,
                                       std::vector<std::string> names) {
  UndirectedGraph g;
  g.adjacency_.resize(n);
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw Error(ErrorCode::NotSimpleGraph, "name list does not match vertex count");
  g.names_ = std::move(names);
  if (g.names_.empty()) {
    g.names_.reserve(n);
    for (int v = 0; v < n; ++v) g.names_.push_back("v" + std::to_string(v));
  }

  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw Error(ErrorCode::UnknownVertex,
                  "edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");
    if (u == v)
      throw Error(ErrorCode::NotSimpleGraph, "loop at vertex " + std::to_string(u));
    auto e = std::minmax(u, v);
    if (!seen.insert(e).second)
      throw Error(ErrorCode::NotSimpleGraph,
                  "duplicate edge {" + std::to_string(e.first) + ", " +
                      std::to_string(e.second) + "}");
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  g.edges_.assign(seen.begin(), seen.end());
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

const std::vector<int>& UndirectedGraph::neighbors(int v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return adjacency_[v];
}

bool UndirectedGraph::has_edge(int u, int v) const {
  const auto& nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v) && v != u;
}

const std::string& UndirectedGraph::name(int v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return names_[v];
}

// ------------------------------------------------------------------
// vertex cover -> SOJA
// ------------------------------------------------------------------

ReductionOutput reduce_vc(const UndirectedGraph& g, int k) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (k < 0 || k > n)
    throw Error(ErrorCode::ValidationError,
                "k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");

  // vertex v occupies ids 5v .. 5v+4 as v1..v5
  auto gadget = [](int v, int part) { return static_cast<VertexId>(5 * v + part - 1); };

  std::vector<VertexDecl> decls;
  decls.reserve(5 * n);
  for (int v = 0; v < n; ++v)
    for (int part = 1; part <= 5; ++part)
      decls.push_back({part == 2 || part == 3 ? VertexKind::Internal
                                              : VertexKind::Terminal,
                       g.name(v) + "_" + std::to_string(part)});

  std::vector<ArcEnds> arcs;
  arcs.reserve(6 * n + 4 * m);
  for (int v = 0; v < n; ++v) {
    arcs.push_back({gadget(v, 1), gadget(v, 2)});
    arcs.push_back({gadget(v, 2), gadget(v, 3)});
    arcs.push_back({gadget(v, 2), gadget(v, 4)});
    arcs.push_back({gadget(v, 2), gadget(v, 5)});
    arcs.push_back({gadget(v, 3), gadget(v, 4)});
    arcs.push_back({gadget(v, 3), gadget(v, 5)});
  }
  for (auto [u, v] : g.edges()) {
    arcs.push_back({gadget(u, 1), gadget(v, 3)});
    arcs.push_back({gadget(u, 2), gadget(v, 3)});
    arcs.push_back({gadget(v, 1), gadget(u, 3)});
    arcs.push_back({gadget(v, 2), gadget(u, 3)});
  }

  ReductionOutput out;
  out.dag = Dag::build(std::move(decls), arcs);
  out.k_prime = 6LL * m + 4LL * n + k;
  for (int v = 0; v < n; ++v) {
    std::vector<VertexId> ids;
    for (int part = 1; part <= 5; ++part) ids.push_back(gadget(v, part));
    out.mapping.emplace_back(g.name(v), std::move(ids));
  }
  return out;
}

// ------------------------------------------------------------------
// independent-set instance validation
// ------------------------------------------------------------------

namespace {

// shortest cycle through edge {u, v}: shortest u-v path avoiding the edge
std::vector<int> shortest_cycle_via(const UndirectedGraph& g, int u, int v) {
  std::vector<int> parent(g.vertex_count(), -1);
  std::deque<int> queue{u};
  parent[u] = u;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int next : g.neighbors(cur)) {
      if (cur == u && next == v) continue;  // skip the closing edge itself
      if (parent[next] >= 0) continue;
      parent[next] = cur;
      if (next == v) {
        std::vector<int> cycle;
        for (int w = v; w != u; w = parent[w]) cycle.push_back(w);
        cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      queue.push_back(next);
    }
  }
  return {};
}

}  // namespace

IsInstanceReport validate_is_instance(const UndirectedGraph& g) {
  IsInstanceReport report;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < 2 || g.degree(v) > 3) report.degree_witness.push_back(v);
  report.degree_ok = report.degree_witness.empty();

  std::vector<int> best_cycle;
  for (auto [u, v] : g.edges()) {
    const auto cycle = shortest_cycle_via(g, u, v);
    if (!cycle.empty() && (best_cycle.empty() || cycle.size() < best_cycle.size()))
      best_cycle = cycle;
  }
  if (!best_cycle.empty() && best_cycle.size() < 5) {
    report.girth_ok = false;
    report.short_cycle = best_cycle;
  }

  // peel minimum-degree vertices; stuck means a subgraph of min degree > 2
  std::vector<int> deg(g.vertex_count());
  std::vector<std::uint8_t> alive(g.vertex_count(), 1);
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  int remaining = g.vertex_count();
  while (remaining > 0) {
    int pick = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (alive[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
    if (deg[pick] > 2) {
      report.degeneracy_ok = false;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (alive[v]) report.core_witness.push_back(v);
      break;
    }
    alive[pick] = 0;
    --remaining;
    for (int w : g.neighbors(pick))
      if (alive[w]) --deg[w];
  }
  return report;
}

int classify_vertex_type(const UndirectedGraph& g, const std::vector<int>& order,
                         int v) {
  const int deg = g.degree(v);
  if (deg < 2 || deg > 3)
    throw Error(ErrorCode::BadDegree, "vertex " + std::to_string(v) + " has degree " +
                                          std::to_string(deg));
  std::vector<int> pos(g.vertex_count(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  int earlier = 0;
  for (int w : g.neighbors(v))
    if (pos[w] < pos[v]) ++earlier;
  const bool mixed = earlier != 0 && earlier != deg;
  if (deg == 3) return mixed ? 2 : 1;
  return mixed ? 4 : 3;
}

// ------------------------------------------------------------------
// independent set -> MEC
// ------------------------------------------------------------------

ReductionOutput reduce_is(const UndirectedGraph& g, int k,
                          const std::vector<int>& order, bool allow_invalid) {
  const int n = g.vertex_count();
  if (k < 0 || k > n)
    throw Error(ErrorCode::ValidationError,
                "k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  {
    std::vector<int> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect)
      throw Error(ErrorCode::ValidationError, "order is not a permutation of the vertices");
  }
  if (!allow_invalid) {
    const auto report = validate_is_instance(g);
    if (!report.ok()) {
      std::string what;
      if (!report.degree_ok)
        what += " degree outside [2,3] at vertex " +
                std::to_string(report.degree_witness.front()) + ";";
      if (!report.girth_ok)
        what += " cycle of length " + std::to_string(report.short_cycle.size()) + ";";
      if (!report.degeneracy_ok) what += " not 2-degenerate;";
      throw Error(ErrorCode::InvalidInstance, "instance rejected:" + what);
    }
  }

  static constexpr int kBank = 4;  // size of T, I_i and O_i
  static constexpr int kIoArcCount[] = {0, 14, 16, 11, 12};  // by vertex type

  // ids: T occupies 0..3, then 9 per vertex: u, I0..I3, O0..O3
  auto sink_bank = [](int j) { return static_cast<VertexId>(j); };
  auto hub = [](int v) { return static_cast<VertexId>(kBank + 9 * v); };
  auto in_bank = [](int v, int j) { return static_cast<VertexId>(kBank + 9 * v + 1 + j); };
  auto out_bank = [](int v, int j) { return static_cast<VertexId>(kBank + 9 * v + 5 + j); };

  std::vector<VertexDecl> decls;
  decls.reserve(kBank + 9 * n);
  for (int j = 0; j < kBank; ++j)
    decls.push_back({VertexKind::Terminal, "T_" + std::to_string(j)});
  for (int v = 0; v < n; ++v) {
    decls.push_back({VertexKind::Internal, g.name(v) + "_u"});
    for (int j = 0; j < kBank; ++j)
      decls.push_back({VertexKind::Terminal, g.name(v) + "_I" + std::to_string(j)});
    for (int j = 0; j < kBank; ++j)
      decls.push_back({VertexKind::Terminal, g.name(v) + "_O" + std::to_string(j)});
  }

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<ArcEnds> arcs;
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < kBank; ++a) {
      arcs.push_back({in_bank(v, a), hub(v)});
      for (int b = 0; b < kBank; ++b) arcs.push_back({in_bank(v, a), sink_bank(b)});
    }
    for (int b = 0; b < kBank; ++b) {
      arcs.push_back({hub(v), out_bank(v, b)});
      arcs.push_back({hub(v), sink_bank(b)});
    }
    const int io_arcs = kIoArcCount[classify_vertex_type(g, order, v)];
    for (int pair = 0; pair < io_arcs; ++pair)
      arcs.push_back({in_bank(v, pair / kBank), out_bank(v, pair % kBank)});
  }
  for (auto [u, v] : g.edges()) {
    if (pos[u] < pos[v])
      arcs.push_back({hub(u), hub(v)});
    else
      arcs.push_back({hub(v), hub(u)});
  }

  ReductionOutput out;
  out.dag = Dag::build(std::move(decls), arcs);
  out.k_prime = out.dag.arc_count() - k;
  for (int v = 0; v < n; ++v) {
    std::vector<VertexId> ids{hub(v)};
    for (int j = 0; j < kBank; ++j) ids.push_back(in_bank(v, j));
    for (int j = 0; j < kBank; ++j) ids.push_back(out_bank(v, j));
    out.mapping.emplace_back(g.name(v), std::move(ids));
  }
  {
    std::vector<VertexId> t_ids;
    for (int j = 0; j < kBank; ++j) t_ids.push_back(sink_bank(j));
    out.mapping.emplace_back("T", std::move(t_ids));
  }
  return out;
}

// ------------------------------------------------------------------
// source-problem oracles
// ------------------------------------------------------------------

namespace {

void check_oracle_cap(const UndirectedGraph& g, int cap) {
  if (g.vertex_count() > cap)
    throw Error(ErrorCode::CapExceeded,
                "vertex count " + std::to_string(g.vertex_count()) + " exceeds cap " +
                    std::to_string(cap));
}

}  // namespace

int brute_vc(const UndirectedGraph& g, int cap) {
  check_oracle_cap(g, cap);
  const int n = g.vertex_count();
  int best = n;
  for (std::uint32_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    bool covers = true;
    for (auto [u, v] : g.edges())
      if (!(mask >> u & 1) && !(mask >> v & 1)) {
        covers = false;
        break;
      }
    if (covers) best = std::min(best, std::popcount(mask));
  }
  return best;
}

int brute_is(const UndirectedGraph& g, int cap) {
  check_oracle_cap(g, cap);
  const int n = g.vertex_count();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    bool independent = true;
    for (auto [u, v] : g.edges())
      if ((mask >> u & 1) && (mask >> v & 1)) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, std::popcount(mask));
  }
  return best;
}

}  // namespace velim::reductions
