#include "velim/dag.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace velim {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::PartialWeights: return "PartialWeights";
    case ErrorCode::NotInternal: return "NotInternal";
    case ErrorCode::NotWeighted: return "NotWeighted";
    case ErrorCode::WeightedUnsupported: return "WeightedUnsupported";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DuplicateInSequence: return "DuplicateInSequence";
    case ErrorCode::NotTotal: return "NotTotal";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotSimpleGraph: return "NotSimpleGraph";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Error";
}

namespace {

// position of `v` in the sorted list, or -1
int sorted_find(const std::vector<VertexId>& xs, VertexId v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it == xs.end() || *it != v) return -1;
  return static_cast<int>(it - xs.begin());
}

void sorted_insert(std::vector<VertexId>& xs, VertexId v) {
  xs.insert(std::upper_bound(xs.begin(), xs.end(), v), v);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  xs.erase(it);
}

}  // namespace

Dag Dag::build(std::vector<VertexDecl> vertices,
               const std::vector<ArcEnds>& arcs,
               const std::vector<Rational>& weights) {
  const auto n = static_cast<VertexId>(vertices.size());
  if (!weights.empty() && weights.size() != arcs.size())
    throw Error(ErrorCode::PartialWeights,
                "got " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(arcs.size()) + " arcs");

  Dag d;
  d.kinds_.reserve(vertices.size());
  d.names_.reserve(vertices.size());
  for (auto& decl : vertices) {
    d.kinds_.push_back(decl.kind);
    d.names_.push_back(std::move(decl.name));
  }
  d.present_.assign(vertices.size(), 1);
  d.present_count_ = static_cast<int>(vertices.size());
  d.out_.resize(vertices.size());
  d.in_.resize(vertices.size());
  d.weighted_ = !weights.empty();
  if (d.weighted_) d.out_weights_.resize(vertices.size());

  std::set<ArcEnds> seen;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto [tail, head] = arcs[i];
    if (tail < 0 || tail >= n)
      throw Error(ErrorCode::UnknownVertex, "arc tail " + std::to_string(tail));
    if (head < 0 || head >= n)
      throw Error(ErrorCode::UnknownVertex, "arc head " + std::to_string(head));
    if (tail == head)
      throw Error(ErrorCode::CycleDetected,
                  "self-loop at vertex " + std::to_string(tail));
    if (!seen.insert({tail, head}).second)
      throw Error(ErrorCode::DuplicateArc,
                  "(" + std::to_string(tail) + ", " + std::to_string(head) + ")");
    auto pos = std::upper_bound(d.out_[tail].begin(), d.out_[tail].end(), head) -
               d.out_[tail].begin();
    d.out_[tail].insert(d.out_[tail].begin() + pos, head);
    if (d.weighted_)
      d.out_weights_[tail].insert(d.out_weights_[tail].begin() + pos, weights[i]);
    sorted_insert(d.in_[head], tail);
  }

  // Kahn's algorithm; anything left over sits on a cycle.
  std::vector<int> indeg(vertices.size());
  std::queue<VertexId> ready;
  for (VertexId v = 0; v < n; ++v) {
    indeg[v] = static_cast<int>(d.in_[v].size());
    if (indeg[v] == 0) ready.push(v);
  }
  int emitted = 0;
  while (!ready.empty()) {
    VertexId v = ready.front();
    ready.pop();
    ++emitted;
    for (VertexId w : d.out_[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (emitted != n)
    throw Error(ErrorCode::CycleDetected, "arc relation is not acyclic");
  return d;
}

void Dag::check_present(VertexId v, const char* op) const {
  if (v < 0 || v >= id_space() || !present_[v])
    throw Error(ErrorCode::UnknownVertex,
                std::string(op) + ": vertex " + std::to_string(v));
}

bool Dag::contains(VertexId v) const {
  return v >= 0 && v < id_space() && present_[v];
}

VertexKind Dag::kind(VertexId v) const {
  check_present(v, "kind");
  return kinds_[v];
}

bool Dag::is_internal(VertexId v) const {
  check_present(v, "is_internal");
  return kinds_[v] == VertexKind::Internal;
}

const std::string& Dag::name(VertexId v) const {
  check_present(v, "name");
  return names_[v];
}

std::vector<VertexId> Dag::vertex_ids() const {
  std::vector<VertexId> ids;
  ids.reserve(present_count_);
  for (VertexId v = 0; v < id_space(); ++v)
    if (present_[v]) ids.push_back(v);
  return ids;
}

std::vector<VertexId> Dag::internal_vertices() const {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < id_space(); ++v)
    if (present_[v] && kinds_[v] == VertexKind::Internal) ids.push_back(v);
  return ids;
}

std::vector<VertexId> Dag::terminal_vertices() const {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < id_space(); ++v)
    if (present_[v] && kinds_[v] == VertexKind::Terminal) ids.push_back(v);
  return ids;
}

const std::vector<VertexId>& Dag::out_neighbors(VertexId v) const {
  check_present(v, "out_neighbors");
  return out_[v];
}

const std::vector<VertexId>& Dag::in_neighbors(VertexId v) const {
  check_present(v, "in_neighbors");
  return in_[v];
}

int Dag::in_degree(VertexId v) const {
  check_present(v, "in_degree");
  return static_cast<int>(in_[v].size());
}

int Dag::out_degree(VertexId v) const {
  check_present(v, "out_degree");
  return static_cast<int>(out_[v].size());
}

bool Dag::has_arc(VertexId tail, VertexId head) const {
  check_present(tail, "has_arc");
  check_present(head, "has_arc");
  return sorted_find(out_[tail], head) >= 0;
}

const Rational& Dag::weight(VertexId tail, VertexId head) const {
  if (!weighted_) throw Error(ErrorCode::NotWeighted, "graph is structural");
  check_present(tail, "weight");
  int pos = sorted_find(out_[tail], head);
  if (pos < 0)
    throw Error(ErrorCode::UnknownVertex,
                "no arc (" + std::to_string(tail) + ", " + std::to_string(head) + ")");
  return out_weights_[tail][pos];
}

std::int64_t Dag::arc_count() const {
  std::int64_t total = 0;
  for (VertexId v = 0; v < id_space(); ++v)
    if (present_[v]) total += static_cast<std::int64_t>(out_[v].size());
  return total;
}

std::vector<VertexId> Dag::topological_order() const {
  std::vector<int> indeg(id_space(), 0);
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < id_space(); ++v) {
    if (!present_[v]) continue;
    indeg[v] = static_cast<int>(in_[v].size());
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<VertexId> order;
  order.reserve(present_count_);
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexId w : out_[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != present_count_)
    throw Error(ErrorCode::CycleDetected, "graph lost acyclicity");
  return order;
}

bool operator==(const Dag& a, const Dag& b) {
  if (a.weighted_ != b.weighted_) return false;
  if (a.present_count_ != b.present_count_) return false;
  const int n = std::max(a.id_space(), b.id_space());
  for (VertexId v = 0; v < n; ++v) {
    bool pa = a.contains(v), pb = b.contains(v);
    if (pa != pb) return false;
    if (!pa) continue;
    if (a.kinds_[v] != b.kinds_[v]) return false;
    if (a.out_[v] != b.out_[v]) return false;
    if (a.weighted_ && a.out_weights_[v] != b.out_weights_[v]) return false;
  }
  return true;
}

// ------------------------------------------------------------------
// elimination kernel
// ------------------------------------------------------------------

// Grants the free operations mutable access so they can edit a private copy;
// the public surface stays persistent.
class DagOps {
 public:
  static void require_internal(const Dag& d, VertexId v, const char* op) {
    d.check_present(v, op);
    if (d.kinds_[v] != VertexKind::Internal)
      throw Error(ErrorCode::NotInternal,
                  std::string(op) + ": vertex " + std::to_string(v) +
                      " is terminal");
  }

  // Removes v and rewires in-neighbors to out-neighbors. Weighted graphs
  // get chain-rule fill weights. Returns the multiplication count mu(v).
  static std::int64_t eliminate_in_place(Dag& d, VertexId v) {
    const std::vector<VertexId> preds = d.in_[v];
    const std::vector<VertexId> succs = d.out_[v];
    std::vector<Rational> pred_w, succ_w;
    if (d.weighted_) {
      succ_w = d.out_weights_[v];
      pred_w.reserve(preds.size());
      for (VertexId x : preds) {
        int pos = sorted_find(d.out_[x], v);
        pred_w.push_back(d.out_weights_[x][pos]);
      }
    }

    for (VertexId x : preds) {
      int pos = sorted_find(d.out_[x], v);
      d.out_[x].erase(d.out_[x].begin() + pos);
      if (d.weighted_) d.out_weights_[x].erase(d.out_weights_[x].begin() + pos);
    }
    for (VertexId y : succs) sorted_erase(d.in_[y], v);

    for (std::size_t i = 0; i < preds.size(); ++i) {
      const VertexId x = preds[i];
      for (std::size_t j = 0; j < succs.size(); ++j) {
        const VertexId y = succs[j];
        int pos = sorted_find(d.out_[x], y);
        if (pos >= 0) {
          if (d.weighted_) d.out_weights_[x][pos] += pred_w[i] * succ_w[j];
        } else {
          auto at = std::upper_bound(d.out_[x].begin(), d.out_[x].end(), y) -
                    d.out_[x].begin();
          d.out_[x].insert(d.out_[x].begin() + at, y);
          if (d.weighted_)
            d.out_weights_[x].insert(d.out_weights_[x].begin() + at,
                                     pred_w[i] * succ_w[j]);
          sorted_insert(d.in_[y], x);
        }
      }
    }

    d.in_[v].clear();
    d.out_[v].clear();
    if (d.weighted_) d.out_weights_[v].clear();
    d.present_[v] = 0;
    --d.present_count_;
    return static_cast<std::int64_t>(preds.size()) *
           static_cast<std::int64_t>(succs.size());
  }

  static Dag reachability_contraction(const Dag& d, const std::vector<VertexId>& xs);
  static void strip_weights(Dag& d) {
    d.weighted_ = false;
    d.out_weights_.clear();
  }
};

std::int64_t markowitz(const Dag& d, VertexId v) {
  DagOps::require_internal(d, v, "markowitz");
  return static_cast<std::int64_t>(d.in_degree(v)) *
         static_cast<std::int64_t>(d.out_degree(v));
}

Dag eliminate(const Dag& d, VertexId v) {
  DagOps::require_internal(d, v, "eliminate");
  Dag copy = d;
  DagOps::eliminate_in_place(copy, v);
  return copy;
}

std::pair<Dag, std::int64_t> eliminate_weighted(const Dag& d, VertexId v) {
  if (!d.weighted())
    throw Error(ErrorCode::NotWeighted, "eliminate_weighted on structural graph");
  DagOps::require_internal(d, v, "eliminate_weighted");
  Dag copy = d;
  std::int64_t count = DagOps::eliminate_in_place(copy, v);
  return {std::move(copy), count};
}

std::pair<Dag, EliminationSequence> apply_sequence(
    const Dag& d, const std::vector<VertexId>& order) {
  std::set<VertexId> used;
  for (VertexId v : order)
    if (!used.insert(v).second)
      throw Error(ErrorCode::DuplicateInSequence, "vertex " + std::to_string(v));
  Dag cur = d;
  EliminationSequence seq;
  seq.order = order;
  for (VertexId v : order) {
    DagOps::require_internal(cur, v, "apply_sequence");
    seq.cost += static_cast<std::int64_t>(cur.in_degree(v)) * cur.out_degree(v);
    DagOps::eliminate_in_place(cur, v);
  }
  return {std::move(cur), std::move(seq)};
}

Dag eliminate_set(const Dag& d, const std::vector<VertexId>& xs) {
  std::vector<VertexId> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::DuplicateInSequence, "duplicate vertex in set");
  Dag cur = d;
  for (VertexId v : sorted) {
    DagOps::require_internal(cur, v, "eliminate_set");
    DagOps::eliminate_in_place(cur, v);
  }
  return cur;
}

Dag DagOps::reachability_contraction(const Dag& d, const std::vector<VertexId>& xs) {
  std::vector<std::uint8_t> in_x(d.id_space(), 0);
  for (VertexId v : xs) {
    require_internal(d, v, "eliminate_set_by_reachability");
    if (in_x[v])
      throw Error(ErrorCode::DuplicateInSequence, "duplicate vertex in set");
    in_x[v] = 1;
  }

  Dag result = d;
  for (VertexId v : xs) {
    result.present_[v] = 0;
    --result.present_count_;
    result.in_[v].clear();
    result.out_[v].clear();
  }
  for (VertexId v = 0; v < d.id_space(); ++v)
    if (result.present_[v]) {
      result.in_[v].clear();
      result.out_[v].clear();
    }

  // arc (u, w) iff some u->w path routes only through eliminated vertices
  for (VertexId u = 0; u < d.id_space(); ++u) {
    if (!result.present_[u]) continue;
    std::vector<std::uint8_t> seen(d.id_space(), 0);
    std::vector<VertexId> frontier{u};
    seen[u] = 1;
    while (!frontier.empty()) {
      VertexId cur = frontier.back();
      frontier.pop_back();
      for (VertexId next : d.out_[cur]) {
        if (seen[next]) continue;
        seen[next] = 1;
        if (in_x[next]) {
          frontier.push_back(next);  // interior of the path, keep walking
        } else {
          sorted_insert(result.out_[u], next);
          sorted_insert(result.in_[next], u);
        }
      }
    }
  }
  return result;
}

Dag eliminate_set_by_reachability(const Dag& d, const std::vector<VertexId>& xs) {
  if (d.weighted())
    throw Error(ErrorCode::WeightedUnsupported,
                "reachability contraction is a structural oracle");
  return DagOps::reachability_contraction(d, xs);
}

JacobianTable jacobian_by_paths(const Dag& d, std::int64_t path_guard) {
  if (!d.weighted())
    throw Error(ErrorCode::NotWeighted, "jacobian_by_paths on structural graph");

  std::vector<VertexId> sources, sinks;
  for (VertexId v : d.vertex_ids()) {
    if (d.in_degree(v) == 0) sources.push_back(v);
    if (d.out_degree(v) == 0) sinks.push_back(v);
  }

  JacobianTable table;
  for (VertexId s : sources)
    for (VertexId t : sinks)
      if (s != t) table.entries[{s, t}] = Rational(0);

  std::int64_t paths_walked = 0;
  // depth-first product accumulation from each source
  for (VertexId s : sources) {
    std::vector<std::pair<VertexId, Rational>> stack{{s, Rational(1)}};
    while (!stack.empty()) {
      auto [v, prod] = std::move(stack.back());
      stack.pop_back();
      if (d.out_degree(v) == 0) {
        if (v != s) table.entries[{s, v}] += prod;
        if (++paths_walked > path_guard)
          throw Error(ErrorCode::TooLarge,
                      "path count exceeds guard " + std::to_string(path_guard));
        continue;
      }
      const auto& outs = d.out_neighbors(v);
      for (std::size_t i = 0; i < outs.size(); ++i)
        stack.emplace_back(outs[i], prod * d.weight(v, outs[i]));
    }
  }
  return table;
}

std::vector<std::vector<VertexId>> find_false_twins(const Dag& d) {
  std::map<std::pair<std::vector<VertexId>, std::vector<VertexId>>,
           std::vector<VertexId>>
      classes;
  for (VertexId v : d.internal_vertices())
    classes[{d.in_neighbors(v), d.out_neighbors(v)}].push_back(v);
  std::vector<std::vector<VertexId>> result;
  result.reserve(classes.size());
  for (auto& [key, members] : classes) result.push_back(std::move(members));
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

std::int64_t count_arcs(const Dag& d) { return d.arc_count(); }

}  // namespace velim
