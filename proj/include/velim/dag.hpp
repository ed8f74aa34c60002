#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "velim/errors.hpp"
#include "velim/rational.hpp"

namespace velim {

using VertexId = std::int32_t;

enum class VertexKind : std::uint8_t { Terminal, Internal };

struct VertexDecl {
  VertexKind kind = VertexKind::Internal;
  std::string name;  // external label, kept for I/O only; may be empty
};

using ArcEnds = std::pair<VertexId, VertexId>;

/// Simple directed acyclic graph with vertices split into terminal and
/// internal sets. Arcs optionally carry exact rational weights (all or none).
///
/// Ids are dense 0..n-1 at build time and stay fixed afterwards: eliminating
/// a vertex removes its id from the graph without renumbering the rest, so
/// graphs reached through different elimination orders compare equal id for
/// id. Values are immutable after construction; every operation returns a
/// new graph.
class Dag {
 public:
  Dag() = default;

  /// Validated construction. `weights`, when nonempty, must parallel `arcs`.
  /// Rejects cycles (including self-loops), duplicate arcs, arcs touching
  /// undeclared vertices, and partially weighted arc lists.
  static Dag build(std::vector<VertexDecl> vertices,
                   const std::vector<ArcEnds>& arcs,
                   const std::vector<Rational>& weights = {});

  /// Size of the id space fixed at build time (eliminated ids stay reserved).
  int id_space() const { return static_cast<int>(kinds_.size()); }

  int vertex_count() const { return present_count_; }
  bool contains(VertexId v) const;
  VertexKind kind(VertexId v) const;
  bool is_internal(VertexId v) const;
  const std::string& name(VertexId v) const;
  bool weighted() const { return weighted_; }

  std::vector<VertexId> vertex_ids() const;       // present ids, ascending
  std::vector<VertexId> internal_vertices() const;
  std::vector<VertexId> terminal_vertices() const;

  const std::vector<VertexId>& out_neighbors(VertexId v) const;
  const std::vector<VertexId>& in_neighbors(VertexId v) const;
  int in_degree(VertexId v) const;
  int out_degree(VertexId v) const;
  bool has_arc(VertexId tail, VertexId head) const;
  const Rational& weight(VertexId tail, VertexId head) const;

  std::int64_t arc_count() const;

  /// Present vertices in some topological order of the current arc set.
  std::vector<VertexId> topological_order() const;

  /// Equal vertex-id sets (with kinds) and equal arc sets; weighted graphs
  /// additionally compare weights exactly. Names are ignored.
  friend bool operator==(const Dag& a, const Dag& b);
  friend bool operator!=(const Dag& a, const Dag& b) { return !(a == b); }

 private:
  friend class DagOps;

  void check_present(VertexId v, const char* op) const;

  std::vector<VertexKind> kinds_;
  std::vector<std::uint8_t> present_;
  std::vector<std::string> names_;
  std::vector<std::vector<VertexId>> out_, in_;        // sorted neighbor lists
  std::vector<std::vector<Rational>> out_weights_;     // parallel to out_
  bool weighted_ = false;
  int present_count_ = 0;
};

/// Ordered list of internal vertices with the cost accumulated while
/// replaying it (the sum of Markowitz degrees at elimination time).
struct EliminationSequence {
  std::vector<VertexId> order;
  std::int64_t cost = 0;
};

/// Source/sink derivative table: entry (s, t) for every pair of an in-degree-0
/// vertex s and an out-degree-0 vertex t; pairs without a connecting path
/// hold an exact 0.
struct JacobianTable {
  std::map<std::pair<VertexId, VertexId>, Rational> entries;
};

// ------------------------------------------------------------------
// elimination kernel
// ------------------------------------------------------------------

/// In-degree times out-degree of internal vertex v.
std::int64_t markowitz(const Dag& d, VertexId v);

/// Removes internal vertex v and connects every in-neighbor to every
/// out-neighbor not already connected. On weighted graphs, fill weights
/// follow the chain rule: weight(x,y) gains weight(x,v) * weight(v,y).
Dag eliminate(const Dag& d, VertexId v);

/// eliminate() restricted to weighted graphs; also reports the number of
/// weight multiplications performed, which equals markowitz(d, v).
std::pair<Dag, std::int64_t> eliminate_weighted(const Dag& d, VertexId v);

/// Folds eliminate() left to right and replays the cost of the order.
std::pair<Dag, EliminationSequence> apply_sequence(
    const Dag& d, const std::vector<VertexId>& order);

/// Eliminates the set X in ascending-id order. The resulting graph does not
/// depend on the order, so any fixed order is canonical.
Dag eliminate_set(const Dag& d, const std::vector<VertexId>& xs);

/// Independent route to the same graph: arc (u,v) exists afterwards iff the
/// input has a u->v path whose intermediate vertices all lie in X. Structural
/// graphs only; used as a cross-check oracle for eliminate_set.
Dag eliminate_set_by_reachability(const Dag& d, const std::vector<VertexId>& xs);

/// Sums, over all source-to-sink paths, the product of arc weights along the
/// path. Exponential in general; `path_guard` bounds the number of paths
/// walked before giving up with Error(TooLarge).
JacobianTable jacobian_by_paths(const Dag& d, std::int64_t path_guard = 1'000'000);

/// Partition of the internal vertices into classes with pairwise equal open
/// in-neighborhoods and equal open out-neighborhoods. Singletons included.
/// Classes and members are sorted ascending.
std::vector<std::vector<VertexId>> find_false_twins(const Dag& d);

std::int64_t count_arcs(const Dag& d);

}  // namespace velim
