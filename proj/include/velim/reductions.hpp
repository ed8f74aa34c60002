#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "velim/dag.hpp"

namespace velim::reductions {

/// Simple undirected graph; vertex ids are dense 0..n-1, names optional.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  /// Rejects loops and duplicate edges with Error(NotSimpleGraph).
  static UndirectedGraph build(int n, const std::vector<std::pair<int, int>>& edges,
                               std::vector<std::string> names = {});

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }  // u < v
  const std::string& name(int v) const;

 private:
  std::vector<std::vector<int>> adjacency_;       // sorted
  std::vector<std::pair<int, int>> edges_;        // normalized, sorted
  std::vector<std::string> names_;
};

/// Generated decision instance: the DAG, its threshold k', and the map from
/// source-graph entities to the gadget vertex ids that stand in for them.
struct ReductionOutput {
  Dag dag;
  std::int64_t k_prime = 0;
  std::vector<std::pair<std::string, std::vector<VertexId>>> mapping;
};

/// Vertex cover to structural Jacobian accumulation. Every source vertex v
/// becomes a five-vertex gadget (v1, v4, v5 terminal; v2, v3 internal) wired
/// so that a total elimination of cost at most 6m + 4n + k exists iff the
/// source graph has a vertex cover of size at most k. `k` must lie in
/// [0, |V|].
ReductionOutput reduce_vc(const UndirectedGraph& g, int k);

/// Per-property validation report for independent-set source instances:
/// all degrees in [2,3], girth at least 5, and 2-degenerate. Witnesses are
/// populated on failure.
struct IsInstanceReport {
  bool degree_ok = true;
  std::vector<int> degree_witness;    // vertices with degree outside [2,3]
  bool girth_ok = true;
  std::vector<int> short_cycle;       // a cycle of length < 5
  bool degeneracy_ok = true;
  std::vector<int> core_witness;      // leftover subgraph of min degree > 2
  bool ok() const { return degree_ok && girth_ok && degeneracy_ok; }
};

IsInstanceReport validate_is_instance(const UndirectedGraph& g);

/// Position of v's neighbors relative to v in the order: degree 3 one-sided
/// is type 1, degree 3 mixed is type 2, degree 2 one-sided is type 3,
/// degree 2 mixed is type 4. Throws Error(BadDegree) outside degree [2,3].
int classify_vertex_type(const UndirectedGraph& g, const std::vector<int>& order,
                         int v);

/// Independent set to minimum edge count. Each source vertex becomes an
/// internal hub u_i flanked by four-terminal banks I_i and O_i; a shared
/// four-terminal sink bank T closes the gadget. I_i -> O_i arc counts depend
/// on the vertex type (14, 16, 11, 12 for types 1..4; lexicographically
/// first pairs). k' = m' - k for the constructed arc total m'. The instance
/// must pass validate_is_instance unless `allow_invalid` is set (the
/// construction itself works on any simple graph; only the equivalence
/// argument needs the validated properties).
ReductionOutput reduce_is(const UndirectedGraph& g, int k,
                          const std::vector<int>& order,
                          bool allow_invalid = false);

/// Exhaustive minimum vertex cover size; |V| <= cap.
int brute_vc(const UndirectedGraph& g, int cap = 20);

/// Exhaustive maximum independent set size; |V| <= cap.
int brute_is(const UndirectedGraph& g, int cap = 20);

}  // namespace velim::reductions
