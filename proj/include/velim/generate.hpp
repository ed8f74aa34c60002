#pragma once

#include <cstdint>

#include "velim/dag.hpp"
#include "velim/reductions.hpp"

namespace velim::gen {

/// Random DAG over `terminals + internals` vertices: ids follow a topological
/// order, each forward pair becomes an arc with probability `arc_prob`, and
/// vertex kinds are shuffled across positions. Weighted graphs draw small
/// nonzero rationals. Deterministic in `seed`.
struct DagParams {
  int terminals = 4;
  int internals = 6;
  double arc_prob = 0.3;
  bool weighted = false;
  std::uint64_t seed = 1;
};

Dag random_dag(const DagParams& params);

/// Erdos-Renyi style simple graph, deterministic in `seed`.
reductions::UndirectedGraph random_graph(int n, double edge_prob, std::uint64_t seed);

}  // namespace velim::gen
