#include "velim/generate.hpp"

#include <algorithm>
#include <random>

namespace velim::gen {

Dag random_dag(const DagParams& params) {
  std::mt19937_64 rng(params.seed);
  const int n = params.terminals + params.internals;

  std::vector<VertexDecl> decls(n);
  for (int v = 0; v < n; ++v)
    decls[v].kind = v < params.terminals ? VertexKind::Terminal : VertexKind::Internal;
  std::shuffle(decls.begin(), decls.end(), rng);
  for (int v = 0; v < n; ++v)
    decls[v].name =
        (decls[v].kind == VertexKind::Terminal ? "t" : "x") + std::to_string(v);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<ArcEnds> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < params.arc_prob) arcs.push_back({u, v});

  std::vector<Rational> weights;
  if (params.weighted) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    weights.reserve(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      int p = num(rng);
      if (p == 0) p = 1;
      weights.emplace_back(p, den(rng));
    }
  }
  return Dag::build(std::move(decls), arcs, weights);
}

reductions::UndirectedGraph random_graph(int n, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < edge_prob) edges.push_back({u, v});
  return reductions::UndirectedGraph::build(n, edges);
}

}  // namespace velim::gen
