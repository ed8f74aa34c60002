#include "velim/soja.hpp"

#include <algorithm>
#include <limits>

#include "bitgraph.hpp"

namespace velim::soja {

// Reference implementation of the exact subset DP. Deliberately unclever:
// one thread, every subset graph rebuilt from the base by eliminating set
// bits in ascending order. The parallel kernel in soja.cpp must match this
// bit for bit; tests and the benchmark hold it to that.
SojaSolution solve_exact_serial(const Dag& d, int cap) {
  const detail::SolverInstance inst = detail::make_solver_instance(d);
  const int n = static_cast<int>(inst.internal_ids.size());
  if (cap < 0) cap = 0;
  if (n > std::min(cap, 30))
    throw Error(ErrorCode::CapExceeded,
                "internal vertex count " + std::to_string(n) + " exceeds cap " +
                    std::to_string(std::min(cap, 30)));

  const std::uint32_t full = n == 0 ? 0 : (std::uint32_t(1) << n) - 1;
  std::vector<std::int64_t> best(std::size_t(1) << n, 0);
  std::vector<std::uint8_t> pick(std::size_t(1) << n, 0);

  for (std::uint32_t mask = full; mask-- > 0;) {
    detail::BitGraph g = inst.base;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) g.eliminate(inst.internal_compact[i]);

    std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
    int best_vertex = -1;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) continue;
      const std::int64_t c = g.markowitz(inst.internal_compact[i]) +
                             best[mask | (std::uint32_t(1) << i)];
      if (c < best_cost) {
        best_cost = c;
        best_vertex = i;
      }
    }
    best[mask] = best_cost;
    pick[mask] = static_cast<std::uint8_t>(best_vertex);
  }

  SojaSolution sol;
  sol.solver = SolverTag::ExactDp;
  sol.optimal = true;
  sol.sequence.cost = best[0];
  std::uint32_t mask = 0;
  while (mask != full) {
    const int i = pick[mask];
    sol.sequence.order.push_back(inst.internal_ids[i]);
    mask |= std::uint32_t(1) << i;
  }
  return sol;
}

}  // namespace velim::soja
