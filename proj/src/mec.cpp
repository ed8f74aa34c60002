#include "velim/mec.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include <omp.h>

#include "bitgraph.hpp"

namespace velim::mec {

namespace {

using detail::BitGraph;
using detail::make_solver_instance;
using detail::SolverInstance;

// lexicographic minimum of (arc count, subset size, subset mask)
using Candidate = std::tuple<std::int64_t, int, std::uint32_t>;

std::int64_t arcs_after(const SolverInstance& inst, std::uint32_t mask) {
  BitGraph g = inst.base;
  for (std::size_t i = 0; i < inst.internal_compact.size(); ++i)
    if (mask >> i & 1) g.eliminate(inst.internal_compact[i]);
  return g.arc_count();
}

int check_cap(const SolverInstance& inst, int cap) {
  if (cap < 0) cap = 0;
  const int n = static_cast<int>(inst.internal_ids.size());
  if (n > std::min(cap, 30))
    throw Error(ErrorCode::CapExceeded,
                "internal vertex count " + std::to_string(n) + " exceeds cap " +
                    std::to_string(std::min(cap, 30)));
  return n;
}

MecSolution finish(const SolverInstance& inst, Candidate best) {
  MecSolution sol;
  sol.arc_count = std::get<0>(best);
  const std::uint32_t mask = std::get<2>(best);
  for (std::size_t i = 0; i < inst.internal_ids.size(); ++i)
    if (mask >> i & 1) sol.eliminated.push_back(inst.internal_ids[i]);

  // The subset-size tie-break already forces minimality (dropping a vertex
  // without losing optimality would have produced a smaller winner), but the
  // flag is cheap to establish honestly.
  sol.minimal = true;
  for (std::size_t i = 0; i < inst.internal_ids.size() && sol.minimal; ++i)
    if (mask >> i & 1)
      if (arcs_after(inst, mask & ~(std::uint32_t(1) << i)) <= sol.arc_count)
        sol.minimal = false;
  return sol;
}

}  // namespace

MecSolution solve_exact(const Dag& d, int cap) {
  const SolverInstance inst = make_solver_instance(d);
  const int n = check_cap(inst, cap);
  const std::uint64_t subsets = std::uint64_t(1) << n;

  Candidate best{std::numeric_limits<std::int64_t>::max(), 0, 0};
#pragma omp parallel
  {
    Candidate local{std::numeric_limits<std::int64_t>::max(), 0, 0};
#pragma omp for schedule(static) nowait
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(subsets); ++m) {
      const auto mask = static_cast<std::uint32_t>(m);
      const Candidate cand{arcs_after(inst, mask), std::popcount(mask), mask};
      if (cand < local) local = cand;
    }
#pragma omp critical
    if (local < best) best = local;
  }
  return finish(inst, best);
}

MecSolution solve_exact_serial(const Dag& d, int cap) {
  const SolverInstance inst = make_solver_instance(d);
  const int n = check_cap(inst, cap);
  const std::uint64_t subsets = std::uint64_t(1) << n;

  Candidate best{std::numeric_limits<std::int64_t>::max(), 0, 0};
  for (std::uint64_t m = 0; m < subsets; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const Candidate cand{arcs_after(inst, mask), std::popcount(mask), mask};
    if (cand < best) best = cand;
  }
  return finish(inst, best);
}

MecSolution minimize_solution(const Dag& d, const std::vector<VertexId>& xs) {
  std::vector<VertexId> current(xs);
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  std::int64_t arcs = count_arcs(eliminate_set(d, current));

  // ascending scan, restart after every drop
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::vector<VertexId> without(current);
      without.erase(without.begin() + i);
      const std::int64_t reduced = count_arcs(eliminate_set(d, without));
      if (reduced <= arcs) {
        current = std::move(without);
        arcs = reduced;
        changed = true;
        break;
      }
    }
  }

  MecSolution sol;
  sol.eliminated = std::move(current);
  sol.arc_count = arcs;
  sol.minimal = true;
  return sol;
}

std::pair<std::int64_t, bool> verify_mec(const Dag& d,
                                         const std::vector<VertexId>& xs,
                                         std::int64_t k) {
  const std::int64_t arcs = count_arcs(eliminate_set(d, xs));
  return {arcs, arcs <= k};
}

}  // namespace velim::mec
