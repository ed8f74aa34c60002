#pragma once

// Shared suffix dynamic program over subsets of elimination units used by
// the exact SOJA solvers. A unit is either a single internal vertex or a
// whole false-twin class; `mult` is the member count of the unit.
//
// For an eliminated set X the table holds the cheapest cost of finishing
// the elimination:
//
//   best(full) = 0
//   best(X)    = min over units u not in X of
//                  mult(u) * mu_{D_X}(rep(u)) + best(X + u)
//
// Layers are processed by descending popcount, so every value a state reads
// is final; states within a layer are independent. That makes the OpenMP
// version lock-free and its output bit-identical to a single-threaded run.
// The forward walk best(empty) -> full, taking the smallest unit index on
// ties, reconstructs the order.

#include <cstdint>
#include <limits>
#include <vector>

#include <omp.h>

#include "bitgraph.hpp"

namespace velim::detail {

struct SubsetDpResult {
  std::vector<int> unit_order;
  std::int64_t cost = 0;
};

class BinomialTable {
 public:
  explicit BinomialTable(int n) : n_(n), c_((n + 1) * (n + 1), 0) {
    for (int i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (int j = 1; j <= i; ++j) at(i, j) = at(i - 1, j - 1) + at(i - 1, j);
    }
  }
  std::uint64_t operator()(int i, int j) const {
    if (j < 0 || j > i) return 0;
    return c_[static_cast<std::size_t>(i) * (n_ + 1) + j];
  }

 private:
  std::uint64_t& at(int i, int j) {
    return c_[static_cast<std::size_t>(i) * (n_ + 1) + j];
  }
  int n_;
  std::vector<std::uint64_t> c_;
};

// rank-th subset of [0, n) with k bits, in ascending numeric mask order
inline std::uint32_t unrank_combination(std::uint64_t rank, int k, int n,
                                        const BinomialTable& binom) {
  std::uint32_t mask = 0;
  for (int j = k; j >= 1; --j) {
    int c = j - 1;
    while (c + 1 < n && binom(c + 1, j) <= rank) ++c;
    mask |= std::uint32_t(1) << c;
    rank -= binom(c, j);
  }
  return mask;
}

// next mask with the same popcount (Gosper); caller guards the last mask
inline std::uint32_t next_same_popcount(std::uint32_t mask) {
  const std::uint32_t low = mask & -mask;
  const std::uint32_t carry = mask + low;
  return (((mask ^ carry) >> 2) / low) | carry;
}

inline void relax_state(const BitGraph& g, std::uint32_t mask, int unit_count,
                        const std::vector<std::vector<int>>& units,
                        const std::vector<std::int64_t>& mult,
                        std::vector<std::int64_t>& best,
                        std::vector<std::uint8_t>& pick) {
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  int best_unit = -1;
  for (int u = 0; u < unit_count; ++u) {
    if (mask >> u & 1) continue;
    const std::int64_t c =
        mult[u] * g.markowitz(units[u][0]) + best[mask | (std::uint32_t(1) << u)];
    if (c < best_cost) {
      best_cost = c;
      best_unit = u;
    }
  }
  best[mask] = best_cost;
  pick[mask] = static_cast<std::uint8_t>(best_unit);
}

inline SubsetDpResult run_subset_dp(const BitGraph& base,
                                    const std::vector<std::vector<int>>& units,
                                    const std::vector<std::int64_t>& mult) {
  const int u_count = static_cast<int>(units.size());
  const std::uint32_t full =
      u_count == 0 ? 0 : (std::uint32_t(1) << u_count) - 1;
  std::vector<std::int64_t> best(std::size_t(1) << u_count, 0);
  std::vector<std::uint8_t> pick(std::size_t(1) << u_count, 0);

  const BinomialTable binom(u_count);
  for (int k = u_count - 1; k >= 0; --k) {
    const std::uint64_t layer_size = binom(u_count, k);
#pragma omp parallel
    {
      const int threads = omp_get_num_threads();
      const int tid = omp_get_thread_num();
      const std::uint64_t begin = layer_size * tid / threads;
      const std::uint64_t end = layer_size * (tid + 1) / threads;
      if (begin < end) {
        EliminationWalker walker(base, units);
        std::uint32_t mask = unrank_combination(begin, k, u_count, binom);
        for (std::uint64_t i = begin; i < end; ++i) {
          relax_state(walker.advance(mask), mask, u_count, units, mult, best, pick);
          if (i + 1 < end) mask = next_same_popcount(mask);
        }
      }
    }
  }

  SubsetDpResult result;
  result.cost = best[0];
  std::uint32_t mask = 0;
  while (mask != full) {
    const int u = pick[mask];
    result.unit_order.push_back(u);
    mask |= std::uint32_t(1) << u;
  }
  return result;
}

}  // namespace velim::detail
