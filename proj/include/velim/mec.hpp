#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "velim/dag.hpp"

namespace velim::mec {

inline constexpr int kDefaultExactCap = 24;

/// A subset of internal vertices whose elimination minimizes (or at least
/// witnesses) the remaining arc count. `minimal` means no single vertex can
/// be dropped from the set without strictly increasing the arc count.
struct MecSolution {
  std::vector<VertexId> eliminated;
  std::int64_t arc_count = 0;
  bool minimal = false;
};

/// Minimum remaining arc count over all subsets of internal vertices, by
/// exhaustive enumeration. Each subset is evaluated from scratch, so memory
/// stays polynomial. Ties go to smaller subsets, then to the smaller subset
/// bitmask, making the reported minimizer reproducible. OpenMP-parallel over
/// the subset range; the result does not depend on the thread count.
MecSolution solve_exact(const Dag& d, int cap = kDefaultExactCap);

/// Single-threaded reference for solve_exact, kept for testing and for the
/// benchmark. Identical output contract.
MecSolution solve_exact_serial(const Dag& d, int cap = kDefaultExactCap);

/// Shrinks X to a minimal solution: scans ascending and drops any vertex
/// whose removal does not increase the arc count, restarting after each
/// drop, until the minimality predicate holds.
MecSolution minimize_solution(const Dag& d, const std::vector<VertexId>& xs);

/// Replays X and reports (arc count of the result, arc count <= k).
std::pair<std::int64_t, bool> verify_mec(const Dag& d,
                                         const std::vector<VertexId>& xs,
                                         std::int64_t k);

}  // namespace velim::mec
