#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "velim/dag.hpp"

namespace velim::soja {

inline constexpr int kDefaultExactCap = 24;
inline constexpr int kDefaultBruteLimit = 8;

enum class SolverTag { ExactDp, Brute, Greedy, ExactDpTwins };

const char* solver_tag_name(SolverTag tag);  // "exact-dp", "brute", ...

/// A total elimination sequence covering every internal vertex, its cost,
/// and whether the producing solver guarantees optimality.
struct SojaSolution {
  EliminationSequence sequence;
  bool optimal = false;
  SolverTag solver = SolverTag::ExactDp;
};

/// Minimum-cost total elimination order by dynamic programming over subsets
/// of internal vertices: O(2^n) states, one incremental elimination per
/// state. Parallelized with OpenMP; the result is bit-identical for every
/// thread count. Ties at each step go to the smaller vertex id, so the
/// returned order is deterministic. Throws Error(CapExceeded) when the
/// internal vertex count exceeds `cap`.
SojaSolution solve_exact(const Dag& d, int cap = kDefaultExactCap);

/// Single-threaded reference for solve_exact. Straight-line implementation
/// kept for testing and benchmarking the parallel kernel; identical output
/// contract.
SojaSolution solve_exact_serial(const Dag& d, int cap = kDefaultExactCap);

/// Exhaustive search over all n! total orders; ties toward the
/// lexicographically smallest order. Independent oracle for the subset DP.
SojaSolution solve_brute(const Dag& d, int limit = kDefaultBruteLimit);

/// Repeatedly eliminates a vertex of minimum current Markowitz degree
/// (ties toward the smaller id). No optimality guarantee.
SojaSolution solve_greedy(const Dag& d);

/// Subset DP over false-twin classes instead of single vertices: a class of
/// size t costs t times the Markowitz degree of one member at the point the
/// class block starts, because eliminating one twin leaves the others'
/// degrees unchanged. Classes expand ascending by id. `cap` bounds the
/// number of twin classes.
SojaSolution solve_exact_twins(const Dag& d, int cap = kDefaultExactCap);

/// Replays `order` and reports (cost, cost <= k). The order must cover all
/// internal vertices; otherwise Error(NotTotal).
std::pair<std::int64_t, bool> verify_sequence(const Dag& d,
                                              const std::vector<VertexId>& order,
                                              std::int64_t k);

}  // namespace velim::soja
