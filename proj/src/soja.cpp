#include "velim/soja.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bitgraph.hpp"
#include "subset_dp.hpp"

namespace velim::soja {

const char* solver_tag_name(SolverTag tag) {
  switch (tag) {
    case SolverTag::ExactDp: return "exact-dp";
    case SolverTag::Brute: return "brute";
    case SolverTag::Greedy: return "greedy";
    case SolverTag::ExactDpTwins: return "exact-dp-twins";
  }
  return "unknown";
}

namespace {

using detail::BitGraph;
using detail::make_solver_instance;
using detail::SolverInstance;

void check_cap(std::size_t unit_count, int cap, const char* what) {
  if (cap < 0) cap = 0;
  const int hard = 30;  // subset masks are 32-bit; tables are 9 bytes/state
  if (unit_count > static_cast<std::size_t>(std::min(cap, hard)))
    throw Error(ErrorCode::CapExceeded,
                std::string(what) + " count " + std::to_string(unit_count) +
                    " exceeds cap " + std::to_string(std::min(cap, hard)));
}

}  // namespace

SojaSolution solve_exact(const Dag& d, int cap) {
  const SolverInstance inst = make_solver_instance(d);
  const std::size_t n = inst.internal_ids.size();
  check_cap(n, cap, "internal vertex");

  std::vector<std::vector<int>> units(n);
  std::vector<std::int64_t> mult(n, 1);
  for (std::size_t i = 0; i < n; ++i) units[i] = {inst.internal_compact[i]};

  const detail::SubsetDpResult dp = detail::run_subset_dp(inst.base, units, mult);

  SojaSolution sol;
  sol.solver = SolverTag::ExactDp;
  sol.optimal = true;
  sol.sequence.cost = dp.cost;
  for (int u : dp.unit_order) sol.sequence.order.push_back(inst.internal_ids[u]);
  return sol;
}

SojaSolution solve_exact_twins(const Dag& d, int cap) {
  const SolverInstance inst = make_solver_instance(d);
  std::vector<int> to_compact(d.id_space(), -1);
  for (std::size_t i = 0; i < inst.compact_to_id.size(); ++i)
    to_compact[inst.compact_to_id[i]] = static_cast<int>(i);

  const auto classes = find_false_twins(d);
  check_cap(classes.size(), cap, "twin class");

  std::vector<std::vector<int>> units;
  std::vector<std::int64_t> mult;
  units.reserve(classes.size());
  for (const auto& members : classes) {
    std::vector<int> unit;
    unit.reserve(members.size());
    for (VertexId v : members) unit.push_back(to_compact[v]);
    units.push_back(std::move(unit));
    mult.push_back(static_cast<std::int64_t>(members.size()));
  }

  const detail::SubsetDpResult dp = detail::run_subset_dp(inst.base, units, mult);

  SojaSolution sol;
  sol.solver = SolverTag::ExactDpTwins;
  sol.optimal = true;
  sol.sequence.cost = dp.cost;
  for (int u : dp.unit_order)
    for (VertexId v : classes[u]) sol.sequence.order.push_back(v);
  return sol;
}

SojaSolution solve_brute(const Dag& d, int limit) {
  const SolverInstance inst = make_solver_instance(d);
  const std::size_t n = inst.internal_ids.size();
  if (n > static_cast<std::size_t>(std::max(limit, 0)))
    throw Error(ErrorCode::CapExceeded,
                "internal vertex count " + std::to_string(n) + " exceeds limit " +
                    std::to_string(limit));

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<int> best_perm;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  do {
    BitGraph g = inst.base;
    std::int64_t cost = 0;
    for (int i : perm) {
      const int v = inst.internal_compact[i];
      cost += g.markowitz(v);
      g.eliminate(v);
    }
    // strict improvement: the first minimum found is the lexicographically
    // smallest order, since permutations are enumerated in lex order
    if (cost < best_cost) {
      best_cost = cost;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  SojaSolution sol;
  sol.solver = SolverTag::Brute;
  sol.optimal = true;
  sol.sequence.cost = n == 0 ? 0 : best_cost;
  for (int i : best_perm) sol.sequence.order.push_back(inst.internal_ids[i]);
  return sol;
}

SojaSolution solve_greedy(const Dag& d) {
  const SolverInstance inst = make_solver_instance(d);
  const std::size_t n = inst.internal_ids.size();

  BitGraph g = inst.base;
  std::vector<std::uint8_t> done(n, 0);
  SojaSolution sol;
  sol.solver = SolverTag::Greedy;
  sol.optimal = false;
  for (std::size_t step = 0; step < n; ++step) {
    int pick = -1;
    std::int64_t pick_mu = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const std::int64_t mu = g.markowitz(inst.internal_compact[i]);
      if (mu < pick_mu) {
        pick_mu = mu;
        pick = static_cast<int>(i);
      }
    }
    done[pick] = 1;
    sol.sequence.order.push_back(inst.internal_ids[pick]);
    sol.sequence.cost += pick_mu;
    g.eliminate(inst.internal_compact[pick]);
  }
  return sol;
}

std::pair<std::int64_t, bool> verify_sequence(const Dag& d,
                                              const std::vector<VertexId>& order,
                                              std::int64_t k) {
  const auto internal = d.internal_vertices();
  std::vector<VertexId> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  if (sorted != internal) {
    // duplicate and non-internal entries surface through apply_sequence;
    // a plain shortfall is reported here
    if (sorted.size() < internal.size() &&
        std::includes(internal.begin(), internal.end(), sorted.begin(), sorted.end()) &&
        std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
      throw Error(ErrorCode::NotTotal,
                  "order covers " + std::to_string(sorted.size()) + " of " +
                      std::to_string(internal.size()) + " internal vertices");
  }
  const auto [final_graph, seq] = apply_sequence(d, order);
  (void)final_graph;
  if (seq.order.size() != internal.size())
    throw Error(ErrorCode::NotTotal, "order is not total");
  return {seq.cost, seq.cost <= k};
}

}  // namespace velim::soja
