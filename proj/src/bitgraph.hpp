#pragma once

// Solver-internal graph representation. Adjacency rows are bitsets over a
// compacted vertex range so eliminations reduce to word-wise ORs. Not part
// of the public surface; the public Dag stays persistent.

#include <bit>
#include <cstdint>
#include <vector>

#include "velim/dag.hpp"

namespace velim::detail {

struct BitGraph {
  int n = 0;      // compact vertex count
  int words = 0;  // 64-bit words per adjacency row
  std::vector<std::uint64_t> in, out;  // n rows each

  static BitGraph empty(int n) {
    BitGraph g;
    g.n = n;
    g.words = (n + 63) / 64;
    g.in.assign(static_cast<std::size_t>(g.n) * g.words, 0);
    g.out.assign(static_cast<std::size_t>(g.n) * g.words, 0);
    return g;
  }

  std::uint64_t* in_row(int v) { return in.data() + static_cast<std::size_t>(v) * words; }
  std::uint64_t* out_row(int v) { return out.data() + static_cast<std::size_t>(v) * words; }
  const std::uint64_t* in_row(int v) const { return in.data() + static_cast<std::size_t>(v) * words; }
  const std::uint64_t* out_row(int v) const { return out.data() + static_cast<std::size_t>(v) * words; }

  void add_arc(int tail, int head) {
    out_row(tail)[head >> 6] |= std::uint64_t(1) << (head & 63);
    in_row(head)[tail >> 6] |= std::uint64_t(1) << (tail & 63);
  }

  int in_degree(int v) const { return row_popcount(in_row(v)); }
  int out_degree(int v) const { return row_popcount(out_row(v)); }

  std::int64_t markowitz(int v) const {
    return static_cast<std::int64_t>(in_degree(v)) * out_degree(v);
  }

  std::int64_t arc_count() const {
    std::int64_t total = 0;
    for (const std::uint64_t w : out) total += std::popcount(w);
    return total;
  }

  // Removes v; every in-neighbor gains v's out-neighbors and vice versa.
  // A vertex cannot be on both sides (that would close a cycle), so no
  // self-loops can appear.
  void eliminate(int v) {
    const int vw = v >> 6;
    const std::uint64_t vbit = std::uint64_t(1) << (v & 63);
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = in_row(v)[w];
      while (bits) {
        const int x = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        std::uint64_t* row = out_row(x);
        for (int k = 0; k < words; ++k) row[k] |= out_row(v)[k];
        row[vw] &= ~vbit;
      }
    }
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = out_row(v)[w];
      while (bits) {
        const int y = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        std::uint64_t* row = in_row(y);
        for (int k = 0; k < words; ++k) row[k] |= in_row(v)[k];
        row[vw] &= ~vbit;
      }
    }
    for (int k = 0; k < words; ++k) {
      in_row(v)[k] = 0;
      out_row(v)[k] = 0;
    }
  }

 private:
  int row_popcount(const std::uint64_t* row) const {
    int total = 0;
    for (int k = 0; k < words; ++k) total += std::popcount(row[k]);
    return total;
  }
};

/// Compact solver view of a Dag. Mask bit i of a solver subset refers to
/// internal_ids[i] (ascending original ids, so bit order matches id order).
struct SolverInstance {
  BitGraph base;
  std::vector<VertexId> compact_to_id;
  std::vector<int> internal_compact;    // compact index per mask bit
  std::vector<VertexId> internal_ids;   // original id per mask bit
};

inline SolverInstance make_solver_instance(const Dag& d) {
  SolverInstance inst;
  inst.compact_to_id = d.vertex_ids();
  const int n = static_cast<int>(inst.compact_to_id.size());
  std::vector<int> to_compact(d.id_space(), -1);
  for (int i = 0; i < n; ++i) to_compact[inst.compact_to_id[i]] = i;

  inst.base = BitGraph::empty(n);
  for (int i = 0; i < n; ++i)
    for (VertexId head : d.out_neighbors(inst.compact_to_id[i]))
      inst.base.add_arc(i, to_compact[head]);

  for (VertexId v : d.internal_vertices()) {
    inst.internal_ids.push_back(v);
    inst.internal_compact.push_back(to_compact[v]);
  }
  return inst;
}

/// Serves the graph obtained by eliminating a given subset of units (a unit
/// is a group of compact vertex ids eliminated together). Reuses shared
/// elimination prefixes between consecutive masks: masks are chained by
/// eliminating set bits from the highest down, so masks sharing high bits
/// share graphs. Falls back to rebuilding from the base when nothing is
/// shared.
class EliminationWalker {
 public:
  EliminationWalker(const BitGraph& base, const std::vector<std::vector<int>>& units)
      : units_(&units) {
    stack_.reserve(units.size() + 1);
    stack_.push_back(base);
  }

  const BitGraph& advance(std::uint32_t mask) {
    int bits[32];
    int nb = 0;
    for (std::uint32_t m = mask; m;) {
      const int b = 31 - std::countl_zero(m);
      bits[nb++] = b;
      m &= ~(std::uint32_t(1) << b);
    }
    std::size_t keep = 0;
    while (keep < chain_.size() && static_cast<int>(keep) < nb &&
           chain_[keep] == bits[keep])
      ++keep;
    chain_.resize(keep);
    stack_.resize(keep + 1);
    for (int i = static_cast<int>(keep); i < nb; ++i) {
      stack_.push_back(stack_.back());
      for (int v : (*units_)[bits[i]]) stack_.back().eliminate(v);
      chain_.push_back(bits[i]);
    }
    return stack_.back();
  }

 private:
  const std::vector<std::vector<int>>* units_;
  std::vector<BitGraph> stack_;
  std::vector<int> chain_;  // unit indices, highest first
};

}  // namespace velim::detail
