// Benchmark harness pitting the OpenMP solver kernels against their serial
// reference implementations on random instances, checking along the way that
// both return identical results.

#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "velim/generate.hpp"
#include "velim/mec.hpp"
#include "velim/soja.hpp"

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int soja_max = 18;
  int mec_max = 18;
  int trials = 2;
  int threads = 0;
  double arc_prob = 0.25;

  CLI::App app{"serial vs OpenMP benchmark for the exact solvers"};
  app.add_option("--soja-max", soja_max, "largest internal vertex count for the SOJA DP");
  app.add_option("--mec-max", mec_max, "largest internal vertex count for the MEC scan");
  app.add_option("--trials", trials, "instances per size");
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");
  app.add_option("--arc-prob", arc_prob, "arc probability of the random DAGs");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-6s %-4s %-6s %10s %10s %8s  %s\n", "kernel", "n_i", "trial",
              "serial_s", "parallel_s", "speedup", "result");

  int failures = 0;
  for (int n = soja_max >= 14 ? 14 : soja_max; n <= soja_max; n += 2) {
    for (int trial = 0; trial < trials; ++trial) {
      const velim::Dag d = velim::gen::random_dag(
          {.terminals = n / 2, .internals = n, .arc_prob = arc_prob,
           .weighted = false, .seed = 1000 + 17u * n + trial});
      double t0 = now();
      const auto serial = velim::soja::solve_exact_serial(d, n);
      double t1 = now();
      const auto parallel = velim::soja::solve_exact(d, n);
      double t2 = now();
      const bool same = serial.sequence.cost == parallel.sequence.cost &&
                        serial.sequence.order == parallel.sequence.order;
      if (!same) ++failures;
      std::printf("%-6s %-4d %-6d %10.3f %10.3f %8.2f  cost=%lld %s\n", "soja", n,
                  trial, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
                  static_cast<long long>(parallel.sequence.cost),
                  same ? "match" : "MISMATCH");
    }
  }
  for (int n = mec_max >= 14 ? 14 : mec_max; n <= mec_max; n += 2) {
    for (int trial = 0; trial < trials; ++trial) {
      const velim::Dag d = velim::gen::random_dag(
          {.terminals = n / 2, .internals = n, .arc_prob = arc_prob,
           .weighted = false, .seed = 2000 + 17u * n + trial});
      double t0 = now();
      const auto serial = velim::mec::solve_exact_serial(d, n);
      double t1 = now();
      const auto parallel = velim::mec::solve_exact(d, n);
      double t2 = now();
      const bool same = serial.arc_count == parallel.arc_count &&
                        serial.eliminated == parallel.eliminated;
      if (!same) ++failures;
      std::printf("%-6s %-4d %-6d %10.3f %10.3f %8.2f  arcs=%lld %s\n", "mec", n,
                  trial, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
                  static_cast<long long>(parallel.arc_count),
                  same ? "match" : "MISMATCH");
    }
  }
  if (failures) std::printf("%d mismatches\n", failures);
  return failures == 0 ? 0 : 1;
}
