// velim: vertex elimination on computational DAGs from the command line.
// Exit codes: 0 success / yes, 3 no / rejected, 2 any error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "velim/dag.hpp"
#include "velim/generate.hpp"
#include "velim/io.hpp"
#include "velim/mec.hpp"
#include "velim/reductions.hpp"
#include "velim/soja.hpp"

namespace {

using nlohmann::ordered_json;
using velim::Dag;
using velim::Error;
using velim::ErrorCode;
using velim::VertexId;

constexpr int kExitYes = 0;
constexpr int kExitError = 2;
constexpr int kExitNo = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !csv.empty()) parts.push_back(cur);
  return parts;
}

std::vector<VertexId> resolve_names(const Dag& d, const std::vector<std::string>& names) {
  std::vector<VertexId> ids;
  ids.reserve(names.size());
  for (const auto& name : names) ids.push_back(velim::io::vertex_by_name(d, name));
  return ids;
}

ordered_json labels_of(const Dag& d, const std::vector<VertexId>& ids) {
  ordered_json arr = ordered_json::array();
  for (VertexId v : ids) arr.push_back(velim::io::vertex_label(d, v));
  return arr;
}

void apply_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

std::int64_t require_k(const CLI::Option* opt, std::int64_t flag_value,
                       const velim::io::Metadata& meta) {
  if (opt->count() > 0) return flag_value;
  if (meta.k) return *meta.k;
  throw Error(ErrorCode::ValidationError, "no --k given and the instance has none");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// shared option bundle for the file-driven subcommands
struct Args {
  std::string file;
  std::string certificate;
  std::string output;
  std::string seq_csv, set_csv, order_csv;
  std::int64_t k = 0;
  int cap = -1;
  int threads = 0;
  bool allow_invalid = false;
  bool use_exact = false, use_greedy = false, use_brute = false, use_twins = false;
};

int run_solve_soja(const Args& args) {
  apply_threads(args.threads);
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  Stopwatch timer;
  velim::soja::SojaSolution sol;
  if (args.use_greedy) {
    sol = velim::soja::solve_greedy(parsed.dag);
  } else if (args.use_brute) {
    sol = velim::soja::solve_brute(
        parsed.dag, args.cap >= 0 ? args.cap : velim::soja::kDefaultBruteLimit);
  } else if (args.use_twins) {
    sol = velim::soja::solve_exact_twins(
        parsed.dag, args.cap >= 0 ? args.cap : velim::soja::kDefaultExactCap);
  } else {
    sol = velim::soja::solve_exact(
        parsed.dag, args.cap >= 0 ? args.cap : velim::soja::kDefaultExactCap);
  }
  ordered_json record{{"record", "result"},
                      {"problem", "soja"},
                      {"solver", velim::soja::solver_tag_name(sol.solver)},
                      {"cost", sol.sequence.cost},
                      {"sequence", labels_of(parsed.dag, sol.sequence.order)},
                      {"optimal", sol.optimal},
                      {"wall_s", timer.seconds()},
                      {"digest", velim::io::instance_digest(parsed.dag)}};
  std::cout << record.dump() << "\n";
  return kExitYes;
}

int run_solve_mec(const Args& args) {
  apply_threads(args.threads);
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  Stopwatch timer;
  const auto sol = velim::mec::solve_exact(
      parsed.dag, args.cap >= 0 ? args.cap : velim::mec::kDefaultExactCap);
  ordered_json record{{"record", "result"},
                      {"problem", "mec"},
                      {"solver", "exact-subset"},
                      {"arc_count", sol.arc_count},
                      {"eliminated", labels_of(parsed.dag, sol.eliminated)},
                      {"minimal", sol.minimal},
                      {"wall_s", timer.seconds()},
                      {"digest", velim::io::instance_digest(parsed.dag)}};
  std::cout << record.dump() << "\n";
  return kExitYes;
}

int run_decide(const std::string& problem, const Args& args, const CLI::Option* k_opt) {
  apply_threads(args.threads);
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  const std::int64_t k = require_k(k_opt, args.k, parsed.meta);
  std::int64_t value = 0;
  if (problem == "soja") {
    value = velim::soja::solve_exact(
                parsed.dag, args.cap >= 0 ? args.cap : velim::soja::kDefaultExactCap)
                .sequence.cost;
  } else {
    value = velim::mec::solve_exact(
                parsed.dag, args.cap >= 0 ? args.cap : velim::mec::kDefaultExactCap)
                .arc_count;
  }
  const bool yes = value <= k;
  ordered_json record{{"record", "decision"}, {"problem", problem},
                      {"k", k},               {"value", value},
                      {"answer", yes ? "yes" : "no"},
                      {"digest", velim::io::instance_digest(parsed.dag)}};
  std::cout << record.dump() << "\n";
  return yes ? kExitYes : kExitNo;
}

std::vector<std::string> certificate_names(const std::string& path,
                                           std::initializer_list<const char*> keys) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("certificate: ") + e.what());
  }
  for (const char* key : keys) {
    if (doc.is_object() && doc.contains(key) && doc.at(key).is_array()) {
      std::vector<std::string> names;
      for (const auto& entry : doc.at(key)) names.push_back(entry.get<std::string>());
      return names;
    }
  }
  throw Error(ErrorCode::ParseError, "certificate has no usable vertex list");
}

int run_verify(const std::string& problem, const Args& args, const CLI::Option* k_opt) {
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  const std::int64_t k = require_k(k_opt, args.k, parsed.meta);
  std::int64_t value = 0;
  bool accepted = false;
  std::vector<VertexId> ids;
  if (problem == "soja") {
    ids = resolve_names(parsed.dag,
                        certificate_names(args.certificate, {"sequence", "order"}));
    std::tie(value, accepted) = velim::soja::verify_sequence(parsed.dag, ids, k);
  } else {
    ids = resolve_names(parsed.dag,
                        certificate_names(args.certificate, {"eliminated", "set"}));
    std::tie(value, accepted) = velim::mec::verify_mec(parsed.dag, ids, k);
  }
  ordered_json record{{"record", "verification"},
                      {"problem", problem},
                      {"k", k},
                      {problem == "soja" ? "cost" : "arc_count", value},
                      {"certificate", labels_of(parsed.dag, ids)},
                      {"accepted", accepted},
                      {"digest", velim::io::instance_digest(parsed.dag)}};
  std::cout << record.dump() << "\n";
  return accepted ? kExitYes : kExitNo;
}

int run_eliminate(const Args& args) {
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  if (args.seq_csv.empty() == args.set_csv.empty())
    throw Error(ErrorCode::ValidationError, "pass exactly one of --seq and --set");
  Dag result;
  if (!args.seq_csv.empty()) {
    const auto ids = resolve_names(parsed.dag, split_csv(args.seq_csv));
    result = velim::apply_sequence(parsed.dag, ids).first;
  } else {
    const auto ids = resolve_names(parsed.dag, split_csv(args.set_csv));
    result = velim::eliminate_set(parsed.dag, ids);
  }
  std::cout << velim::io::serialize_instance(result) << "\n";
  return kExitYes;
}

int run_reduce(const std::string& kind, const Args& args, const CLI::Option* k_opt) {
  const auto parsed = velim::io::parse_undirected(slurp(args.file));
  const auto& graph = parsed.graph;
  std::int64_t k = 0;
  if (k_opt->count() > 0) k = args.k;
  else if (parsed.meta.k) k = *parsed.meta.k;
  else throw Error(ErrorCode::ValidationError, "no --k given and the instance has none");

  velim::reductions::ReductionOutput out;
  std::string problem;
  if (kind == "vc") {
    out = velim::reductions::reduce_vc(graph, static_cast<int>(k));
    problem = "soja";
  } else {
    std::vector<int> order(graph.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    if (!args.order_csv.empty()) {
      const auto names = split_csv(args.order_csv);
      if (static_cast<int>(names.size()) != graph.vertex_count())
        throw Error(ErrorCode::ValidationError, "--order must list every vertex once");
      for (std::size_t i = 0; i < names.size(); ++i) {
        int id = -1;
        for (int v = 0; v < graph.vertex_count(); ++v)
          if (graph.name(v) == names[i]) id = v;
        if (id < 0)
          throw Error(ErrorCode::UnknownVertex, "no vertex named '" + names[i] + "'");
        order[i] = id;
      }
    }
    out = velim::reductions::reduce_is(graph, static_cast<int>(k), order,
                                       args.allow_invalid);
    problem = "mec";
  }

  velim::io::Metadata meta;
  meta.problem = problem;
  meta.k = out.k_prime;
  const std::string instance = velim::io::serialize_instance(out.dag, meta);

  ordered_json mapping = ordered_json::object();
  for (const auto& [entity, ids] : out.mapping)
    mapping[entity] = labels_of(out.dag, ids);

  ordered_json record{{"record", "reduction"},
                      {"kind", kind},
                      {"problem", problem},
                      {"k", k},
                      {"k_prime", out.k_prime},
                      {"vertices", static_cast<std::int64_t>(out.dag.vertex_count())},
                      {"arcs", out.dag.arc_count()},
                      {"digest", velim::io::instance_digest(out.dag)},
                      {"mapping", mapping}};
  if (args.output.empty()) {
    record["instance"] = ordered_json::parse(instance);
  } else {
    std::ofstream file(args.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::ValidationError, "cannot write '" + args.output + "'");
    file << instance << "\n";
    record["path"] = args.output;
  }
  std::cout << record.dump() << "\n";
  return kExitYes;
}

int run_twins(const Args& args) {
  const auto parsed = velim::io::parse_instance(slurp(args.file));
  ordered_json classes = ordered_json::array();
  for (const auto& members : velim::find_false_twins(parsed.dag))
    classes.push_back(labels_of(parsed.dag, members));
  ordered_json record{{"record", "twins"}, {"classes", classes},
                      {"digest", velim::io::instance_digest(parsed.dag)}};
  std::cout << record.dump() << "\n";
  return kExitYes;
}

int run_validate_is(const Args& args) {
  const auto parsed = velim::io::parse_undirected(slurp(args.file));
  const auto report = velim::reductions::validate_is_instance(parsed.graph);
  auto names_of = [&](const std::vector<int>& ids) {
    ordered_json arr = ordered_json::array();
    for (int v : ids) arr.push_back(parsed.graph.name(v));
    return arr;
  };
  ordered_json record{{"record", "is-validation"},
                      {"ok", report.ok()},
                      {"degree_ok", report.degree_ok},
                      {"degree_witness", names_of(report.degree_witness)},
                      {"girth_ok", report.girth_ok},
                      {"short_cycle", names_of(report.short_cycle)},
                      {"degeneracy_ok", report.degeneracy_ok},
                      {"core_witness", names_of(report.core_witness)}};
  std::cout << record.dump() << "\n";
  return report.ok() ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex elimination on computational DAGs: solvers, verifiers and "
               "reduction-based instance generators"};
  app.require_subcommand(1);
  Args args;
  int rc = kExitYes;

  // solve soja|mec
  auto* solve = app.add_subcommand("solve", "run a solver and print a result record");
  solve->require_subcommand(1);
  auto* solve_soja = solve->add_subcommand("soja", "minimum-cost total elimination order");
  solve_soja->add_option("file", args.file, "instance file")->required();
  auto* exact_flag = solve_soja->add_flag("--exact", args.use_exact, "subset DP (default)");
  auto* greedy_flag = solve_soja->add_flag("--greedy", args.use_greedy, "Markowitz greedy");
  auto* brute_flag = solve_soja->add_flag("--brute", args.use_brute, "all permutations");
  auto* twins_flag = solve_soja->add_flag("--twins", args.use_twins, "DP over twin classes");
  exact_flag->excludes(greedy_flag)->excludes(brute_flag)->excludes(twins_flag);
  greedy_flag->excludes(brute_flag)->excludes(twins_flag);
  brute_flag->excludes(twins_flag);
  solve_soja->add_option("--cap", args.cap, "size cap for the chosen solver");
  solve_soja->add_option("--threads", args.threads, "OpenMP thread count");
  solve_soja->callback([&] { rc = run_solve_soja(args); });

  auto* solve_mec = solve->add_subcommand("mec", "minimum remaining arc count");
  solve_mec->add_option("file", args.file, "instance file")->required();
  solve_mec->add_option("--cap", args.cap, "internal vertex cap");
  solve_mec->add_option("--threads", args.threads, "OpenMP thread count");
  solve_mec->callback([&] { rc = run_solve_mec(args); });

  // decide soja|mec
  auto* decide = app.add_subcommand("decide", "answer the threshold decision problem");
  decide->require_subcommand(1);
  for (const char* problem : {"soja", "mec"}) {
    auto* cmd = decide->add_subcommand(problem);
    cmd->add_option("file", args.file, "instance file")->required();
    auto* k_opt = cmd->add_option("--k", args.k, "threshold");
    cmd->add_option("--cap", args.cap, "internal vertex cap");
    cmd->add_option("--threads", args.threads, "OpenMP thread count");
    cmd->callback([&, problem, k_opt] { rc = run_decide(problem, args, k_opt); });
  }

  // verify soja|mec
  auto* verify = app.add_subcommand("verify", "replay a certificate against a threshold");
  verify->require_subcommand(1);
  for (const char* problem : {"soja", "mec"}) {
    auto* cmd = verify->add_subcommand(problem);
    cmd->add_option("file", args.file, "instance file")->required();
    cmd->add_option("--certificate", args.certificate, "certificate file")->required();
    auto* k_opt = cmd->add_option("--k", args.k, "threshold");
    cmd->callback([&, problem, k_opt] { rc = run_verify(problem, args, k_opt); });
  }

  // eliminate
  auto* elim = app.add_subcommand("eliminate", "apply an order or set and emit the graph");
  elim->add_option("file", args.file, "instance file")->required();
  elim->add_option("--seq", args.seq_csv, "comma-separated vertex names, in order");
  elim->add_option("--set", args.set_csv, "comma-separated vertex names, as a set");
  elim->callback([&] { rc = run_eliminate(args); });

  // reduce vc|is
  auto* reduce = app.add_subcommand("reduce", "generate a solver instance from an undirected graph");
  reduce->require_subcommand(1);
  auto* reduce_vc = reduce->add_subcommand("vc", "vertex cover threshold instance");
  reduce_vc->add_option("file", args.file, "undirected graph file")->required();
  auto* vc_k = reduce_vc->add_option("--k", args.k, "cover size bound");
  reduce_vc->add_option("-o,--output", args.output, "write the instance file here");
  reduce_vc->callback([&, vc_k] { rc = run_reduce("vc", args, vc_k); });
  auto* reduce_is = reduce->add_subcommand("is", "independent set threshold instance");
  reduce_is->add_option("file", args.file, "undirected graph file")->required();
  auto* is_k = reduce_is->add_option("--k", args.k, "independent set size bound");
  reduce_is->add_option("--order", args.order_csv, "vertex order (names, comma-separated)");
  reduce_is->add_flag("--allow-invalid", args.allow_invalid,
                      "build even if the instance fails validation");
  reduce_is->add_option("-o,--output", args.output, "write the instance file here");
  reduce_is->callback([&, is_k] { rc = run_reduce("is", args, is_k); });

  // twins
  auto* twins = app.add_subcommand("twins", "print false-twin classes");
  twins->add_option("file", args.file, "instance file")->required();
  twins->callback([&] { rc = run_twins(args); });

  // validate is-instance
  auto* validate = app.add_subcommand("validate", "check source-instance properties");
  validate->require_subcommand(1);
  auto* validate_is = validate->add_subcommand("is-instance",
                                               "degree range, girth and degeneracy");
  validate_is->add_option("file", args.file, "undirected graph file")->required();
  validate_is->callback([&] { rc = run_validate_is(args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "velim: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "velim: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
