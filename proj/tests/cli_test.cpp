// End-to-end checks of the command-line surface: exit-code protocol
// (0 yes, 3 no, 2 error), record replayability, and format round-trips.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "velim-cli-test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const auto path = work_dir() / name;
  std::ofstream file(path, std::ios::binary);
  file << content;
  return path;
}

RunResult run(const std::string& args) {
  const auto out_path = work_dir() / "stdout.txt";
  const std::string cmd = std::string(VELIM_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " +
                          (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream file(out_path, std::ios::binary);
  std::ostringstream buf;
  buf << file.rdbuf();
  result.out = buf.str();
  return result;
}

const std::string kPathInstance =
    R"({"vertices":[{"id":"a","kind":"terminal"},{"id":"b","kind":"internal"},)"
    R"({"id":"c","kind":"terminal"}],"arcs":[["a","b"],["b","c"]]})";

const std::string kP3 = R"({"vertices":["u","v","w"],"edges":[["u","v"],["v","w"]]})";

}  // namespace

TEST_CASE("decide answers through exit codes on the 3-path cover instance") {
  const auto p3 = write_file("p3.json", kP3);
  const auto instance = (work_dir() / "cover.json").string();
  const auto reduced = run("reduce vc " + p3.string() + " --k 1 -o " + instance);
  REQUIRE(reduced.exit_code == 0);
  const auto record = nlohmann::json::parse(reduced.out);
  CHECK(record.at("k_prime") == 25);
  CHECK(record.at("vertices") == 15);
  CHECK(record.at("arcs") == 26);

  CHECK(run("decide soja " + instance + " --k 25").exit_code == 0);
  CHECK(run("decide soja " + instance + " --k 24").exit_code == 3);
  // the instance file carries k' = 25 in its metadata
  CHECK(run("decide soja " + instance).exit_code == 0);
}

TEST_CASE("solve records replay through verify") {
  const auto p3 = write_file("p3.json", kP3);
  const auto instance = (work_dir() / "cover.json").string();
  REQUIRE(run("reduce vc " + p3.string() + " --k 1 -o " + instance).exit_code == 0);

  const auto solved = run("solve soja " + instance + " --exact");
  REQUIRE(solved.exit_code == 0);
  const auto record = nlohmann::json::parse(solved.out);
  CHECK(record.at("cost") == 25);
  CHECK(record.at("optimal") == true);

  // the result record doubles as a certificate
  const auto cert = write_file("cert.json", solved.out);
  CHECK(run("verify soja " + instance + " --certificate " + cert.string() +
            " --k 25")
            .exit_code == 0);
  CHECK(run("verify soja " + instance + " --certificate " + cert.string() +
            " --k 24")
            .exit_code == 3);
}

TEST_CASE("eliminate emits the contracted graph as canonical JSON") {
  const auto path = write_file("path.json", kPathInstance);
  const auto result = run("eliminate " + path.string() + " --seq b");
  REQUIRE(result.exit_code == 0);
  const auto graph = nlohmann::json::parse(result.out);
  CHECK(graph.at("arcs") == nlohmann::json::parse(R"([["a","c"]])"));

  const auto by_set = run("eliminate " + path.string() + " --set b");
  CHECK(by_set.out == result.out);

  CHECK(run("eliminate " + path.string() + " --seq b --set b").exit_code == 2);
  CHECK(run("eliminate " + path.string() + " --seq zzz").exit_code == 2);
}

TEST_CASE("mec solve and verify work end to end") {
  const auto c5 = write_file(
      "c5.json",
      R"({"vertices":["a","b","c","d","e"],)"
      R"("edges":[["a","b"],["b","c"],["c","d"],["d","e"],["e","a"]]})");
  const auto instance = (work_dir() / "mec.json").string();
  const auto reduced = run("reduce is " + c5.string() + " --k 2 -o " + instance);
  REQUIRE(reduced.exit_code == 0);
  const auto record = nlohmann::json::parse(reduced.out);
  CHECK(record.at("arcs") == 203);
  CHECK(record.at("k_prime") == 201);

  const auto solved = run("solve mec " + instance);
  REQUIRE(solved.exit_code == 0);
  const auto sol = nlohmann::json::parse(solved.out);
  CHECK(sol.at("arc_count") == 201);

  const auto cert = write_file("mec_cert.json", solved.out);
  CHECK(run("verify mec " + instance + " --certificate " + cert.string() +
            " --k 201")
            .exit_code == 0);
  CHECK(run("decide mec " + instance + " --k 200").exit_code == 3);
}

TEST_CASE("reduce is refuses invalid instances unless overridden") {
  const auto tri = write_file(
      "triangle.json",
      R"({"vertices":["x","y","z"],"edges":[["x","y"],["x","z"],["y","z"]]})");
  CHECK(run("reduce is " + tri.string() + " --k 1").exit_code == 2);
  CHECK(run("reduce is " + tri.string() + " --k 1 --allow-invalid").exit_code == 0);
  CHECK(run("validate is-instance " + tri.string()).exit_code == 3);

  const auto c5 = write_file(
      "c5.json",
      R"({"vertices":["a","b","c","d","e"],)"
      R"("edges":[["a","b"],["b","c"],["c","d"],["d","e"],["e","a"]]})");
  CHECK(run("validate is-instance " + c5.string()).exit_code == 0);
}

TEST_CASE("twins subcommand lists classes") {
  const auto twin = write_file(
      "twin.json",
      R"({"vertices":[{"id":"a","kind":"terminal"},{"id":"b","kind":"internal"},)"
      R"({"id":"c","kind":"internal"},{"id":"d","kind":"terminal"}],)"
      R"("arcs":[["a","b"],["a","c"],["b","d"],["c","d"]]})");
  const auto result = run("twins " + twin.string());
  REQUIRE(result.exit_code == 0);
  const auto record = nlohmann::json::parse(result.out);
  CHECK(record.at("classes") == nlohmann::json::parse(R"([["b","c"]])"));
}

TEST_CASE("decide agrees with solve plus threshold comparison") {
  const auto p3 = write_file("p3.json", kP3);
  const auto instance = (work_dir() / "cover.json").string();
  REQUIRE(run("reduce vc " + p3.string() + " --k 1 -o " + instance).exit_code == 0);

  const auto solved = run("solve soja " + instance);
  REQUIRE(solved.exit_code == 0);
  const std::int64_t cost = nlohmann::json::parse(solved.out).at("cost");
  for (std::int64_t k : {cost - 2, cost - 1, cost, cost + 1, cost + 10}) {
    const auto decision = run("decide soja " + instance + " --k " + std::to_string(k));
    CHECK(decision.exit_code == (cost <= k ? 0 : 3));
    const auto record = nlohmann::json::parse(decision.out);
    CHECK(record.at("value") == cost);
    CHECK(record.at("answer") == (cost <= k ? "yes" : "no"));
  }
}

TEST_CASE("solver records do not depend on the thread count") {
  const auto p3 = write_file("p3.json", kP3);
  const auto instance = (work_dir() / "cover.json").string();
  REQUIRE(run("reduce vc " + p3.string() + " --k 1 -o " + instance).exit_code == 0);

  nlohmann::json reference;
  for (int threads : {1, 2, 4}) {
    const auto result =
        run("solve soja " + instance + " --threads " + std::to_string(threads));
    REQUIRE(result.exit_code == 0);
    auto record = nlohmann::json::parse(result.out);
    record.erase("wall_s");
    if (reference.is_null()) reference = record;
    CHECK(record == reference);
  }
}

TEST_CASE("errors land on exit code 2 with a diagnostic") {
  CHECK(run("solve soja /nonexistent.json").exit_code == 2);
  const auto bad = write_file("bad.json", "{broken");
  CHECK(run("solve soja " + bad.string() + " --exact").exit_code == 2);
  CHECK(run("decide soja " + bad.string() + " --k 1").exit_code == 2);
  const auto path = write_file("path.json", kPathInstance);
  CHECK(run("decide soja " + path.string()).exit_code == 2);  // no k anywhere
  CHECK(run("decide soja " + path.string() + " --k 1 --cap 0").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("dot input is accepted end to end") {
  const auto dot = write_file("path.dot",
                              "digraph {\n"
                              "  a [kind=terminal];\n"
                              "  b [kind=internal];\n"
                              "  c [kind=terminal];\n"
                              "  a -> b;\n"
                              "  b -> c;\n"
                              "}\n");
  const auto result = run("solve soja " + dot.string() + " --brute");
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.out).at("cost") == 1);
}
