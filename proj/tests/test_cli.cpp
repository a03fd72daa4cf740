#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

const std::string kCli = VARJACOBI_CLI_PATH;
const std::string kProblems = VARJACOBI_PROBLEMS_DIR;

int run(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& p) : path(p) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze certifies the bundled harmonic problem") {
  TempFile out("/tmp/vjc_analyze_out.json");
  int code = run(kCli + " analyze " + kProblems + "/harmonic.json --out " +
                 out.path);
  CHECK(code == 0);
  json doc = json::parse(slurp(out.path));
  CHECK(doc["verdict"] == "positive-definite-certified");
  CHECK(doc["problem"]["order_k"] == 1);
  CHECK(doc["options"]["seed"] == 1);
}

TEST_CASE("analyze reports conjugate points with exit code 1") {
  TempFile prob("/tmp/vjc_long_harmonic.json");
  spit(prob.path,
       R"({"order": 1, "dim": 1, "interval": [0, 10],
           "blocks": {"M00": [-2], "M11": [2]}})");
  TempFile out("/tmp/vjc_long_out.json");
  int code = run(kCli + " analyze " + prob.path + " --out " + out.path);
  CHECK(code == 1);
  json doc = json::parse(slurp(out.path));
  CHECK(doc["verdict"] == "conjugate-point-found");
  REQUIRE(doc["conjugacy"]["conjugate_points"].size() == 3);
  double t0 = doc["conjugacy"]["conjugate_points"][0]["t"].get<double>();
  CHECK(std::abs(t0 - 3.14159265358979) <= 1e-6);
  CHECK(doc["conjugacy"]["conjugate_points"][0]["type"] == "sign-change");
}

TEST_CASE("analyze flags tangential degeneracy with exit code 2") {
  TempFile prob("/tmp/vjc_tangential.json");
  spit(prob.path,
       R"({"order": 1, "dim": 2, "interval": [0, 4],
           "blocks": {"M00": [[-2, 0, 0, -2]], "M11": [[2, 0, 0, 2]]}})");
  TempFile out("/tmp/vjc_tangential_out.json");
  int code = run(kCli + " analyze " + prob.path + " --out " + out.path);
  CHECK(code == 2);
  json doc = json::parse(slurp(out.path));
  CHECK(doc["verdict"] == "inconclusive");
  CHECK(doc["conjugacy"]["conjugate_points"][0]["type"] == "tangential");
}

TEST_CASE("verify passes on sound input and fails on injected faults") {
  TempFile log("/tmp/vjc_verify_log.txt");
  int code = run(kCli + " verify " + kProblems + "/quartic.json > " + log.path);
  CHECK(code == 0);
  std::string text = slurp(log.path);
  CHECK(text.find("[ok] ") != std::string::npos);
  CHECK(text.find("all checks passed") != std::string::npos);
  CHECK(text.find("[FAIL]") == std::string::npos);

  // Inject on harmonic: its frame rows move everywhere, so a perturbed
  // entry breaks the symplectic residual. (The quartic flow keeps row kn
  // constant, which hides a (0,0) fault from that particular check.)
  int bad = run(kCli + " verify " + kProblems +
                "/harmonic.json --inject-frame-error 2048:1e-6 > " + log.path);
  CHECK(bad == 1);
  text = slurp(log.path);
  CHECK(text.find("[FAIL]") != std::string::npos);
  CHECK(text.find("CHECKS FAILED") != std::string::npos);
}

TEST_CASE("rank writes the profile csv") {
  TempFile out("/tmp/vjc_rank.csv");
  int code = run(kCli + " rank " + kProblems + "/coupled.json --out " +
                 out.path);
  CHECK(code == 0);
  std::string text = slurp(out.path);
  CHECK(text.rfind("t,rank,", 0) == 0);
  CHECK(text.find("\n0,2,") != std::string::npos);
}

TEST_CASE("analyze csv prefix writes both files") {
  TempFile w("/tmp/vjc_pair_wronskian.csv");
  TempFile p("/tmp/vjc_pair_profile.csv");
  TempFile out("/tmp/vjc_pair_out.json");
  int code = run(kCli + " analyze " + kProblems + "/harmonic.json --csv " +
                 "/tmp/vjc_pair --out " + out.path);
  CHECK(code == 0);
  CHECK(slurp(w.path).rfind("t,w\n", 0) == 0);
  CHECK(slurp(p.path).rfind("t,rank,", 0) == 0);
}

TEST_CASE("validation failures exit with code 3") {
  TempFile prob("/tmp/vjc_indefinite.json");
  spit(prob.path,
       R"({"order": 1, "dim": 1, "interval": [0, 1],
           "blocks": {"M11": [2, -4]}})");
  TempFile err("/tmp/vjc_indefinite_err.txt");
  int code = run(kCli + " analyze " + prob.path + " 2> " + err.path +
                 " > /dev/null");
  CHECK(code == 3);
  CHECK(slurp(err.path).find("validation failed") != std::string::npos);
}

TEST_CASE("parse failures exit with code 3") {
  TempFile prob("/tmp/vjc_malformed.json");
  spit(prob.path, "{ not json");
  CHECK(run(kCli + " analyze " + prob.path + " 2> /dev/null > /dev/null") ==
        3);
  CHECK(run(kCli + " analyze /nonexistent.json 2> /dev/null > /dev/null") ==
        3);
}

TEST_CASE("help exits cleanly and a missing subcommand does not") {
  CHECK(run(kCli + " --help > /dev/null") == 0);
  CHECK(run(kCli + " 2> /dev/null > /dev/null") != 0);
}

TEST_CASE("analyze output is deterministic") {
  TempFile out1("/tmp/vjc_det1.json");
  TempFile out2("/tmp/vjc_det2.json");
  std::string base = kCli + " analyze " + kProblems + "/coupled.json --out ";
  REQUIRE(run(base + out1.path) == 0);
  REQUIRE(run(base + out2.path) == 0);
  std::string first = slurp(out1.path);
  CHECK(!first.empty());
  CHECK(first == slurp(out2.path));
}

TEST_CASE("step option is echoed in the report") {
  TempFile out("/tmp/vjc_step.json");
  int code = run(kCli + " analyze " + kProblems +
                 "/harmonic.json --step 0.01 --seed 9 --out " + out.path);
  CHECK(code == 0);
  json doc = json::parse(slurp(out.path));
  CHECK(doc["options"]["step"].get<double>() == doctest::Approx(0.01));
  CHECK(doc["options"]["seed"] == 9);
}

}  // TEST_SUITE
