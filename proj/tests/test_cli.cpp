#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "zeroset/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "zeroset");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = zeroset::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("zeroset-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("constants") {
  fs::path dir = scratch("constants");
  Run r = run({"constants", "--n", "3", "--out", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("C_main = 2^(n-3) n (n-1) / alpha(n-2) = 3") != std::string::npos);
  CHECK(r.out.find("12/pi") != std::string::npos);
  std::string json = slurp(dir / "constants.json");
  CHECK(json.find("\"schema\": \"zeroset.report/1\"") != std::string::npos);
  CHECK(slurp(dir / "constants.txt") == r.out);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 1);
  CHECK(run({"constants"}).status == 1);
  CHECK(run({"constants", "--n", "1"}).status == 1);
  CHECK(run({"resultant", "--f", "x1 +", "--g", "x1"}).status == 1);
  CHECK(run({"--help"}).status == 0);
  CHECK(run({"wild", "--help"}).status == 0);
}

TEST_CASE("resultant") {
  fs::path dir = scratch("resultant");
  Run r = run({"resultant", "--f", "x1 - x2", "--g", "x1 - x3", "--out", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("= -x1 + x2") != std::string::npos);
}

TEST_CASE("gen-solution with a malformed spec file") {
  fs::path dir = scratch("gen-bad");
  fs::create_directories(dir);
  fs::path spec = dir / "bad.op";
  std::ofstream(spec) << "zeroset-operator v1\nn: 2\nN: 2\nA1: [[1, 0], [0 1]]\n";
  Run r = run({"gen-solution", "--spec", spec.string(), "--out", dir.string()});
  CHECK(r.status == 1);
  CHECK(r.err.find(spec.string() + ":4:") != std::string::npos);
}

TEST_CASE("gen-solution is deterministic") {
  fs::path dir = scratch("gen");
  fs::create_directories(dir);
  fs::path spec = dir / "cr.op";
  std::ofstream(spec) << "zeroset-operator v1\nn: 2\nN: 2\nA1: [[1, 0], [0, 1]]\nA2: [[0, -1], [1, 0]]\n";
  Run a = run({"gen-solution", "--spec", spec.string(), "--k", "3", "--seed", "7", "--out", (dir / "a").string()});
  Run b = run({"gen-solution", "--spec", spec.string(), "--k", "3", "--seed", "7", "--out", (dir / "b").string()});
  CHECK(a.status == 0);
  CHECK(a.out.find("sigma(d) phi = 0 exactly: yes") != std::string::npos);
  CHECK(slurp(dir / "a" / "gen-solution.json") == slurp(dir / "b" / "gen-solution.json"));

  Run y = run({"gen-solution", "--spec", spec.string(), "--k", "1", "--y0", "0;x2", "--out", (dir / "c").string()});
  CHECK(y.status == 0);
  CHECK(y.out.find("phi = (x1; x2)") != std::string::npos);
  CHECK(run({"gen-solution", "--spec", spec.string(), "--y0", "x1;0"}).status == 1);
  CHECK(run({"gen-solution", "--spec", spec.string(), "--y0", "0;0"}).status == 1);
}

TEST_CASE("wild and dimension") {
  fs::path dir = scratch("wild");
  Run w = run({"wild", "--set", "cantor:1/3:4", "--n", "3", "--h", "1/256", "--out", dir.string()});
  CHECK(w.status == 0);
  CHECK(fs::exists(dir / "wild.cloud.csv"));
  Run d = run({"dimension", (dir / "wild.cloud.csv").string(), "--scales", "1/4,1/8,1/16,1/32", "--out",
               dir.string()});
  CHECK(d.status == 0);
  CHECK(d.out.find("box dimension") != std::string::npos);
  CHECK(run({"wild", "--set", "cantor:1/3:4", "--n", "4"}).status == 1);
}

TEST_CASE("nodal") {
  fs::path dir = scratch("nodal");
  Run r = run({"nodal", "--family", "1:1,2:1", "--cells", "240", "--out", dir.string(), "--plot"});
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "nodal.scan.csv"));
  CHECK(fs::exists(dir / "nodal.svg"));
  CHECK(run({"nodal", "--family", "1-1"}).status == 1);
}
