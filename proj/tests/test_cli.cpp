#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lambda_bound/instance.hpp"

namespace fs = std::filesystem;
using namespace lambda_bound;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("lambda_bound_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(row);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!row.empty() && row.back() == ',') cells.push_back("");
  return cells;
}

const std::string kAppendix = LAMBDA_BOUND_DATA_DIR "/appendix_a.json";
const std::string kAppendixSolution = LAMBDA_BOUND_DATA_DIR "/appendix_a.solution.json";

}  // namespace

TEST_CASE("gen") {
  const fs::path dir = scratch("gen");
  const std::string cycle = (dir / "c.json").string();
  REQUIRE(run({"gen", "cycle", "--m", "5", "--n", "3", "--k", "80", "-o", cycle}).code == 0);
  CHECK(load_instance_file(cycle).num_edges() == 5);

  const Result a = run({"gen", "random", "--nodes", "8", "--seed", "7"});
  const Result b = run({"gen", "random", "--nodes", "8", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(load_instance(a.out).num_nodes() == 8);

  CHECK(run({"gen", "cycle", "--m", "2"}).code == 2);
  CHECK(run({"gen", "random", "--nodes", "8", "--requests", "5", "--k", "2"}).code == 2);
  CHECK(run({"gen"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve") {
  const fs::path dir = scratch("solve");
  const std::string c53 = (dir / "c53.json").string();
  REQUIRE(run({"gen", "cycle", "--m", "5", "--n", "3", "-o", c53}).code == 0);

  Result r = run({"solve", c53, "--model", "lp-r3", "--method", "benders"});
  CHECK(r.code == 0);
  CHECK(r.out == "15.000000\n");
  r = run({"solve", c53, "--model", "lp-r3"});
  CHECK(r.out == "15.000000\n");
  r = run({"solve", c53, "--model", "lp-rwap"});
  CHECK(r.code == 0);
  CHECK(r.out == "3.000000\n");

  CHECK(run({"solve", c53, "--model", "lp-rwap", "--method", "benders"}).code == 2);
  CHECK(run({"solve", c53, "--model", "lp-r4"}).code == 2);
  CHECK(run({"solve", (dir / "missing.json").string()}).code == 2);

  const std::string record = (dir / "runs.csv").string();
  const std::string log = (dir / "log.csv").string();
  REQUIRE(run({"solve", c53, "--method", "benders", "--record", record, "--log", log}).code == 0);
  REQUIRE(run({"solve", c53, "--model", "lp-r1", "--record", record}).code == 0);
  const auto rows = lines(slurp(record));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "name,V,E,D,model,method,objective,iterations,cuts,elapsed_ms,status,im_pct,gap_pct");
  auto cells = split(rows[1]);
  REQUIRE(cells.size() == 13);
  CHECK(cells[1] == "5");
  CHECK(cells[2] == "5");
  CHECK(cells[3] == "3");
  CHECK(cells[4] == "lp-r3");
  CHECK(cells[5] == "benders");
  CHECK(cells[6] == "15.000000");
  CHECK(cells[10] == "Converged");
  CHECK(cells[11].empty());
  cells = split(rows[2]);
  CHECK(cells[4] == "lp-r1");
  CHECK(cells[6] == "15.000000");
  CHECK(cells[8].empty());
  CHECK(cells[10] == "Optimal");

  const auto log_rows = lines(slurp(log));
  REQUIRE(log_rows.size() >= 2);
  CHECK(log_rows[0].starts_with("iter,master_obj"));
  CHECK(split(log_rows.back())[1] == "15.000000");
}

TEST_CASE("solve reports a failed Benders run") {
  const fs::path dir = scratch("fail");
  const std::string c = (dir / "c.json").string();
  REQUIRE(run({"gen", "cycle", "--m", "6", "--n", "2", "-o", c}).code == 0);
  const Result r = run({"solve", c, "--method", "benders", "--max-iterations", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("IterationLimit") != std::string::npos);
}

TEST_CASE("validate") {
  Result r = run({"validate", kAppendix, kAppendixSolution});
  CHECK(r.code == 0);
  CHECK(r.out == "feasible, objective 7\n");

  r = run({"validate", kAppendix, kAppendixSolution, "--lower-bound", "6.5"});
  CHECK(r.out.find("gap 7.692308%") != std::string::npos);

  r = run({"validate", kAppendix, kAppendixSolution, "--ignore-failures"});
  CHECK(r.out == "feasible, objective 4\n");

  const fs::path dir = scratch("validate");
  const std::string clash = (dir / "clash.json").string();
  std::ofstream(clash) << R"({"working": [{"path": [0, 1], "wavelength": 0},
                                          {"path": [2, 1], "wavelength": 0}],
                              "backups": [
    {"failure": 0, "assignments": [{"path": [0, 1], "wavelength": 0}, {"path": [2, 1], "wavelength": 0}]},
    {"failure": 1, "assignments": [{"path": [0, 1], "wavelength": 0}, {"path": [2, 1], "wavelength": 0}]},
    {"failure": 2, "assignments": [{"path": [0, 1], "wavelength": 0}, {"path": [2, 1], "wavelength": 0}]}]})";
  r = run({"validate", kAppendix, clash});
  CHECK(r.code == 1);
  CHECK(r.out.starts_with("infeasible"));
  CHECK(r.out.find("working-clash") != std::string::npos);

  const std::string broken = (dir / "broken.json").string();
  std::ofstream(broken) << "{\"working\": 3}";
  CHECK(run({"validate", kAppendix, broken}).code == 2);
}

TEST_CASE("bench") {
  const fs::path dir = scratch("bench");
  for (int m = 3; m <= 7; ++m) {
    const std::string p = (dir / ("cyc" + std::to_string(m) + ".json")).string();
    REQUIRE(run({"gen", "cycle", "--m", std::to_string(m), "--n", "2", "-o", p}).code == 0);
  }
  std::ofstream(dir / "cyc5.ub") << "13\n";
  std::ofstream(dir / "cyc5.solution.json") << "not an instance";

  const Result r = run({"bench", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  for (int i = 1; i <= 5; ++i) {
    const int m = i + 2;
    const auto cells = split(rows[i]);
    REQUIRE(cells.size() == 13);
    CHECK(cells[0] == "cycle_m" + std::to_string(m) + "_n2_k80");
    CHECK(std::stod(cells[6]) == doctest::Approx(2.0 * m));
    CHECK(std::stod(cells[11]) == doctest::Approx(100.0 * (m - 1)));
    if (m == 5) CHECK(std::stod(cells[12]) == doctest::Approx(30.0));
    else CHECK(cells[12].empty());
  }

  const std::string csv = (dir / "out.csv").string();
  REQUIRE(run({"bench", dir.string(), "-o", csv}).code == 0);
  CHECK(lines(slurp(csv)).size() == 6);

  const fs::path empty = scratch("bench_empty");
  const Result e = run({"bench", empty.string()});
  CHECK(e.code == 0);
  CHECK(e.out == cli::csv_header());
  CHECK(run({"bench", (empty / "nope").string()}).code == 2);
}

TEST_CASE("chain-check and oracle") {
  const fs::path dir = scratch("chain");
  const std::string c = (dir / "c.json").string();
  REQUIRE(run({"gen", "cycle", "--m", "3", "--n", "1", "--k", "1", "-o", c}).code == 0);
  Result r = run({"chain-check", c});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 12);
  CHECK(out[0].ends_with(" 3.000000"));
  CHECK(out[4].ends_with(" 3.000000"));
  CHECK(out[5].ends_with(" 1.000000"));
  CHECK(out.back() == "PASS");

  r = run({"oracle", kAppendix});
  CHECK(r.code == 0);
  CHECK(r.out == "IP_RWAP-PPP 3.000000\nIP_RWAP     3.000000\n");
  CHECK(run({"oracle", kAppendix, "--max-assignments", "0"}).code == 2);
}

TEST_CASE("export") {
  const fs::path dir = scratch("export");
  const std::string c = (dir / "c.json").string();
  REQUIRE(run({"gen", "cycle", "--m", "3", "--n", "1", "--k", "1", "-o", c}).code == 0);
  const std::string mps = (dir / "c.mps").string();
  REQUIRE(run({"export", c, "--model", "lp-r3", "--format", "mps", "-o", mps}).code == 0);
  const std::string text = slurp(mps);
  CHECK(text.starts_with("NAME"));
  CHECK(text.find("ENDATA") != std::string::npos);

  const Result lp = run({"export", c, "--model", "lp-r1"});
  CHECK(lp.code == 0);
  CHECK(lp.out == run({"export", c, "--model", "lp-r1"}).out);
  CHECK(lp.out.find("Minimize") != std::string::npos);

  CHECK(run({"export", c, "--format", "bogus"}).code == 2);
}
