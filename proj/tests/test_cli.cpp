#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("TDICKE_CLI");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path workdir() {
  const fs::path d = fs::temp_directory_path() / "tdicke_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("sweep smoke run and CSV schema") {
  const fs::path out = workdir() / "smoke.csv";
  CHECK(run("sweep --x-count 3 --y-count 1 --y-min 0.5 --y-max 0.5 --output " +
            out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("x,y,lambda,z,f,gap,entropy,gamma,phase,divergent\n") != std::string::npos);
  // 3 data rows
  int rows = 0;
  std::istringstream ss(text);
  std::string line;
  bool past_header = false;
  while (std::getline(ss, line)) {
    if (line.rfind("x,y,", 0) == 0) { past_header = true; continue; }
    if (past_header && !line.empty()) ++rows;
  }
  CHECK(rows == 3);
  CHECK(text.find("inf") == std::string::npos);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(fs::exists(out.string() + ".manifest"));
}

TEST_CASE("unrequested quantities stay empty") {
  const fs::path out = workdir() / "zonly.csv";
  CHECK(run("sweep --x-count 1 --y-count 1 --y-min 2 --y-max 2 --x-min 0 --x-max 0 "
            "--quantities z,phase --output " + out.string()) == 0);
  const std::string text = slurp(out);
  std::istringstream ss(text);
  std::string line, data;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#' && line.rfind("x,y,", 0) != 0) data = line;
  // x,y,lambda,z filled; f,gap,entropy,gamma empty; phase filled; divergent empty
  CHECK(data.find(",,,,") != std::string::npos);
  CHECK(data.find("superradiant,") != std::string::npos);
}

TEST_CASE("determinism and manifest rerun") {
  const fs::path a = workdir() / "det_a.csv";
  const fs::path b = workdir() / "det_b.csv";
  const std::string grid = "sweep --x-count 4 --y-count 4 --lambda 0.5,2 ";
  CHECK(run(grid + "--output " + a.string()) == 0);
  CHECK(run(grid + "--output " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  // rerun from the sidecar manifest alone
  const fs::path c = workdir() / "det_c.csv";
  CHECK(run("sweep --config " + a.string() + ".manifest --output " + c.string()) == 0);
  CHECK(slurp(a) == slurp(c));
  // threading must not change the bytes
  const fs::path d = workdir() / "det_d.csv";
  CHECK(run(grid + "--threads 4 --output " + d.string()) == 0);
  CHECK(slurp(a) == slurp(d));
}

TEST_CASE("boundary trace output") {
  const fs::path out = workdir() / "boundary.json";
  CHECK(run("boundary --count 30 --x-max 0.8 --output " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"tricritical\"") != std::string::npos);
  CHECK(text.find("\"second_order\"") != std::string::npos);
  CHECK(text.find("\"first_order\"") != std::string::npos);
  CHECK(text.find("\"manifest\"") != std::string::npos);
  CHECK(text.find("\"data\"") != std::string::npos);
}

TEST_CASE("scaling report") {
  const fs::path out = workdir() / "scaling.json";
  CHECK(run("scaling --target 0.3 --side normal --n-min 1e-7 --n-max 1e-5 --n-count 4 "
            "--output " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"determinant\"") != std::string::npos);
  CHECK(text.find("\"expected_beta\": 1.0") != std::string::npos);
  CHECK(text.find("\"gap_entropy_residuals\"") != std::string::npos);
}

TEST_CASE("ed report") {
  const fs::path out = workdir() / "ed.json";
  CHECK(run("ed --x 0.2 --y 0.8 --n-atoms 2,4 --output " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"runs\"") != std::string::npos);
  CHECK(text.find("\"n_atoms\": 4") != std::string::npos);
  CHECK(text.find("\"limit\"") != std::string::npos);
  // deterministic rerun
  const fs::path out2 = workdir() / "ed2.json";
  CHECK(run("ed --config " + out.string() + ".manifest --output " + out2.string()) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("exit codes") {
  CHECK(run("sweep") == 2);                               // missing output
  CHECK(run("nonsense") == 2);                            // unknown subcommand
  CHECK(run("sweep --quantities bogus --output /tmp/x") == 2);
  const fs::path out = workdir() / "never.csv";
  CHECK(run("sweep --x-min 1.5 --x-max 1.5 --x-count 1 --output " + out.string()) == 3);
  CHECK(run("ed --max-dimension 10 --n-atoms 8 --output " + out.string()) == 3);
  CHECK(run("sweep --x-count 1 --y-count 1 --output /no/such/dir/x.csv") == 5);
  // config file for the wrong command
  const fs::path cfgp = workdir() / "wrong.cfg";
  { std::ofstream(cfgp) << "command=boundary\n"; }
  CHECK(run("sweep --config " + cfgp.string() + " --output " + out.string()) == 2);
}
