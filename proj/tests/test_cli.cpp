#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ENTDYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// first non-comment data row after the header
std::vector<double> first_row(const std::string& csv) {
  std::istringstream ss(csv);
  std::string line;
  bool past_header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!past_header) {
      past_header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    return row;
  }
  return {};
}

} // namespace

TEST_CASE("factor subcommand writes a CSV starting at |F| = 1") {
  REQUIRE(run("factor --L 101 --lambda 2 --g 0.1 --tmax 5 --points 50 "
              "--out cli_factor.csv") == 0);
  const auto row = first_row(slurp("cli_factor.csv"));
  REQUIRE(row.size() == 2);
  CHECK(row[0] == 0.0);
  CHECK(row[1] == 1.0);
  // sidecar metadata exists and parses
  std::ifstream meta("cli_factor.csv.meta.json");
  CHECK(meta.good());
  std::remove("cli_factor.csv");
  std::remove("cli_factor.csv.meta.json");
}

TEST_CASE("identical runs give byte-identical CSV regardless of --jobs") {
  REQUIRE(run("factor --L 101 --lambda 2 --g 0.1 --tmax 5 --points 64 --jobs 1 "
              "--out cli_j1.csv") == 0);
  REQUIRE(run("factor --L 101 --lambda 2 --g 0.1 --tmax 5 --points 64 --jobs 4 "
              "--out cli_j4.csv") == 0);
  CHECK(slurp("cli_j1.csv") == slurp("cli_j4.csv"));
  std::remove("cli_j1.csv");
  std::remove("cli_j1.csv.meta.json");
  std::remove("cli_j4.csv");
  std::remove("cli_j4.csv.meta.json");
}

TEST_CASE("invalid specs exit with code 1") {
  CHECK(run("factor --L 101 --points 0 --out cli_bad.csv") == 1);
  CHECK(run("factor --L 1 --out cli_bad.csv") == 1);
  CHECK(run("figure nosuchfig") == 1);
  CHECK(run("sweep --lambda 1,2 --g 0.1,1 --out cli_bad.csv") == 1);
  CHECK(run("sweep --out cli_bad.csv") == 1); // no swept axis
  std::remove("cli_bad.csv");
}

TEST_CASE("concurrence and negativity subcommands") {
  REQUIRE(run("concurrence --L 101 --lambda 2 --g 0.1 --P 0.5 --tmax 5 --points 40 "
              "--out cli_conc.csv") == 0);
  const auto crow = first_row(slurp("cli_conc.csv"));
  REQUIRE(crow.size() == 2);
  CHECK(crow[1] == 0.25); // Werner P=0.5 at t=0: P(1+1/2)-1/2
  std::remove("cli_conc.csv");
  std::remove("cli_conc.csv.meta.json");

  REQUIRE(run("negativity --L 101 --lambda 2 --g 0.1 --tmax 5 --points 40 "
              "--out cli_neg.csv") == 0);
  const auto nrow = first_row(slurp("cli_neg.csv"));
  REQUIRE(nrow.size() == 2);
  CHECK(nrow[1] == doctest::Approx(1.0).epsilon(1e-12));
  std::remove("cli_neg.csv");
  std::remove("cli_neg.csv.meta.json");
}

TEST_CASE("sweep over lambda emits one column per value") {
  REQUIRE(run("sweep --lambda 1,1.5,2 --g 0.1 --L 101 --tmax 5 --points 40 "
              "--out cli_sweep.csv") == 0);
  const auto row = first_row(slurp("cli_sweep.csv"));
  CHECK(row.size() == 4); // t + 3 curves
  std::remove("cli_sweep.csv");
  std::remove("cli_sweep.csv.meta.json");
}

TEST_CASE("verify reports success on the defaults") {
  REQUIRE(run("verify --samples 25 --seed 42 --out cli_verify.csv") == 0);
  const auto report = slurp("cli_verify.csv");
  CHECK(report.find("result=pass") != std::string::npos);
  std::remove("cli_verify.csv");
  std::remove("cli_verify.csv.meta.json");
}

TEST_CASE("figure preset runs end to end") {
  REQUIRE(run("figure fig4 --points 60 --tmax 12 --out cli_fig4.csv") == 0);
  const auto row = first_row(slurp("cli_fig4.csv"));
  REQUIRE(row.size() == 4);
  CHECK(row[1] == doctest::Approx(0.25).epsilon(1e-12)); // P=0.5 at t=0
  CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-12));  // P=1 at t=0
  std::remove("cli_fig4.csv");
  std::remove("cli_fig4.csv.meta.json");
}
