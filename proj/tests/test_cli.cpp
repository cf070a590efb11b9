// Drives the built CLI binary end to end: determinism, exit codes, CSV/JSON
// outputs and the cross-check between simulated and closed-form moments.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = DIMLAB_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "dimlab_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const fs::path& p) {
  CsvTable t;
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (first) {
      t.header = fields;
      first = false;
    } else {
      t.rows.push_back(fields);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("fixed seeds give byte-identical outputs") {
  fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  const std::string common = "simulate --seed 99 --replicas 400";
  REQUIRE(run(common + " --out " + a.string()) == 0);
  REQUIRE(run(common + " --out " + b.string()) == 0);
  CHECK(slurp(a / "ensemble.csv") == slurp(b / "ensemble.csv"));
  CHECK(slurp(a / "ensemble.json") == slurp(b / "ensemble.json"));
}

TEST_CASE("sidecar replica count matches the csv grouping") {
  fs::path dir = fresh_dir("sidecar");
  REQUIRE(run("simulate --seed 3 --replicas 250 --out " + dir.string()) == 0);
  json side = json::parse(slurp(dir / "ensemble.json"));
  CHECK(side.at("replicas").get<int>() == 250);
  CHECK(side.at("seed").get<int>() == 3);
  CHECK(side.at("version").is_string());

  CsvTable t = parse_csv(dir / "ensemble.csv");
  std::size_t max_replica = 0;
  for (const auto& row : t.rows)
    max_replica = std::max(max_replica, static_cast<std::size_t>(std::stoul(row[0])));
  CHECK(max_replica < 250);
}

TEST_CASE("evolve emits the closed-form values") {
  fs::path dir = fresh_dir("evolve");
  REQUIRE(run("evolve --set evolve.times=[0.0,1.0] --set evolve.norm_C=4.0 --out " +
              dir.string()) == 0);
  CsvTable t = parse_csv(dir / "evolve.csv");
  REQUIRE(t.header.size() == 4);  // t, config_id, k_value, bound_value
  json side = json::parse(slurp(dir / "evolve.json"));
  const auto& probes = side.at("probes");

  const double rho_t = (1.0 - 2.0) * std::exp(-1.0) + 2.0;  // m=1 sigma=2 A=1 at t=1
  for (const auto& row : t.rows) {
    const double tval = std::stod(row[0]);
    const std::size_t id = std::stoul(row[1]);
    const double k = std::stod(row[2]);
    const double bound = std::stod(row[3]);
    const auto size = probes.at(id).at("size").get<std::size_t>();
    if (tval == 0.0) CHECK(k == doctest::Approx(1.0).epsilon(1e-14));
    if (tval == 1.0)
      CHECK(k == doctest::Approx(std::pow(rho_t, static_cast<double>(size))).epsilon(1e-12));
    CHECK(bound >= std::abs(k) * (1.0 - 1e-12));
  }
}

TEST_CASE("simulated mean matches the evolved first moment") {
  fs::path sim = fresh_dir("joint_sim");
  REQUIRE(run("simulate --seed 17 --replicas 4000 --out " + sim.string()) == 0);
  REQUIRE(run("report --in " + sim.string() + " --out " + sim.string()) == 0);
  json rep = json::parse(slurp(sim / "report.json"));
  double est = 0.0, se = 0.0;
  for (const auto& mj : rep.at("factorial_moments")) {
    if (mj.at("order").get<int>() == 1) {
      est = mj.at("estimate").get<double>();
      se = mj.at("std_error").get<double>();
    }
  }
  const double rho_t = (1.0 - 2.0) * std::exp(-1.0) + 2.0;
  CHECK(std::abs(est - rho_t) <= 3.0 * se);
}

TEST_CASE("report computes the pair gap when edges are configured") {
  fs::path dir = fresh_dir("gap_report");
  REQUIRE(run("simulate --seed 23 --replicas 2000 --out " + dir.string()) == 0);
  REQUIRE(run("report --in " + dir.string() + " --out " + dir.string() +
              " --set report.gap_edges=[0.0,0.5,1.0,1.5,2.0]") == 0);
  CsvTable t = parse_csv(dir / "report_gap.csv");
  CHECK(t.rows.size() == 4);
  for (const auto& row : t.rows) {
    const double v = std::stod(row[3]);
    const double err = std::stod(row[4]);
    CHECK(std::abs(v) <= 4.0 * err);  // evolved Poisson data has zero gap
  }
}

TEST_CASE("config validation failures exit with code 2") {
  CHECK(run("evolve --set params.m=-1.0 --out " +
            fresh_dir("bad_m").string()) == 2);
  CHECK(run("simulate --set simulate.scheme=bogus --out " +
            fresh_dir("bad_scheme").string()) == 2);
  CHECK(run("verify --set verify.checks=[\\\"no_such_check\\\"] --out " +
            fresh_dir("bad_check").string()) == 2);
  CHECK(run("") == 2);  // missing subcommand
}

TEST_CASE("resolvent subcommand evaluates the beta-function formula") {
  fs::path dir = fresh_dir("resolvent");
  REQUIRE(run("resolvent --set resolvent.z=[0.5,2.0] --set resolvent.probe_sizes=[0] --out " +
              dir.string()) == 0);
  CsvTable t = parse_csv(dir / "resolvent.csv");
  REQUIRE(t.rows.size() == 2);
  // k({}) = 1 for the poisson initial state, so the vacuum value is 1/z
  for (const auto& row : t.rows) {
    const double z = std::stod(row[0]);
    CHECK(std::stod(row[2]) == doctest::Approx(1.0 / z).epsilon(1e-12));
  }
}

TEST_CASE("built-in initial states") {
  SUBCASE("nearest-neighbour correlated state evolves without error") {
    fs::path dir = fresh_dir("chain");
    CHECK(run("evolve --set evolve.initial={\\\"kind\\\":\\\"chain\\\",\\\"intensity\\\":1.0,"
              "\\\"eps\\\":0.25,\\\"ell\\\":0.5} --out " +
              dir.string()) == 0);
    CsvTable t = parse_csv(dir / "evolve.csv");
    CHECK(t.rows.size() > 0);
  }
  SUBCASE("level-tabulated state reproduces its table at t = 0") {
    fs::path dir = fresh_dir("levels");
    REQUIRE(run("evolve --set evolve.initial={\\\"kind\\\":\\\"levels\\\",\\\"values\\\":"
                "[1.0,0.5,0.25]} --set evolve.times=[0.0] --set evolve.norm_C=0.0 --out " +
                dir.string()) == 0);
    CsvTable t = parse_csv(dir / "evolve.csv");
    json side = json::parse(slurp(dir / "evolve.json"));
    const std::vector<double> table{1.0, 0.5, 0.25};
    for (const auto& row : t.rows) {
      const std::size_t id = std::stoul(row[1]);
      const auto size = side.at("probes").at(id).at("size").get<std::size_t>();
      const double expected = size < table.size() ? table[size] : 0.0;
      CHECK(std::stod(row[2]) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("verify subcommand") {
  SUBCASE("empty check list passes with an empty report") {
    fs::path dir = fresh_dir("verify_empty");
    CHECK(run("verify --set verify.checks=[] --out " + dir.string()) == 0);
    json rep = json::parse(slurp(dir / "verify.json"));
    CHECK(rep.at("all_pass").get<bool>());
    CHECK(rep.at("checks").empty());
  }
  SUBCASE("single fast check passes and reports its observation") {
    fs::path dir = fresh_dir("verify_one");
    CHECK(run("verify --set verify.checks=[\\\"poisson_preservation\\\"] --out " +
              dir.string()) == 0);
    json rep = json::parse(slurp(dir / "verify.json"));
    REQUIRE(rep.at("checks").size() == 1);
    CHECK(rep.at("checks")[0].at("pass").get<bool>());
    CHECK(rep.at("checks")[0].at("observed").get<double>() <=
          rep.at("checks")[0].at("tolerance").get<double>());
  }
  SUBCASE("injected constant corruption flips the invariance check") {
    fs::path dir = fresh_dir("verify_mutated");
    CHECK(run("verify --set verify.checks=[\\\"invariance_ergodic_rate\\\"]"
              " --set verify.inject_corrupt_invariant=true --out " +
              dir.string()) == 1);
    json rep = json::parse(slurp(dir / "verify.json"));
    CHECK_FALSE(rep.at("all_pass").get<bool>());
    CHECK_FALSE(rep.at("checks")[0].at("pass").get<bool>());
  }
}
