#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "resmote_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run_cli(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string(RESMOTE_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string path(const char* name) { return (scratch() / name).string(); }

nlohmann::json drop_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes the requested rows and prints the ratio") {
  const auto r = run_cli("gen --n-maj 500 --n-min 100 --dim 2 --sep 2.0 --seed 7 --out " + path("d.csv"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("IR 5.0") != std::string::npos);
  const auto text = slurp(path("d.csv"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 601);

  REQUIRE(run_cli("gen --n-maj 500 --n-min 100 --dim 2 --sep 2.0 --seed 7 --out " + path("d2.csv")).code == 0);
  CHECK(slurp(path("d2.csv")) == text);
}

TEST_CASE("gen rejects a zero class count") {
  const auto r = run_cli("gen --n-maj 5 --n-min 0 --out " + path("bad.csv"));
  CHECK(r.code != 0);
  CHECK(r.err.rfind("error:", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("run writes a report with one entry per replication") {
  REQUIRE(run_cli("gen --n-maj 200 --n-min 50 --dim 2 --sep 2.0 --seed 7 --out " + path("r.csv")).code == 0);
  const std::string base = "run --data " + path("r.csv") +
                           " --method re_smoteboost --base stump --k 10 --t-max heuristic --replications 20 --seed 1";
  auto r = run_cli(base + " --out " + path("r1.json") + " --csv " + path("r1.csv"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path("r1.json")));
  CHECK(j.at("replications").size() == 20);
  CHECK(j.at("replication_count") == 20);
  CHECK(j.at("summary").at("positive.recall").contains("mean"));
  CHECK(j.at("summary").at("positive.recall").contains("std_dev"));
  CHECK(j.at("config").at("t_max") == "heuristic");
  CHECK(j.at("config").at("k") == 10);
  const auto csv = slurp(path("r1.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);

  r = run_cli(base + " --out " + path("r2.json"));
  REQUIRE(r.code == 0);
  CHECK(drop_timing(nlohmann::json::parse(slurp(path("r2.json")))).dump() == drop_timing(j).dump());
}

TEST_CASE("plain boosting on separable data") {
  REQUIRE(run_cli("gen --n-maj 200 --n-min 50 --dim 2 --sep 6 --seed 3 --out " + path("s.csv")).code == 0);
  REQUIRE(run_cli("run --data " + path("s.csv") + " --method none --replications 10 --out " + path("s.json")).code == 0);
  const auto j = nlohmann::json::parse(slurp(path("s.json")));
  CHECK(j.at("summary").at("positive.accuracy").at("mean").get<double>() > 0.95);
}

TEST_CASE("run argument errors are single-line diagnostics") {
  REQUIRE(run_cli("gen --n-maj 60 --n-min 20 --out " + path("e.csv")).code == 0);
  for (const std::string bad : {"--method magic", "--base svm", "--t-max soon", "--replications 1",
                                "--k 2 --k-fraction 0.1", "--test-fraction 1.5"}) {
    CAPTURE(bad);
    const auto r = run_cli("run --data " + path("e.csv") + " " + bad + " --out " + path("e.json"));
    CHECK(r.code != 0);
    CHECK(r.err.rfind("error:", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  const auto missing = run_cli("run --data " + path("nope.csv") + " --out " + path("e.json"));
  CHECK(missing.code != 0);
  CHECK(missing.err.find("nope.csv") != std::string::npos);
}

TEST_CASE("dump-resampled writes data and provenance") {
  REQUIRE(run_cli("gen --n-maj 100 --n-min 25 --sep 1.5 --seed 2 --out " + path("p.csv")).code == 0);
  REQUIRE(run_cli("run --data " + path("p.csv") + " --replications 2 --out " + path("p.json") +
                  " --dump-resampled " + path("p_rs.csv"))
              .code == 0);
  CHECK(fs::exists(path("p_rs.csv")));
  const auto prov = nlohmann::json::parse(slurp(path("p_rs.csv") + ".provenance.json"));
  CHECK(prov.at("synthetics").is_array());
  CHECK(!prov.at("synthetics").empty());
  for (const auto& s : prov.at("synthetics"))
    CHECK(s.at("dist_min").get<double>() <= s.at("dist_maj").get<double>());
}

TEST_CASE("compare-overlap") {
  REQUIRE(run_cli("gen --n-maj 200 --n-min 200 --dim 3 --sep 1 --seed 4 --out " + path("o1.csv")).code == 0);
  REQUIRE(run_cli("gen --n-maj 200 --n-min 200 --dim 3 --sep 4 --seed 4 --out " + path("o4.csv")).code == 0);
  auto r = run_cli("compare-overlap --a " + path("o1.csv") + " --b " + path("o1.csv"));
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("count_a_smaller") == 0);
  CHECK(j.at("count_b_smaller") == 0);
  CHECK(j.at("ties") == 3);

  r = run_cli("compare-overlap --a " + path("o1.csv") + " --b " + path("o4.csv") + " --out " + path("o.json"));
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(slurp(path("o.json")));
  CHECK(j.at("ratios_b")[0].get<double>() > j.at("ratios_a")[0].get<double>());

  REQUIRE(run_cli("gen --n-maj 20 --n-min 20 --dim 2 --seed 4 --out " + path("o2d.csv")).code == 0);
  r = run_cli("compare-overlap --a " + path("o1.csv") + " --b " + path("o2d.csv"));
  CHECK(r.code != 0);
  CHECK(r.err.find("dimension") != std::string::npos);
}

}  // TEST_SUITE
