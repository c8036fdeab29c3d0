#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bistab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "bistab_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("certify verdicts") {
  auto r = run({"certify", "--f", "hill(0,2,1)"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["verdict"] == "strictly_gamma_convex");
  CHECK(json::parse(run({"certify", "--f", "expr:(x+1)/(x+2)"}).out)["verdict"] == "both");
  CHECK(json::parse(run({"certify", "--f", "expr:x^0.5"}).out)["verdict"] == "strictly_gamma_concave");
  auto t = run({"certify", "--f", "tanh", "--format", "text"});
  CHECK(t.out.rfind("verdict: strictly_gamma_convex", 0) == 0);
}

TEST_CASE("equilibria of the toggle") {
  auto r = run({"equilibria", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha", "10", "--beta", "12"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["equilibria"].size() == 3);
  CHECK(j["equilibria"][1]["stability"] == "saddle");
  CHECK(j["count_certified"] == true);
}

TEST_CASE("sweep csv is complete and byte-stable") {
  const std::vector<std::string> args{"sweep", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha-grid",
                                      "0.1:100:9", "--beta-grid", "0.1:100:7"};
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 64);
  CHECK(a.out.rfind("alpha,beta,class,count,min_jac_gap\n", 0) == 0);
}

TEST_CASE("symmetric interval") {
  auto r = run({"symmetric", "--lambda", "0", "--a", "2", "--z0", "1"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["interval"][0].get<double>() == doctest::Approx(2.0));
  CHECK(j["interval"][1] == "inf");
  auto csv = run({"symmetric", "--a", "2", "--lambda-grid", "0:0.2:3:lin", "--alpha-grid", "0.5:20:4"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("lambda,alpha,class,count,min_jac_gap\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 13);
}

TEST_CASE("phase writes svg and csv") {
  const auto dir = scratch();
  const auto svg = dir / "phase.svg", csv = dir / "traj.csv", sep = dir / "sep.csv";
  auto r = run({"phase", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha", "10", "--beta", "12", "--x0", "10",
                "--y0", "0.01", "--svg", svg.string(), "--csv", csv.string(), "--separatrix-csv", sep.string()});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["trajectory"]["terminal"] == 2);
  CHECK(slurp(svg).find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  CHECK(slurp(csv).rfind("t,x,y\n", 0) == 0);
  CHECK(slurp(sep).rfind("x,y\n", 0) == 0);

  auto mono = run({"phase", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha", "10", "--beta", "3",
                   "--separatrix-csv", sep.string()});
  CHECK(mono.code == 2);
}

TEST_CASE("region summary") {
  const auto csv = scratch() / "region.csv";
  auto r = run({"region", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--grid", "128", "--alpha", "10", "--beta", "12",
                "--csv", csv.string()});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["empty"] == false);
  CHECK(j["closed_form"]["branch"] == "both_zero");
  CHECK(j["query"]["class"] == "bistable");
  CHECK(j["query"]["membership"] == "inside");
  CHECK(slurp(csv).rfind("curve,alpha,beta\n", 0) == 0);
}

TEST_CASE("cyclic listing") {
  auto r = run({"cyclic", "--fn", "3*hill(0,4,1)", "--fn", "3*hill(0,4,1)", "--fn", "expr:x"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["n"] == 3);
  CHECK(j["equilibria"].size() == 3);
  CHECK(j["equilibria"][1]["stability"] == "unstable");
  CHECK(j["certificate"]["verdict"] == "at_most_bistable");
}

TEST_CASE("exit codes") {
  auto bad = run({"certify", "--f", "hill(0,2,"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("offset") != std::string::npos);
  CHECK(run({"certify", "--f", "sigmoid"}).code == 2);
  CHECK(run({"equilibria", "--f", "hill(0,2,1)", "--g", "hill(3,2,1)", "--alpha", "1", "--beta", "1"}).code == 2);
  auto neg = run({"equilibria", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha", "-1", "--beta", "1"});
  CHECK(neg.code == 2);
  CHECK(neg.err.find("--alpha") != std::string::npos);
  CHECK(run({"sweep", "--f", "hill(0,2,1)", "--g", "hill(0,6,1)", "--alpha-grid", "0:1:3", "--beta-grid", "1:2:2"})
            .code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("grid syntax") {
  auto g = bistab::cli::parse_grid("0.1:100:41");
  CHECK(g.lo == 0.1);
  CHECK(g.hi == 100.0);
  CHECK(g.n == 41);
  CHECK(g.logarithmic);
  CHECK_FALSE(bistab::cli::parse_grid("0:1:5:lin").logarithmic);
  CHECK_THROWS(bistab::cli::parse_grid("1:2"));
  CHECK_THROWS(bistab::cli::parse_grid("1:2:x"));
  CHECK_THROWS(bistab::cli::parse_grid("2:1:3"));
  CHECK_THROWS(bistab::cli::parse_grid("1:2:3:cubic"));
}
