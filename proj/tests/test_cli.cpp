#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "magnikit/cli.hpp"
#include "magnikit/io.hpp"
#include "magnikit/metric.hpp"

using namespace magnikit;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("magnikit_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("rips on two points") {
  const double d = 1.0;
  const auto path = temp_file("two.csv", to_csv(FiniteMetricSpace({"a", "b"}, {{0, d}, {d, 0}})));
  for (const char* method : {"subsets", "euler", "barcode"}) {
    const Run r = run({"rips", "--input", path, "--method", method});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).dump() == R"({"terms":[{"coeff":2,"rate":0},{"coeff":-1,"rate":1}]})");
  }
  const auto bars = (fs::temp_directory_path() / "magnikit_cli_bars.json").string();
  CHECK(run({"rips", "--input", path, "--barcode-out", bars}).code == 0);
  std::ifstream in(bars);
  CHECK(json::parse(in)["degrees"]["0"].size() == 2);
}

TEST_CASE("cycle sampled as CSV") {
  const Run r = run({"cycle", "--kind", "graph", "--n", "6", "--format", "csv", "--sample", "0:5:0.1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,value");
  int rows = 0;
  while (std::getline(lines, line)) {
    const double t = std::stod(line.substr(0, line.find(','))), v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v == doctest::Approx(6 - 6 * std::exp(-t) + 2 * std::exp(-2 * t) - std::exp(-3 * t)).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 51);
  const Run conv = run({"cycle", "--kind", "geo", "--n", "7", "--convexity", "0.1:3:0.1"});
  CHECK(conv.code == 0);
  CHECK(json::parse(conv.out).contains("convex_on_grid"));
}

TEST_CASE("bmh check on the 5-cycle") {
  const auto path = temp_file("c5.csv", "u,v\n0,1\n1,2\n2,3\n3,4\n4,0\n");
  const Run r = run({"bmh", "--input", path, "--metric", "graph", "--kmax", "3", "--check-t", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["partial"].get<double>() - j["leinster"].get<double>()) <= j["bound"].get<double>());
  CHECK(j["within_bound"] == true);
  const Run slow = run({"bmh", "--input", path, "--metric", "graph", "--kmax", "3", "--check-t", "1"});
  CHECK(slow.code == 2);
  CHECK(json::parse(slow.out)["status"] == "convergence");
}

TEST_CASE("sampling an ExpSum file") {
  const auto path = temp_file("k444.json", R"({"terms":[{"coeff":12,"rate":0},{"coeff":16,"rate":1},{"coeff":-27,"rate":2}]})");
  const Run r = run({"sample", "--input", path, "--sample", "0:0:1"});
  CHECK(r.code == 0);
  CHECK(r.out == "t,value\n0,1\n");
}

TEST_CASE("magnitude homology table") {
  const auto path = temp_file("c5b.csv", "0,1\n1,2\n2,3\n3,4\n4,0\n");
  const Run r = run({"maghom", "--input", path, "--metric", "graph", "--kmax", "2", "--lmax", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "k,l,rank\n0,0,5\n1,1,10\n2,2,10\n");
  const Run j = run({"--format", "json", "maghom", "--input", path, "--metric", "graph", "--kmax", "1", "--lmax", "1"});
  CHECK(json::parse(j.out)["entries"].size() == 2);
}

TEST_CASE("magnitude, limits and morse") {
  const auto two = temp_file("cloud.csv", "x,y\n0,0\n3,4\n");
  const Run m = run({"magnitude", "--input", two, "--metric", "euclidean", "--t", "1"});
  CHECK(m.code == 0);
  CHECK(json::parse(m.out)["magnitude"].get<double>() == doctest::Approx(2 / (1 + std::exp(-5.0))));
  const Run l = run({"limits", "--family", "eucl", "--t", "1", "--rmax", "99", "--m", "3"});
  CHECK(l.code == 0);
  CHECK(json::parse(l.out)["liminf"].get<double>() == doctest::Approx(std::exp(-2.0) + 2 * M_PI));
  CHECK(run({"limits", "--family", "geo", "--t", "0.5"}).code == 0);
  const auto crits = temp_file("torus.csv", "value,index\n0,0\n1,1\n2,1\n3,2\n");
  const Run t = run({"morse", "--crit-csv", crits});
  CHECK(t.code == 0);
  CHECK(io::expsum_from_json(json::parse(t.out)) == ExpSum({{1, 0}, {-1, 1}, {-1, 2}, {1, 3}}));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"rips", "--input", "/nonexistent/x.csv"}).code == 1);
  CHECK(run({"cycle", "--kind", "torus", "--n", "5"}).code == 1);
  CHECK(run({"sample", "--input", temp_file("bad.json", "{"), "--sample", "0:1:1"}).code == 1);
  const auto k32 = temp_file("k32.csv", "0,3\n0,4\n1,3\n1,4\n2,3\n2,4\n");
  const Run u = run({"magnitude", "--input", k32, "--metric", "graph", "--t", "0.34657359027997264"});
  CHECK(u.code == 2);
  CHECK(json::parse(u.out)["status"] == "undefined");
}

TEST_CASE("installed binary") {
  const auto out = (fs::temp_directory_path() / "magnikit_cli_stdout.json").string();
  const std::string cmd = std::string(MAGNIKIT_CLI_PATH) + " cycle --kind graph --n 5 > " + out;
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in(out);
  CHECK(io::expsum_from_json(json::parse(in)) == ExpSum({{5, 0}, {-5, 1}, {1, 2}}));
}

TEST_CASE("bmh check far beyond double resolution") {
  const auto path = temp_file("c5c.csv", "0,1\n1,2\n2,3\n3,4\n4,0\n");
  const Run r = run({"bmh", "--input", path, "--metric", "graph", "--kmax", "3", "--check-t", "20"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bound"].get<double>() < 1e-20);
  CHECK(j["rounding"].get<double>() > 0);
}
