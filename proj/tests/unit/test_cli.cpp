#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = otter::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("seq") {
  CHECK(run({"seq", "--kind", "free", "--n", "5"}).out == "n,value\n1,1\n2,1\n3,1\n4,2\n5,3\n");
  CHECK(run({"seq", "--kind", "forest", "--n", "0"}).out == "n,value\n0,1\n");
  CHECK(run({"seq", "--kind", "bogus", "--n", "3"}).code == 2);
  CHECK(run({"seq", "--kind", "rooted", "--n", "0"}).code == 2);
  CHECK(run({"seq", "--kind", "rooted"}).code == 2);
  auto j = nlohmann::json::parse(run({"seq", "--kind", "partition", "--n", "6", "--format", "json"}).out);
  CHECK(j["rows"][6]["value"] == "11");
}

TEST_CASE("dist") {
  CHECK(run({"dist", "--n", "4"}).out ==
        "k,probability\n1,0.33333333333333333333\n2,0.33333333333333333333\n3,0.16666666666666666667\n"
        "4,0.16666666666666666667\n");
  CHECK(run({"dist", "--n", "0"}).out == "k,probability\n0,1\n");
  auto limit = run({"dist", "--limit", "--m", "0", "-K", "2000"});
  CHECK(limit.code == 0);
  CHECK(limit.out.rfind("k,probability\n1,0.52284", 0) == 0);
  CHECK(run({"dist"}).code == 2);
  CHECK(run({"dist", "--limit", "--n", "3"}).code == 2);
}

TEST_CASE("constants") {
  auto r = run({"constants", "-P", "15", "-K", "2000"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::stod(j["alpha"]["value"].get<std::string>()) == doctest::Approx(0.338).epsilon(1e-3));
  CHECK(std::stod(j["mean"]["value"].get<std::string>()) == doctest::Approx(1.755).epsilon(1e-3));
  CHECK(j.contains("variance"));
  CHECK(run({"constants", "--digits", "10"}).code == 2);
  CHECK(run({"constants", "--format", "xml"}).code == 2);
}

TEST_CASE("environment defaults yield to flags") {
  setenv("OTTER_DIGITS", "10", 1);
  CHECK(run({"constants", "-K", "2000"}).code == 2);
  CHECK(run({"constants", "-K", "2000", "-P", "15"}).code == 0);
  setenv("OTTER_DIGITS", "abc", 1);
  CHECK(run({"constants", "-K", "2000"}).code == 2);
  unsetenv("OTTER_DIGITS");
}

TEST_CASE("sample") {
  CHECK(run({"sample", "--n", "1", "--count", "5"}).out == "n,trees,largest\n1,1,1\n1,1,1\n1,1,1\n1,1,1\n1,1,1\n");
  CHECK(run({"sample", "--n", "8", "--count", "10"}).code == 2);
  CHECK(run({"sample", "--n", "8", "--count", "10", "--raw"}).code == 0);
  auto a = run({"sample", "--n", "30", "--count", "1000", "--seed", "5"});
  auto b = run({"sample", "--n", "30", "--count", "1000", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("chi-square") != std::string::npos);
  setenv("OTTER_SEED", "5", 1);
  CHECK(run({"sample", "--n", "30", "--count", "1000"}).out == a.out);
  unsetenv("OTTER_SEED");
}

TEST_CASE("sample n = 3 frequencies") {
  auto r = run({"sample", "--n", "3", "--count", "100000", "--seed", "7", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["profiles"].size() == 3);
  for (const auto& cell : j["profiles"]) CHECK(std::abs(cell["z"].get<double>()) < 5);
}

TEST_CASE("asymptotics") {
  {
    std::ofstream bad("cli_bad_weights.csv");
    bad << "k,weight\n1,0.5\n2,abc\n";
  }
  auto r = run({"asymptotics", "--weights", "cli_bad_weights.csv"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  {
    std::ofstream good("cli_weights.csv");
    good.precision(17);
    for (int k = 1; k <= 1000; ++k) good << k << ',' << std::pow(k, -2.5) << '\n';
  }
  auto g = run({"asymptotics", "--weights", "cli_weights.csv", "--format", "json"});
  REQUIRE(g.code == 0);
  auto j = nlohmann::json::parse(g.out);
  bool found = false;
  for (const auto& s : j["series"])
    if (s["label"] == "ratio") {
      found = true;
      CHECK(s["extrapolated"].get<double>() == doctest::Approx(1).epsilon(1e-3));
    }
  CHECK(found);
  auto trees = run({"asymptotics", "--builtin", "trees", "--n", "300", "-K", "2000"});
  CHECK(trees.code == 0);
  CHECK(trees.out.rfind("n,ratio\n1,", 0) == 0);
  CHECK(run({"asymptotics"}).code == 2);
  CHECK(run({"asymptotics", "--builtin", "graphs"}).code == 2);
}

TEST_CASE("verify") {
  auto seq = run({"verify", "--suite", "sequences", "-K", "2000"});
  CHECK(seq.code == 0);
  CHECK(seq.out.find("PASS [1]") != std::string::npos);
  CHECK(seq.out.find("PASS [2]") != std::string::npos);
  CHECK(run({"verify", "--suite", "bogus"}).code == 2);
  CHECK(run({"verify", "-K", "100"}).code == 2);
}

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).out.find("0.1.0") != std::string::npos);
  CHECK(run({}).code == 2);
}
