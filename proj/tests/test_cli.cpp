#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <hardylab/cli.hpp>
#include <hardylab/serialize.hpp>

using namespace hardylab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify example") {
  const auto r = run({"classify", "--N", "5", "--p", "2", "--alpha", "1", "--c", "1.0",
                      "--output", "json"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["theorem_tag"] == "TH_3_MAIN_SMALL_ALPHA");
  CHECK(doc["constants_used"]["k"].get<double>() == doctest::Approx(1.25));
}

TEST_CASE("constants example") {
  const auto r = run({"constants", "--N", "5", "--p", "2", "--alpha", "1"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["constants"]["gamma_alpha"].get<double>() == doctest::Approx(4.0));
  CHECK(doc["constants"]["beta_zero"].get<double>() == doctest::Approx(1.25));
  CHECK(doc["constants"]["beta_alpha"].get<double>() == doctest::Approx(2.0));
  CHECK(doc["constants"]["k"].get<double>() == doctest::Approx(1.25));
}

TEST_CASE("invalid parameters exit 1 without output") {
  const auto r = run({"classify", "--N", "2", "--p", "2", "--alpha", "0", "--c", "0"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("N >= 3") != std::string::npos);

  CHECK(run({"classify", "--N", "5", "--p", "2", "--bogus", "1"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"sharpness", "--N", "5", "--p", "2", "--alpha", "1.5"}).code == 1);
}

TEST_CASE("numerical failure exits 2 without output") {
  const auto r = run({"evolve", "--N", "5", "--p", "2", "--alpha", "0", "--c", "1e300",
                      "--M", "64", "--dt", "1e-2", "--t-final", "0.02"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
}

TEST_CASE("classify JSON round trip is byte-identical") {
  for (const auto& c : {"1.0", "1.25", "-3", "2.5"}) {
    const auto r = run({"classify", "--N", "5", "--p", "2", "--alpha", "1", "--c", c});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("csv has a header row") {
  const auto r = run({"--output", "csv", "sharpness", "--N", "5", "--p", "2", "--alpha", "1"});
  REQUIRE(r.code == 0);
  const auto first = r.out.substr(0, r.out.find('\n'));
  CHECK(first.find("delta") != std::string::npos);
  CHECK(first.find("c_bound") != std::string::npos);
}

TEST_CASE("pretty classify prints the checklist") {
  const auto r = run({"--output", "pretty", "classify", "--N", "5", "--p", "2", "--alpha", "1",
                      "--c", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("[x]") != std::string::npos);
}

TEST_CASE("params file with an array") {
  const std::string path = "hardylab_cli_params_test.json";
  {
    std::ofstream f(path);
    f << R"([{"N": 5, "p": 2, "alpha": 1, "c": 1.0}, {"N": 6, "p": 2, "alpha": 0, "c": 0}])";
  }
  const auto r = run({"classify", "--params-file", path});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc.is_array());
  CHECK(doc.size() == 2);

  {
    std::ofstream f(path);
    f << R"({"N": 5, "p": 2, "gamma": 1})";
  }
  CHECK(run({"classify", "--params-file", path}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("output path") {
  const std::string path = "hardylab_cli_out_test.json";
  const auto r = run({"--output-path", path, "constants", "--N", "5", "--p", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(Json::parse(f)["constants"]["beta_zero"].get<double>() == doctest::Approx(1.25));
  std::remove(path.c_str());
}

TEST_CASE("other subcommands run") {
  CHECK(run({"hardy", "--N", "5", "--p", "2", "--alpha", "0"}).code == 0);
  CHECK(run({"hardy", "--N", "5", "--p", "2", "--alpha", "0", "--eps", "0.2", "0.1"}).code == 0);
  CHECK(run({"forms", "--N", "5", "--p", "2", "--alpha", "1", "--c", "1"}).code == 0);
  const auto e = run({"--output", "csv", "evolve", "--N", "5", "--p", "2", "--alpha", "0", "--c",
                      "1", "--M", "200", "--r-min", "1e-3", "--r-max", "10", "--dt", "1e-3",
                      "--t-final", "0.01"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("t,lp_norm,min_u,residual", 0) == 0);
  CHECK(run({"hardy", "--N", "5", "--p", "2", "--alpha", "0", "--profile", "gaussian", "--a",
             "0"}).code != 0);
}
