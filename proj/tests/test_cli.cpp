#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgpath/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "mgpath");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = mgpath::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("price with Black-Scholes emits a JSON report") {
  const auto r = call({"price", "--method", "bs", "--spot", "100", "--strike", "100", "--rate", "0.05", "--tau", "1",
                       "--sigma", "0.2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["price"].get<double>() == doctest::Approx(10.4506).epsilon(1e-5));
  CHECK(j.contains("version"));
  CHECK(j.contains("seconds"));
  CHECK(j["seed"] == 42);
  CHECK(j["params"]["strike"] == 100.0);
}

TEST_CASE("compare emits one CSV row per method") {
  const auto r = call({"compare", "--methods", "mg-alpha1,sde-oracle,mean-path", "--rho", "0", "--lambda", "0",
                       "--paths", "2000"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "method,price,stderr,n_paths,seconds");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    int commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 4);
  }
  CHECK(rows == 3);
  CHECK(r.err.find("z mg-alpha1 sde-oracle") != std::string::npos);
}

TEST_CASE("compare in JSON carries z-scores; variant suffixes are accepted") {
  const auto r = call({"compare", "--methods", "mg-alpha1:exact,mg-alpha1:symmetrized", "--lambda", "0.1", "--paths",
                       "4000", "--output", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["results"].size() == 2);
  CHECK(j["z_scores"].size() == 1);
  CHECK(j["z_scores"][0]["z"].get<double>() > 3);
}

TEST_CASE("exit statuses") {
  CHECK(call({"compare", "--methods", "bs"}).code == 1);
  CHECK(call({"price", "--method", "nope"}).code == 1);
  CHECK(call({"price", "--method", "bs", "--bogus", "1"}).code == 1);
  CHECK(call({"price"}).code == 1);
  CHECK(call({"price", "--method", "bs", "--tau", "0"}).code == 2);
  CHECK(call({"price", "--method", "mean-path", "--alpha", "0.5"}).code == 2);
  CHECK(call({"price", "--method", "mg-general", "--alpha", "40", "--y", "10", "--paths", "4"}).code == 3);
}

TEST_CASE("config file with flag override") {
  const std::string path = "mgpath_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"spot": 90, "strike": 100, "rate": 0.02, "tau": 0.5, "xi": 0.25, "n_paths": 1000, "seed": 7})";
  }
  const auto r = call({"price", "--method", "bs", "--config", path, "--strike", "95"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["params"]["spot"] == 90.0);
  CHECK(j["params"]["strike"] == 95.0);
  CHECK(j["params"]["n_paths"] == 1000);
  CHECK(j["seed"] == 7);
  {
    std::ofstream f(path);
    f << R"({"spot": 90, "vol": 0.2})";
  }
  CHECK(call({"price", "--method", "bs", "--config", path}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("moments subcommand") {
  const auto r = call({"moments", "--order", "4", "--paths", "20000"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["ratio"].get<double>() == doctest::Approx(3.0).epsilon(0.03));
  CHECK(j["expected"] == 3.0);
}

TEST_CASE("kernel subcommand writes the table") {
  const auto r = call({"kernel", "--method", "mg-alpha1", "--paths", "2000"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x0,y0,density,stderr");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 64 * 64);
  CHECK(call({"kernel", "--method", "sde-oracle"}).code == 1);
}

TEST_CASE("repeated runs are bit-identical across thread counts") {
  const std::vector<std::string> args{"price", "--method", "mg-alpha1", "--lambda", "0.03", "--rho", "-0.4",
                                      "--paths", "6000", "--output", "csv"};
  setenv("MGPATH_THREADS", "1", 1);
  const auto a = call(args);
  setenv("MGPATH_THREADS", "3", 1);
  const auto b = call(args);
  unsetenv("MGPATH_THREADS");
  auto fields = [](const std::string& csv) {
    const auto row = csv.substr(csv.find('\n') + 1);
    return row.substr(0, row.rfind(','));  // drop the timing column
  };
  CHECK(fields(a.out) == fields(b.out));
}
