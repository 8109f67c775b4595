#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cohstate/cli/cli.hpp"

using namespace cohstate;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cohstate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<double> fields(const std::string& row) {
  std::vector<double> xs;
  std::istringstream in(row);
  for (std::string cell; std::getline(in, cell, ',');) xs.push_back(std::stod(cell));
  return xs;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cohstate_test_" + name);
}

}  // namespace

TEST_CASE("table rows for the built-ins") {
  auto h = invoke({"--spec", "hydrogen1d", "table", "--n-max", "3"});
  REQUIRE(h.code == cli::kExitOk);
  auto rows = data_lines(h.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "n,e_n,rho_n,log_rho_n");
  CHECK(rows[1] == "0,0,1,0");
  CHECK(rows[4] == "3,0.9375,0.625,-0.470003629245736");

  auto o = invoke({"--spec", "harmonic", "table", "--n-max", "4"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(data_lines(o.out).back() == "4,4,24,3.17805383034795");

  auto z = invoke({"--spec", "harmonic", "table", "--n-max", "0"});
  REQUIRE(z.code == cli::kExitOk);
  CHECK(data_lines(z.out).back() == "0,0,1,0");
}

TEST_CASE("state at the vacuum label") {
  auto r = invoke({"--spec", "harmonic", "state", "--J", "0", "--gamma", "0"});
  REQUIRE(r.code == cli::kExitOk);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == "0,1,0,1");
}

TEST_CASE("state coefficients are normalized") {
  auto r = invoke({"--spec", "harmonic", "state", "--J", "3", "--gamma", "0.7"});
  REQUIRE(r.code == cli::kExitOk);
  auto rows = data_lines(r.out);
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += fields(rows[i])[3];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("scan keeps the action identity") {
  auto r = invoke({"--spec", "hydrogen1d", "scan", "--J-min", "0.1", "--J-max", "0.9", "--points",
                   "9"});
  REQUIRE(r.code == cli::kExitOk);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "J,mean_H,v,action_residual,one_form_residual,bound_margin");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto x = fields(rows[i]);
    CHECK(x[3] <= 1e-9);
    CHECK(x[5] > 0.0);
  }
}

TEST_CASE("harmonic autocorrelation returns after one period") {
  auto r = invoke({"--spec", "harmonic", "autocorr", "--J", "1", "--t-max", "6.283185307179586",
                   "--steps", "100"});
  REQUIRE(r.code == cli::kExitOk);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "t,P");
  CHECK(fields(rows[1])[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fields(rows.back())[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("verify reports each postulate") {
  auto r = invoke({"--spec", "hydrogen1d", "verify"});
  CHECK(r.code == cli::kExitOk);
  for (const char* name : {"continuity PASS", "unity PASS", "temporal PASS", "action PASS",
                           "overall PASS"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }

  auto t = invoke({"--spec", "custom_table", "--levels", "0,1,1.5,1.8", "verify"});
  CHECK(t.code == cli::kExitOk);
  CHECK(t.out.find("unity SKIPPED") != std::string::npos);
  CHECK(t.out.find("overall PASS") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"--spec", "harmonic", "verify"};
  CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(invoke({"--spec", "bogus", "table"}).code == cli::kExitUsage);
  CHECK(invoke({"--spec", "harmonic", "table", "--n-max", "abc"}).code == cli::kExitUsage);
  CHECK(invoke({"--spec", "custom_table", "--levels", "0,1,0.5", "table"}).code ==
        cli::kExitUsage);
  CHECK(invoke({"--spec", "harmonic", "--omega", "-1", "table"}).code == cli::kExitUsage);
  CHECK(invoke({"--config", "/nonexistent/cohstate.json", "table"}).code == cli::kExitUsage);

  const auto bad = temp_path("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(invoke({"--config", bad.string(), "table"}).code == cli::kExitUsage);
  std::filesystem::remove(bad);
}

TEST_CASE("domain errors exit with 1") {
  auto r = invoke({"--spec", "hydrogen1d", "state", "--J", "1.5", "--gamma", "0"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.find("OutOfDomain") != std::string::npos);
  CHECK(invoke({"--spec", "custom_table", "--levels", "0,1,2", "table", "--n-max", "5"}).code ==
        cli::kExitFailure);
}

TEST_CASE("flags override the config file") {
  const auto cfg = temp_path("cfg.json");
  std::ofstream(cfg) << R"({"spectrum": {"kind": "harmonic", "omega": 2.0},
                           "params": {"n_max": 2}})";
  auto from_file = invoke({"--config", cfg.string(), "table"});
  REQUIRE(from_file.code == cli::kExitOk);
  CHECK(data_lines(from_file.out).back() == "2,2,2,0.693147180559945");
  CHECK(from_file.out.find(R"("omega":2.0)") != std::string::npos);

  auto overridden = invoke({"--config", cfg.string(), "--spec", "hydrogen1d", "table", "--n-max",
                            "1"});
  REQUIRE(overridden.code == cli::kExitOk);
  CHECK(data_lines(overridden.out).back() == "1,0.75,0.75,-0.287682072451781");
  CHECK(overridden.out.find(R"("kind":"hydrogen1d","omega":2.0)") != std::string::npos);
  std::filesystem::remove(cfg);
}

TEST_CASE("custom formula spectra from flags") {
  auto r = invoke({"--spec", "custom_formula", "--family", "affine", "--scale", "1", "table",
                   "--n-max", "4"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(data_lines(r.out).back() == "4,4,24,3.17805383034795");
}

TEST_CASE("--out writes to a file") {
  const auto path = temp_path("out.csv");
  auto r = invoke({"--spec", "harmonic", "--out", path.string(), "table", "--n-max", "2"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(data_lines(buf.str()).back() == "2,2,2,0.693147180559945");
  std::filesystem::remove(path);
}
