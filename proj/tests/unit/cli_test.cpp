#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "helix/error.hpp"
#include "helix_cli/commands.hpp"
#include "helix_cli/config.hpp"

using namespace helix;
using namespace helix::cli;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

json canonical() {
  return json::parse(R"({"schema": 1, "domain": {"omega": 1, "epsilon": 0.2, "R": 2},
                         "boundary": "sommerfeld+", "source": {"zero": true}, "grid": {"n_r": 65, "n_phi": 64}})");
}

std::string field_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<none>";
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("helix_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(HELIX_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MinimalConfigDefaultsToAutoMultiplier) {
  const auto cfg = parse_config(json::parse(R"({"domain": {"omega": 1, "epsilon": 0.2, "R": 2},
      "boundary": "sommerfeld+", "source": {"zero": true}, "grid": {"n_r": 33, "n_phi": 32}})"));
  EXPECT_FALSE(cfg.multiplier.has_value());
  EXPECT_EQ(cfg.solver, SolverChoice::Modes);
  EXPECT_DOUBLE_EQ(cfg.tolerances.tol_psd, 1e-10);
  EXPECT_DOUBLE_EQ(cfg.tolerances.margin, 0.1);
  EXPECT_EQ(cfg.tolerances.oracle_intervals, 16384);
  EXPECT_TRUE(std::holds_alternative<ZeroSource>(cfg.source));
}

TEST(Config, RoundTrips) {
  json doc = canonical();
  doc["boundary"] = json::parse(R"({"sigma": {"cos": [1.0], "sin": [0.2]}, "tau": 0.5, "outer_l": {"const": 0.3}})");
  doc["source"] = json::parse(R"({"gaussians": [{"r0": 1.0, "phi0": 0.5, "amplitude": 2, "width": 0.3}]})");
  doc["solver"] = "fosls";
  doc["multiplier"] = json::parse(R"({"a": -6, "alpha": 2.5})");
  const auto cfg = parse_config(doc);
  const auto again = parse_config(to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
  EXPECT_DOUBLE_EQ(again.multiplier->a, -6.0);
  EXPECT_NEAR(again.boundary.sigma(0.3), 1.0 + 0.2 * std::sin(0.3), 1e-15);
}

TEST(Config, ValidationErrorsCarryFieldPaths) {
  json doc = canonical();
  doc["domain"]["epsilon"] = 1.0;
  EXPECT_EQ(field_of(doc), "domain.epsilon");

  doc = canonical();
  doc["boundary"] = json::parse(R"({"sigma": {"cos": [0.1], "sin": [1.0]}, "tau": 1.0})");
  doc["solver"] = "fosls";
  EXPECT_EQ(field_of(doc), "boundary");

  doc = canonical();
  doc["boundary"] = json::parse(R"({"sigma": 1.0, "tau": 0.0})");
  EXPECT_EQ(field_of(doc), "boundary");

  doc = canonical();
  doc["boundry"] = "sommerfeld+";
  EXPECT_EQ(field_of(doc), "boundry");

  doc = canonical();
  doc["boundary"] = json::parse(R"({"sigma": 1.0, "tau": 1.0, "sgima": 2})");
  EXPECT_EQ(field_of(doc), "boundary.sgima");

  doc = canonical();
  doc["source"] = json::parse(R"({"gaussians": [{"r0": 1.0, "width": 0.0}]})");
  EXPECT_EQ(field_of(doc), "source.gaussians[0].width");

  doc = canonical();
  doc["source"] = json::parse(R"({"mms": "unknown"})");
  EXPECT_EQ(field_of(doc), "source.mms");

  doc = canonical();
  doc["grid"]["n_phi"] = 33;
  EXPECT_EQ(field_of(doc), "grid.n_phi");

  doc = canonical();
  doc["schema"] = 2;
  EXPECT_EQ(field_of(doc), "schema");

  doc = canonical();
  doc["domain"]["R"] = "two";
  EXPECT_EQ(field_of(doc), "domain.R");

  doc = canonical();
  doc["boundary"] = json::parse(R"({"sigma": 1.0, "tau": {"cos": [1.0], "sin": [0.3]}})");
  EXPECT_EQ(field_of(doc), "solver");
}

TEST(Commands, VerifyCanonical) {
  const auto res = cmd_verify(parse_config(canonical()));
  EXPECT_EQ(res.exit_code, kOk);
  EXPECT_TRUE(res.report["admissible"].get<bool>());
  EXPECT_DOUBLE_EQ(res.report["multiplier"]["alpha"].get<double>(), 2.0);
  EXPECT_LT(res.report["multiplier"]["a"].get<double>(), 0.0);
}

TEST(Commands, VerifyWrongSignMultiplier) {
  json doc = canonical();
  doc["multiplier"] = json::parse(R"({"a": 5, "alpha": 2})");
  const auto res = cmd_verify(parse_config(doc));
  EXPECT_EQ(res.exit_code, kCertification);
  EXPECT_EQ(res.report["first_failure"], "outer_admissibility");
  EXPECT_THROW(cmd_solve(parse_config(doc), scratch_dir() / "never.csv"), CertificationError);
  EXPECT_FALSE(fs::exists(scratch_dir() / "never.csv"));
}

TEST(Commands, SolveZeroSourceWritesZeros) {
  for (const char* solver : {"modes", "fosls"}) {
    json doc = canonical();
    doc["solver"] = solver;
    const fs::path out = scratch_dir() / (std::string("zero_") + solver + ".csv");
    cmd_solve(parse_config(doc), out);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "r,phi,u1,u2,psi,f");
    int rows = 0;
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string cell;
      std::vector<double> v;
      while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
      ASSERT_EQ(v.size(), 6u);
      for (int k = 2; k < 6; ++k) EXPECT_LE(std::abs(v[static_cast<std::size_t>(k)]), 1e-8);
      ++rows;
    }
    EXPECT_EQ(rows, 65 * 64);
    EXPECT_TRUE(fs::exists(metadata_path(out)));
  }
}

TEST(Commands, SolveIsByteStable) {
  json doc = canonical();
  doc["source"] = json::parse(R"({"gaussians": [{"r0": 1.0, "phi0": 0, "amplitude": 1, "width": 0.4}]})");
  doc["solver"] = "fosls";
  doc["grid"] = {{"n_r", 33}, {"n_phi", 32}};
  const auto cfg = parse_config(doc);
  const fs::path a = scratch_dir() / "stable_a.csv";
  const fs::path b = scratch_dir() / "stable_b.csv";
  cmd_solve(cfg, a);
  cmd_solve(cfg, b);
  EXPECT_EQ(slurp(a), slurp(b));
  auto ma = json::parse(slurp(metadata_path(a)));
  auto mb = json::parse(slurp(metadata_path(b)));
  ma.erase("fields_csv");
  mb.erase("fields_csv");
  EXPECT_EQ(ma.dump(), mb.dump());
}

TEST(Commands, SolveReportsManufacturedError) {
  json doc = canonical();
  doc["source"] = {{"mms", "sine_cos3"}};
  const auto res = cmd_solve(parse_config(doc), scratch_dir() / "mms.csv");
  EXPECT_LT(res.report["mms_error"]["l2"].get<double>(), 1e-2);
}

TEST(Commands, MmsRatesNearTwo) {
  json doc = canonical();
  doc["source"] = {{"mms", "sine_cos3"}};
  const fs::path out = scratch_dir() / "table.csv";
  const auto res = cmd_mms(parse_config(doc), 4, out);
  const auto rows = res.report["tables"][0]["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[3]["rate"].get<double>(), 2.0, 0.2);
  EXPECT_EQ(slurp(out).rfind("h,l2_err,h1_err,rate\n", 0), 0u);
  const auto oracle = res.report["tables"][0]["oracle"];
  ASSERT_FALSE(oracle.empty());
  EXPECT_NEAR(oracle[0]["order_estimate"].get<double>(), 2.0, 0.1);
  EXPECT_LT(oracle[0]["max_rel_error_vs_exact"].get<double>(), 1e-8);
}

TEST(Commands, CompareCanonicalGaussianPair) {
  json doc = canonical();
  doc["source"] = json::parse(R"({"gaussians": [{"r0": 1.0, "phi0": 0, "amplitude": 1, "width": 0.5},
                                                {"r0": 1.0, "phi0": 3.141592653589793, "amplitude": -1, "width": 0.5}]})");
  const auto res = cmd_compare(parse_config(doc));
  EXPECT_TRUE(res.report["within_mms_error"].get<bool>());
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir();
  auto write = [&](const std::string& name, const json& doc) {
    std::ofstream(dir / name) << doc.dump();
    return (dir / name).string();
  };
  const auto good = write("good.json", canonical());
  EXPECT_EQ(run_binary("verify --config " + good), 0);
  EXPECT_EQ(run_binary("verify --json --config " + good), 0);

  json bad_domain = canonical();
  bad_domain["domain"]["epsilon"] = 1.5;
  EXPECT_EQ(run_binary("verify --config " + write("bad_domain.json", bad_domain)), 2);

  json wrong_sign = canonical();
  wrong_sign["multiplier"] = json::parse(R"({"a": 5, "alpha": 2})");
  const auto ws = write("wrong_sign.json", wrong_sign);
  EXPECT_EQ(run_binary("verify --config " + ws), 3);
  EXPECT_EQ(run_binary("solve --config " + ws + " --out " + (dir / "ws.csv").string()), 3);
  EXPECT_FALSE(fs::exists(dir / "ws.csv"));

  json cg = canonical();
  cg["solver"] = "fosls";
  cg["source"] = json::parse(R"({"gaussians": [{"r0": 1.0, "width": 0.3}]})");
  cg["tolerances"] = {{"cg_max_iterations", 1}, {"force_iterative", true}};
  EXPECT_EQ(run_binary("solve --config " + write("cg.json", cg) + " --out " + (dir / "cg.csv").string()), 4);
  cg["tolerances"] = {{"cg_max_iterations", 1}};
  EXPECT_EQ(run_binary("solve --config " + write("cg2.json", cg) + " --out " + (dir / "cg2.csv").string()), 0);

  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_EQ(run_binary("verify --config " + (dir / "broken.json").string()), 2);
}
