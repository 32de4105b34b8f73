#include <iostream>

#include "CLI11.hpp"
#include "helix_cli/commands.hpp"
#include "helix/error.hpp"

int main(int argc, char** argv) {
  using namespace helix::cli;
  CLI::App app{"Symmetric-positive solver for the helically reduced wave equation on an annulus"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", as_json, "Print the report as JSON");
  };

  auto* verify = app.add_subcommand("verify", "Certify positivity, nondegeneracy and boundary admissibility");
  add_config(verify);

  std::string out_path;
  auto* solve = app.add_subcommand("solve", "Solve and write nodal fields");
  add_config(solve);
  solve->add_option("--out", out_path, "Fields CSV; metadata goes next to it")->required();

  int levels = 4;
  std::string table_path;
  auto* mms = app.add_subcommand("mms", "Convergence study against manufactured solutions");
  add_config(mms);
  mms->add_option("--levels", levels, "Grid doublings")->check(CLI::Range(3, 8));
  mms->add_option("--out", table_path, "Write the convergence table as CSV");

  auto* compare = app.add_subcommand("compare", "Cross-check the mode and least-squares solvers");
  add_config(compare);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(config_path);
    CommandResult res;
    if (*verify)
      res = cmd_verify(cfg);
    else if (*solve)
      res = cmd_solve(cfg, out_path);
    else if (*mms)
      res = cmd_mms(cfg, levels, table_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(table_path));
    else
      res = cmd_compare(cfg);
    if (as_json)
      std::cout << res.report.dump(2) << "\n";
    else
      std::cout << res.text;
    return res.exit_code;
  } catch (const helix::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const helix::CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kCertification;
  } catch (const helix::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
