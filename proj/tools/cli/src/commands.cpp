#include "helix_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "helix/error.hpp"

namespace helix::cli {

using nlohmann::json;

namespace {

struct Problem {
  CertifiedSystem system;
  ScalarFunction f;
  std::optional<MmsEntry> entry;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

json multiplier_json(const MultiplierParams& m, bool automatic) {
  return {{"a", m.a}, {"alpha", m.alpha}, {"auto", automatic}};
}

Problem build_problem(const RunConfig& cfg) {
  CertifiedSystem system = certify_config(cfg);
  return std::visit(
      [&](const auto& src) -> Problem {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, ZeroSource>) {
          return {system, [](double, double) { return 0.0; }, std::nullopt};
        } else if constexpr (std::is_same_v<T, GaussianSource>) {
          return {system, gaussian_source(src.charges), std::nullopt};
        } else {
          MmsEntry entry = find_mms_entry(cfg.domain, src.label);
          const Manufactured data = mms_manufacture(entry, cfg.domain, system.boundary());
          return {system.with_boundary_data(data.inner_k, data.outer_l), data.f, std::move(entry)};
        }
      },
      cfg.source);
}

FoslsOptions fosls_options(const RunConfig& cfg) {
  FoslsOptions o;
  o.cg_tolerance = cfg.tolerances.cg_tolerance;
  o.cg_max_iterations = cfg.tolerances.cg_max_iterations;
  o.force_iterative = cfg.tolerances.force_iterative;
  return o;
}

GridField run_solver(SolverChoice choice, const RunConfig& cfg, const CertifiedSystem& system, const Grid& grid,
                     std::span<const double> f, FoslsStats* stats) {
  if (choice == SolverChoice::Modes) return solve_modes(system.domain(), system.boundary(), grid, f);
  return solve_fosls(system, grid, f, fosls_options(cfg), stats);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_constant_coefficients(const RunConfig& cfg, const char* command) {
  if (!cfg.boundary.has_constant_coefficients())
    throw ValidationError("boundary", std::string(command) + " needs constant sigma and tau");
}

}  // namespace

std::filesystem::path metadata_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

CertifiedSystem certify_config(const RunConfig& cfg) {
  if (cfg.multiplier) return CertifiedSystem::certify(cfg.domain, *cfg.multiplier, cfg.boundary, cfg.verify_options());
  const MultiplierParams m = choose_parameters(cfg.domain, cfg.boundary, cfg.choice_options());
  return CertifiedSystem::certify(cfg.domain, m, cfg.boundary, cfg.verify_options());
}

CommandResult cmd_verify(const RunConfig& cfg) {
  CommandResult res;
  MultiplierParams mult;
  try {
    mult = cfg.multiplier ? *cfg.multiplier : choose_parameters(cfg.domain, cfg.boundary, cfg.choice_options());
  } catch (const CertificationError& e) {
    res.exit_code = kCertification;
    res.report = {{"command", "verify"}, {"admissible", false}, {"first_failure", e.check()}, {"message", e.what()}};
    res.text = std::string("FAIL ") + e.what() + "\n";
    return res;
  }
  const VerifyOptions opts = cfg.verify_options();
  const VerifyReport r = verify_system(cfg.domain, mult, cfg.boundary, opts);
  const bool positivity = !r.first_failure || *r.first_failure != "positivity";
  json checks = {
      {"positivity", {{"min_eig", r.positivity_min_eig}, {"rel_margin", r.positivity_rel_margin}, {"pass", positivity}}},
      {"nondegeneracy", {{"min_abs_det", r.nondeg_min_abs_det}, {"ratio", r.nondeg_ratio},
                         {"pass", r.nondeg_ratio >= opts.margin}}},
      {"inner_admissibility", {{"min_eig", r.inner_mu_min_eig}, {"pass", r.inner_mu_min_eig >= -opts.tol_psd}}},
      {"outer_admissibility", {{"min_eig", r.outer_mu_min_eig}, {"pass", r.outer_mu_min_eig >= -opts.tol_psd}}},
      {"decomposition", {{"pass", r.decomposition_ok}}}};
  res.report = {{"command", "verify"},
                {"multiplier", multiplier_json(mult, !cfg.multiplier)},
                {"checks", checks},
                {"admissible", r.admissible},
                {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)}};
  res.exit_code = r.admissible ? kOk : kCertification;

  std::ostringstream out;
  out << "multiplier a = " << fmt(mult.a) << ", alpha = " << fmt(mult.alpha) << (cfg.multiplier ? "" : " (auto)")
      << "\n";
  for (const char* name :
       {"positivity", "nondegeneracy", "inner_admissibility", "outer_admissibility", "decomposition"}) {
    const json& c = checks[name];
    out << (c["pass"].get<bool>() ? "  pass  " : "  FAIL  ") << name;
    for (auto it = c.begin(); it != c.end(); ++it)
      if (it.key() != "pass") out << "  " << it.key() << "=" << fmt(it.value().get<double>());
    out << "\n";
  }
  out << (r.admissible ? "admissible\n" : "not admissible: " + *r.first_failure + "\n");
  res.text = out.str();
  return res;
}

CommandResult cmd_solve(const RunConfig& cfg, const std::filesystem::path& out_path) {
  if (cfg.solver == SolverChoice::Modes) require_constant_coefficients(cfg, "the mode solver");
  const Problem prob = build_problem(cfg);
  const Grid grid = build_grid(cfg.domain, cfg.n_r, cfg.n_phi);
  const std::vector<double> f = sample_on_grid(grid, prob.f);
  FoslsStats stats;
  const GridField field = run_solver(cfg.solver, cfg, prob.system, grid, f, &stats);

  std::ofstream csv(out_path);
  if (!csv) throw Error("cannot write " + out_path.string());
  csv << "r,phi,u1,u2,psi,f\n";
  char line[256];
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const std::size_t k = grid.index(i, j);
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", grid.r[static_cast<std::size_t>(i)],
                    grid.phi[static_cast<std::size_t>(j)], field.u1[k], field.u2[k], field.psi[k], field.f[k]);
      csv << line;
    }
  }
  csv.close();
  if (!csv) throw Error("failed while writing " + out_path.string());

  const ResidualNorms res_norms = residual_norm(field, cfg.domain);
  json meta = {{"config", to_json(cfg)},
               {"multiplier", multiplier_json(prob.system.multiplier(), !cfg.multiplier)},
               {"solver", to_string(cfg.solver)},
               {"grid", {{"n_r", grid.n_r}, {"n_phi", grid.n_phi}, {"h_r", grid.h_r}, {"h_phi", grid.h_phi}}},
               {"residual_l2", {{"eq1", res_norms.eq1}, {"eq2", res_norms.eq2}}},
               {"max_abs", {{"u1", max_abs(field.u1)}, {"u2", max_abs(field.u2)}, {"psi", max_abs(field.psi)}}},
               {"psi_l2", l2_norm(grid, field.psi)},
               {"fields_csv", out_path.filename().string()}};
  if (cfg.solver == SolverChoice::Fosls)
    meta["fosls"] = {{"unknowns", stats.unknowns},
                     {"residual_rows", stats.residual_rows},
                     {"objective", stats.objective},
                     {"iterative", stats.used_iterative},
                     {"iterations", stats.iterations}};
  if (prob.entry) {
    const ErrorNorms err = error_norms(field, *prob.entry);
    meta["mms_error"] = {{"entry", prob.entry->label}, {"l2", err.l2}, {"h1_semi", err.h1_semi}};
  }
  const auto meta_path = metadata_path(out_path);
  std::ofstream mout(meta_path);
  if (!mout) throw Error("cannot write " + meta_path.string());
  mout << meta.dump(2) << "\n";

  CommandResult res;
  res.report = meta;
  res.report["command"] = "solve";
  res.report["metadata"] = meta_path.filename().string();
  std::ostringstream text;
  text << "solved " << grid.n_r << "x" << grid.n_phi << " with " << to_string(cfg.solver) << ", a = "
       << fmt(prob.system.multiplier().a) << ", alpha = " << fmt(prob.system.multiplier().alpha) << "\n"
       << "  max|psi| = " << fmt(max_abs(field.psi)) << ", residual L2 = (" << fmt(res_norms.eq1) << ", "
       << fmt(res_norms.eq2) << ")\n";
  if (prob.entry)
    text << "  error vs " << prob.entry->label << ": L2 = " << fmt(meta["mms_error"]["l2"].get<double>())
         << ", H1 = " << fmt(meta["mms_error"]["h1_semi"].get<double>()) << "\n";
  text << "  wrote " << out_path.string() << " and " << meta_path.string() << "\n";
  res.text = text.str();
  return res;
}

namespace {

std::string table_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "h,l2_err,h1_err,rate\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,", r.h, r.l2_err, r.h1_err);
    out << line;
    if (r.rate) {
      std::snprintf(line, sizeof line, "%.6f", *r.rate);
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

json oracle_block(const RunConfig& cfg, const MmsEntry& entry, const CertifiedSystem& system) {
  const Manufactured data = mms_manufacture(entry, cfg.domain, system.boundary());
  const double sigma = system.boundary().sigma.mean();
  const double tau = system.boundary().tau.mean();
  OracleOptions opts;
  opts.fine_intervals = cfg.tolerances.oracle_intervals;
  opts.disagreement_limit = cfg.tolerances.oracle_disagreement;
  json modes = json::array();
  for (int m = 0; m <= entry.angular.degree(); ++m) {
    const auto t_m = mode_coefficient([&](double, double phi) { return entry.angular(phi); }, m)(0.0);
    if (std::abs(t_m) < 1e-14) continue;
    const auto k_m = mode_coefficient([&](double, double phi) { return data.inner_k(phi); }, m)(0.0);
    const auto l_m = mode_coefficient([&](double, double phi) { return data.outer_l(phi); }, m)(0.0);
    const OracleProfile prof =
        oracle_mode_solve(cfg.domain, sigma, tau, mode_coefficient(data.f, m), m, k_m, l_m, opts);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
      const auto exact = entry.g(prof.r[i]) * t_m;
      worst = std::max(worst, std::abs(prof.psi[i] - exact));
      scale = std::max(scale, std::abs(exact));
    }
    modes.push_back({{"m", m},
                     {"order_estimate", prof.order_estimate},
                     {"estimated_error", prof.estimated_error},
                     {"max_rel_error_vs_exact", scale > 0.0 ? worst / scale : worst}});
  }
  return modes;
}

}  // namespace

CommandResult cmd_mms(const RunConfig& cfg, int levels, const std::optional<std::filesystem::path>& out) {
  if (levels < 3) throw ValidationError("levels", "need at least 3 levels for a rate");
  if (cfg.solver == SolverChoice::Modes) require_constant_coefficients(cfg, "the mode solver");
  const CertifiedSystem system = certify_config(cfg);
  std::vector<MmsEntry> entries;
  if (const auto* src = std::get_if<MmsSource>(&cfg.source))
    entries.push_back(find_mms_entry(cfg.domain, src->label));
  else
    entries = mms_catalog(cfg.domain);
  if (out && entries.size() != 1) throw ValidationError("source.mms", "--out needs a single manufactured entry");

  ConvergenceOptions opts;
  opts.levels = levels;

  CommandResult res;
  res.report = {{"command", "mms"},
                {"solver", to_string(cfg.solver)},
                {"multiplier", multiplier_json(system.multiplier(), !cfg.multiplier)}};
  json tables = json::array();
  std::ostringstream text;
  for (const auto& entry : entries) {
    const auto rows = convergence_study(entry, system, cfg.solver, opts);
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back({{"n_r", r.n_r},
                       {"n_phi", r.n_phi},
                       {"h", r.h},
                       {"l2_err", r.l2_err},
                       {"h1_err", r.h1_err},
                       {"rate", r.rate ? json(*r.rate) : json(nullptr)}});
    json table = {{"entry", entry.label}, {"rows", jrows}};
    if (system.boundary().has_constant_coefficients()) table["oracle"] = oracle_block(cfg, entry, system);
    tables.push_back(table);
    const std::string csv = table_csv(rows);
    text << "# " << entry.label << " (" << to_string(cfg.solver) << ")\n" << csv;
    if (out) {
      std::ofstream f(*out);
      if (!f) throw Error("cannot write " + out->string());
      f << csv;
    }
  }
  res.report["tables"] = tables;
  res.text = text.str();
  return res;
}

CommandResult cmd_compare(const RunConfig& cfg) {
  require_constant_coefficients(cfg, "compare");
  const Problem prob = build_problem(cfg);
  const Grid grid = build_grid(cfg.domain, cfg.n_r, cfg.n_phi);
  const std::vector<double> f = sample_on_grid(grid, prob.f);
  const GridField modes = run_solver(SolverChoice::Modes, cfg, prob.system, grid, f, nullptr);
  const GridField fosls = run_solver(SolverChoice::Fosls, cfg, prob.system, grid, f, nullptr);
  std::vector<double> diff(grid.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = modes.psi[k] - fosls.psi[k];
  const double discrepancy = l2_norm(grid, diff);
  const double scale = l2_norm(grid, modes.psi);
  const double rel_discrepancy = scale > 0.0 ? discrepancy / scale : discrepancy;

  // Each solver's own accuracy at this resolution, from the manufactured catalog.
  const CertifiedSystem base = certify_config(cfg);
  double worst_modes = 0.0;
  double worst_fosls = 0.0;
  json per_entry = json::array();
  for (const auto& entry : mms_catalog(cfg.domain)) {
    const Manufactured data = mms_manufacture(entry, cfg.domain, base.boundary());
    const CertifiedSystem sys = base.with_boundary_data(data.inner_k, data.outer_l);
    const std::vector<double> fm = sample_on_grid(grid, data.f);
    const double exact = l2_norm(grid, sample_on_grid(grid, [&](double r, double phi) {
                                   return entry.psi_exact(r, phi);
                                 }));
    const double em = error_norms(run_solver(SolverChoice::Modes, cfg, sys, grid, fm, nullptr), entry).l2 / exact;
    const double ef = error_norms(run_solver(SolverChoice::Fosls, cfg, sys, grid, fm, nullptr), entry).l2 / exact;
    worst_modes = std::max(worst_modes, em);
    worst_fosls = std::max(worst_fosls, ef);
    per_entry.push_back({{"entry", entry.label}, {"modes_rel_l2", em}, {"fosls_rel_l2", ef}});
  }
  const double bound = std::max(worst_modes, worst_fosls);

  CommandResult res;
  res.report = {{"command", "compare"},
                {"grid", {{"n_r", grid.n_r}, {"n_phi", grid.n_phi}}},
                {"multiplier", multiplier_json(prob.system.multiplier(), !cfg.multiplier)},
                {"discrepancy_l2", discrepancy},
                {"relative_discrepancy", rel_discrepancy},
                {"mms_rel_error", {{"modes", worst_modes}, {"fosls", worst_fosls}, {"entries", per_entry}}},
                {"within_mms_error", rel_discrepancy <= bound}};
  std::ostringstream text;
  text << "grid " << grid.n_r << "x" << grid.n_phi << "\n"
       << "  L2 discrepancy modes vs fosls: " << fmt(discrepancy) << " (relative " << fmt(rel_discrepancy) << ")\n"
       << "  worst relative MMS error: modes " << fmt(worst_modes) << ", fosls " << fmt(worst_fosls) << "\n"
       << (rel_discrepancy <= bound ? "  within" : "  EXCEEDS") << " the larger solver MMS error\n";
  res.text = text.str();
  return res;
}

}  // namespace helix::cli
