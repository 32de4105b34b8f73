#include "helix/mms_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "helix/error.hpp"

namespace helix {

namespace {

constexpr double kPi = std::numbers::pi;
// Level-to-level changes below this (relative) are round-off, not truncation.
constexpr double kSaturated = 1e-11;

MmsEntry quadratic_entry(const DomainParams& params, std::string label, PeriodicFunction angular) {
  const double eps = params.epsilon;
  MmsEntry e;
  e.label = std::move(label);
  e.g = [eps](double r) { return (r - eps) * (r - eps); };
  e.dg = [eps](double r) { return 2.0 * (r - eps); };
  e.d2g = [](double) { return 2.0; };
  e.d3g = [](double) { return 0.0; };
  e.angular = std::move(angular);
  return e;
}

MmsEntry sine_entry(const DomainParams& params) {
  const double eps = params.epsilon;
  const double k = kPi / (params.big_r - params.epsilon);
  MmsEntry e;
  e.label = "sine_cos3";
  e.g = [eps, k](double r) { return std::sin(k * (r - eps)); };
  e.dg = [eps, k](double r) { return k * std::cos(k * (r - eps)); };
  e.d2g = [eps, k](double r) { return -k * k * std::sin(k * (r - eps)); };
  e.d3g = [eps, k](double r) { return -k * k * k * std::cos(k * (r - eps)); };
  e.angular = PeriodicFunction::cosine(3);
  return e;
}

std::vector<double> uniform_nodes(const DomainParams& params, int intervals) {
  std::vector<double> r(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double t = static_cast<double>(i) / intervals;
    r[static_cast<std::size_t>(i)] = params.epsilon * (1.0 - t) + params.big_r * t;
  }
  return r;
}

std::vector<std::complex<double>> solve_at(const DomainParams& params, double sigma, double tau,
                                           const std::function<std::complex<double>(double)>& f_m, int m,
                                           std::complex<double> inner, std::complex<double> outer,
                                           int intervals) {
  const std::vector<double> r = uniform_nodes(params, intervals);
  std::vector<std::complex<double>> f(r.size());
  std::transform(r.begin(), r.end(), f.begin(), f_m);
  return solve_mode_bvp(params, sigma, tau, m, r, f, inner, outer);
}

}  // namespace

std::vector<MmsEntry> mms_catalog(const DomainParams& params) {
  return {quadratic_entry(params, "quadratic", PeriodicFunction::constant(1.0)),
          quadratic_entry(params, "quadratic_sin2", PeriodicFunction::sine(2)), sine_entry(params)};
}

MmsEntry find_mms_entry(const DomainParams& params, const std::string& label) {
  for (auto& e : mms_catalog(params))
    if (e.label == label) return e;
  throw ValidationError("source.mms", "unknown manufactured solution '" + label + "'");
}

Manufactured mms_manufacture(const MmsEntry& entry, const DomainParams& params, const BoundarySpec& spec) {
  Manufactured out;
  out.f = [entry, params](double r, double phi) {
    const double radial = entry.d2g(r) + entry.dg(r) / r;
    return radial * entry.angular(phi) + chi(r, params) / (r * r) * entry.g(r) * entry.angular.derivative(phi, 2);
  };
  const double big_r = params.big_r;
  out.inner_k = entry.g(params.epsilon) * entry.angular;
  out.outer_l = (big_r * entry.dg(big_r)) * (spec.tau * entry.angular) +
                entry.g(big_r) * (spec.sigma * entry.angular.derivative_function());
  return out;
}

BoundarySpec with_manufactured_data(const BoundarySpec& spec, const Manufactured& data) {
  BoundarySpec out = spec;
  out.inner_k = data.inner_k;
  out.outer_l = data.outer_l;
  return out;
}

std::function<std::complex<double>(double)> mode_coefficient(ScalarFunction f, int m, int samples) {
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(samples));
  std::vector<double> phi(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    phi[static_cast<std::size_t>(j)] = 2.0 * kPi * j / samples;
    phase[static_cast<std::size_t>(j)] = std::polar(1.0 / samples, -m * phi[static_cast<std::size_t>(j)]);
  }
  return [f = std::move(f), phase = std::move(phase), phi = std::move(phi)](double r) {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) sum += f(r, phi[j]) * phase[j];
    return sum;
  };
}

std::complex<double> OracleProfile::at(double r_value) const {
  const std::size_t n = r.size();
  const double h = (r.back() - r.front()) / static_cast<double>(n - 1);
  const double x = (r_value - r.front()) / h;
  auto start = static_cast<std::ptrdiff_t>(std::floor(x)) - 1;
  start = std::clamp<std::ptrdiff_t>(start, 0, static_cast<std::ptrdiff_t>(n) - 4);
  std::complex<double> sum = 0.0;
  for (std::ptrdiff_t a = start; a < start + 4; ++a) {
    double w = 1.0;
    for (std::ptrdiff_t b = start; b < start + 4; ++b)
      if (b != a) w *= (x - static_cast<double>(b)) / static_cast<double>(a - b);
    sum += w * psi[static_cast<std::size_t>(a)];
  }
  return sum;
}

OracleProfile oracle_mode_solve(const DomainParams& params, double sigma, double tau,
                                const std::function<std::complex<double>(double)>& f_m, int m,
                                std::complex<double> inner, std::complex<double> outer,
                                const OracleOptions& options) {
  const int fine_n = options.fine_intervals;
  if (fine_n < 16 || fine_n % 4 != 0)
    throw ValidationError("oracle.fine_intervals", "must be a multiple of 4 and at least 16");
  const auto fine = solve_at(params, sigma, tau, f_m, m, inner, outer, fine_n);
  const auto half = solve_at(params, sigma, tau, f_m, m, inner, outer, fine_n / 2);
  const auto quarter = solve_at(params, sigma, tau, f_m, m, inner, outer, fine_n / 4);

  OracleProfile prof;
  prof.m = m;
  prof.r = uniform_nodes(params, fine_n / 2);
  prof.psi.resize(half.size());
  double scale = 0.0;
  double gap_prev = 0.0;
  double step_fine = 0.0;
  double step_half = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) {
    prof.psi[i] = (4.0 * fine[2 * i] - half[i]) / 3.0;
    scale = std::max(scale, std::abs(prof.psi[i]));
    step_fine = std::max(step_fine, std::abs(fine[2 * i] - half[i]));
  }
  for (std::size_t i = 0; i < quarter.size(); ++i) {
    const auto coarse_ext = (4.0 * half[2 * i] - quarter[i]) / 3.0;
    gap_prev = std::max(gap_prev, std::abs(prof.psi[2 * i] - coarse_ext));
    step_half = std::max(step_half, std::abs(half[2 * i] - quarter[i]));
  }
  if (scale > 0.0) {
    prof.estimated_error = gap_prev / scale;
    prof.disagreement = step_fine / scale;
    prof.order_estimate = step_half > kSaturated * scale ? std::log2(step_half / step_fine)
                                                         : std::numeric_limits<double>::quiet_NaN();
  }
  if (prof.disagreement > options.disagreement_limit)
    throw SolverError("oracle resolutions disagree by " + std::to_string(prof.disagreement) + " for mode " +
                      std::to_string(m));
  return prof;
}

ErrorNorms error_norms(const GridField& field, const MmsEntry& entry) {
  const Grid& grid = field.grid;
  std::vector<double> value(grid.size());
  std::vector<double> radial(grid.size());
  std::vector<double> angular(grid.size());
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.r[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = grid.phi[static_cast<std::size_t>(j)];
      const std::size_t k = grid.index(i, j);
      value[k] = field.psi[k] - entry.psi_exact(r, phi);
      radial[k] = field.u2[k] / r - entry.dpsi_dr(r, phi);
      angular[k] = (field.u1[k] - entry.dpsi_dphi(r, phi)) / r;
    }
  }
  ErrorNorms out;
  out.l2 = l2_norm(grid, value);
  out.h1_semi = std::hypot(l2_norm(grid, radial), l2_norm(grid, angular));
  return out;
}

const char* to_string(SolverChoice choice) {
  return choice == SolverChoice::Modes ? "modes" : "fosls";
}

std::vector<ConvergenceRow> convergence_study(const MmsEntry& entry, const CertifiedSystem& system,
                                              SolverChoice solver, const ConvergenceOptions& options) {
  if (options.levels < 1) throw ValidationError("levels", "must be >= 1");
  const DomainParams& params = system.domain();
  const Manufactured data = mms_manufacture(entry, params, system.boundary());
  const BoundarySpec spec = with_manufactured_data(system.boundary(), data);
  const CertifiedSystem with_data = system.with_boundary_data(data.inner_k, data.outer_l);

  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < options.levels; ++level) {
    const int intervals = options.base_intervals << level;
    const Grid grid = build_grid(params, intervals + 1, intervals);
    const std::vector<double> f = sample_on_grid(grid, data.f);
    const GridField field =
        solver == SolverChoice::Modes ? solve_modes(params, spec, grid, f) : solve_fosls(with_data, grid, f);
    const ErrorNorms err = error_norms(field, entry);
    ConvergenceRow row{grid.n_r, grid.n_phi, grid.h_r, err.l2, err.h1_semi, std::nullopt};
    if (!rows.empty()) {
      const double prev = rows.back().l2_err;
      if (prev > options.saturation && err.l2 > options.saturation) row.rate = std::log2(prev / err.l2);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace helix
