#include <cmath>
#include <string>

#include "fft.hpp"
#include "helix/error.hpp"
#include "helix/shift.hpp"
#include "helix/solver.hpp"
#include "helix/tridiagonal.hpp"

namespace helix {

std::vector<std::complex<double>> solve_mode_bvp(const DomainParams& params, double sigma, double tau, int m,
                                                 std::span<const double> r,
                                                 std::span<const std::complex<double>> f_m,
                                                 std::complex<double> inner, std::complex<double> outer) {
  using cplx = std::complex<double>;
  const std::size_t n = r.size() - 1;
  if (r.size() < 3 || f_m.size() != r.size())
    throw ValidationError("mode_bvp", "need >= 3 nodes and one source value per node");
  const double h = (r.back() - r.front()) / static_cast<double>(n);
  const double inv_h2 = 1.0 / (h * h);
  const double mm = static_cast<double>(m) * static_cast<double>(m);

  auto lower = [&](std::size_t i) { return inv_h2 - 1.0 / (2.0 * h * r[i]); };
  auto upper = [&](std::size_t i) { return inv_h2 + 1.0 / (2.0 * h * r[i]); };
  // Built from the rounded off-diagonals so that rows annihilate constants exactly.
  auto center = [&](std::size_t i) { return -(lower(i) + upper(i)) - mm * chi(r[i], params) / (r[i] * r[i]); };

  // Unknowns psi_1 .. psi_n live in rows 0 .. n-1.
  TridiagonalSystem sys(n);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t row = i - 1;
    sys.lower[row] = lower(i);
    sys.diag[row] = center(i);
    sys.upper[row] = upper(i);
    sys.rhs[row] = f_m[i];
  }
  sys.rhs[0] -= lower(1) * inner;

  // tau R (3 psi_n - 4 psi_{n-1} + psi_{n-2}) / (2h) + i sigma m psi_n = outer,
  // with psi_{n-2} eliminated through the interior row at n-1.
  const double e = tau * params.big_r / (2.0 * h);
  const cplx bc_self = 3.0 * e + cplx(0.0, sigma * m);
  const std::size_t last = n - 1;
  if (n == 2) {
    sys.lower[last] = -4.0 * e;
    sys.diag[last] = bc_self;
    sys.rhs[last] = outer - e * inner;
  } else {
    const double a = lower(n - 1);
    if (a == 0.0) throw SolverError("mode " + std::to_string(m) + ": grid too coarse for the outer closure");
    const double b = center(n - 1);
    const double c = upper(n - 1);
    sys.lower[last] = -4.0 * e - e * b / a;
    sys.diag[last] = bc_self - e * c / a;
    sys.rhs[last] = outer - e * f_m[n - 1] / a;
  }
  sys.upper[last] = 0.0;
  sys.lower[0] = 0.0;

  if (!solve_refined(sys))
    throw SolverError("mode " + std::to_string(m) + ": singular tridiagonal system (resonant or degenerate mode)");

  std::vector<cplx> psi(r.size());
  psi[0] = inner;
  for (std::size_t i = 1; i <= n; ++i) psi[i] = sys.rhs[i - 1];
  return psi;
}

GridField solve_modes(const DomainParams& params, const BoundarySpec& spec, const Grid& grid,
                      std::span<const double> f, const ModeSolveOptions& options) {
  validate(params);
  if (!spec.has_constant_coefficients())
    throw ValidationError("boundary", "the mode solver needs constant sigma and tau");
  if (f.size() != grid.size()) throw ValidationError("source", "source size does not match the grid");

  const ShiftData shift = lambda_shift_build(spec, params);
  const double sigma = spec.sigma.mean();
  const double tau = spec.tau.mean();
  const int n_phi = grid.n_phi;
  const int half = n_phi / 2;
  const int n_modes = options.n_modes < 0 ? half - 1 : std::min(options.n_modes, half - 1);

  GridField field(grid);
  std::copy(f.begin(), f.end(), field.f.begin());

  // Mode coefficients of the shifted source, one row of spectra per radius.
  detail::RealFft fft(n_phi);
  std::vector<std::vector<std::complex<double>>> spectra(static_cast<std::size_t>(grid.n_r));
  std::vector<double> line(static_cast<std::size_t>(n_phi));
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.r[static_cast<std::size_t>(i)];
    for (int j = 0; j < n_phi; ++j)
      line[static_cast<std::size_t>(j)] =
          f[grid.index(i, j)] - shift.laplacian_terms(r, grid.phi[static_cast<std::size_t>(j)]);
    spectra[static_cast<std::size_t>(i)] = fft.forward(line);
  }

  std::vector<std::vector<std::complex<double>>> psi_hat(
      static_cast<std::size_t>(grid.n_r), std::vector<std::complex<double>>(static_cast<std::size_t>(half + 1)));
  std::vector<std::complex<double>> f_m(static_cast<std::size_t>(grid.n_r));
  for (int m = 0; m <= n_modes; ++m) {
    for (int i = 0; i < grid.n_r; ++i)
      f_m[static_cast<std::size_t>(i)] = spectra[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] / double(n_phi);
    const auto profile = solve_mode_bvp(params, sigma, tau, m, grid.r, f_m);
    for (int i = 0; i < grid.n_r; ++i)
      psi_hat[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] = profile[static_cast<std::size_t>(i)];
  }

  for (int i = 0; i < grid.n_r; ++i) {
    auto& spec_row = psi_hat[static_cast<std::size_t>(i)];
    const auto values = fft.inverse(spec_row);
    std::vector<std::complex<double>> deriv(spec_row.size());
    for (int m = 0; m <= half; ++m)
      deriv[static_cast<std::size_t>(m)] = spec_row[static_cast<std::size_t>(m)] * std::complex<double>(0.0, m);
    const auto dvalues = fft.inverse(deriv);
    for (int j = 0; j < n_phi; ++j) {
      field.psi[grid.index(i, j)] = values[static_cast<std::size_t>(j)];
      field.u1[grid.index(i, j)] = dvalues[static_cast<std::size_t>(j)];
    }
  }
  field.u2 = fd_r_dr(grid, field.psi);

  if (!shift.is_zero()) {
    for (int i = 0; i < grid.n_r; ++i) {
      const double r = grid.r[static_cast<std::size_t>(i)];
      for (int j = 0; j < n_phi; ++j) {
        const double phi = grid.phi[static_cast<std::size_t>(j)];
        const std::size_t k = grid.index(i, j);
        field.psi[k] += shift.value(r, phi);
        field.u1[k] += shift.d_phi(r, phi);
        field.u2[k] += r * shift.d_r(r, phi);
      }
    }
  }
  return field;
}

}  // namespace helix
