#include <algorithm>
#include <cmath>
#include <cstring>

#include "fft.hpp"
#include "helix/error.hpp"
#include "helix/solver.hpp"

namespace helix {

namespace detail {

RealFft::RealFft(int n) : n_(n) {
  real_ = fftw_alloc_real(static_cast<std::size_t>(n));
  spec_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  fftw_destroy_plan(forward_plan_);
  fftw_destroy_plan(inverse_plan_);
  fftw_free(real_);
  fftw_free(spec_);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> x) {
  std::copy(x.begin(), x.end(), real_);
  fftw_execute(forward_plan_);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n_ / 2 + 1));
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = {spec_[m][0], spec_[m][1]};
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> spectrum) {
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    spec_[m][0] = spectrum[m].real();
    spec_[m][1] = spectrum[m].imag();
  }
  fftw_execute(inverse_plan_);
  return {real_, real_ + n_};
}

}  // namespace detail

GridField::GridField(Grid g)
    : grid(std::move(g)), u1(grid.size(), 0.0), u2(grid.size(), 0.0), psi(grid.size(), 0.0), f(grid.size(), 0.0) {}

std::vector<double> sample_on_grid(const Grid& grid, const ScalarFunction& fn) {
  std::vector<double> out(grid.size());
  for (int i = 0; i < grid.n_r; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      out[grid.index(i, j)] = fn(grid.r[static_cast<std::size_t>(i)], grid.phi[static_cast<std::size_t>(j)]);
  return out;
}

ScalarFunction gaussian_source(std::vector<GaussianCharge> charges) {
  for (const auto& q : charges)
    if (!(q.width > 0.0)) throw ValidationError("source.gaussians.width", "width must be > 0");
  return [charges = std::move(charges)](double r, double phi) {
    double sum = 0.0;
    for (const auto& q : charges) {
      const double d2 = std::max(0.0, r * r + q.r0 * q.r0 - 2.0 * r * q.r0 * std::cos(phi - q.phi0));
      sum += q.amplitude * std::exp(-0.5 * d2 / (q.width * q.width));
    }
    return sum;
  };
}

std::vector<GaussianCharge> opposite_charge_pair(double r0, double amplitude, double width) {
  return {{r0, 0.0, amplitude, width}, {r0, M_PI, -amplitude, width}};
}

std::vector<double> reconstruct_psi(const Grid& grid, std::span<const double> u2, std::span<const double> inner) {
  std::vector<double> psi(grid.size(), 0.0);
  for (int j = 0; j < grid.n_phi; ++j) {
    double acc = inner.empty() ? 0.0 : inner[static_cast<std::size_t>(j)];
    psi[grid.index(0, j)] = acc;
    for (int i = 1; i < grid.n_r; ++i) {
      const double left = u2[grid.index(i - 1, j)] / grid.r[static_cast<std::size_t>(i - 1)];
      const double right = u2[grid.index(i, j)] / grid.r[static_cast<std::size_t>(i)];
      acc += 0.5 * grid.h_r * (left + right);
      psi[grid.index(i, j)] = acc;
    }
  }
  return psi;
}

std::vector<double> spectral_dphi(const Grid& grid, std::span<const double> values) {
  detail::RealFft fft(grid.n_phi);
  std::vector<double> out(grid.size());
  const int half = grid.n_phi / 2;
  for (int i = 0; i < grid.n_r; ++i) {
    auto spectrum = fft.forward(values.subspan(grid.index(i, 0), static_cast<std::size_t>(grid.n_phi)));
    for (int m = 0; m <= half; ++m) {
      const double scale = m == half ? 0.0 : static_cast<double>(m) / grid.n_phi;
      spectrum[static_cast<std::size_t>(m)] *= std::complex<double>(0.0, scale);
    }
    const auto line = fft.inverse(spectrum);
    std::copy(line.begin(), line.end(), out.begin() + static_cast<std::ptrdiff_t>(grid.index(i, 0)));
  }
  return out;
}

std::vector<double> fd_r_dr(const Grid& grid, std::span<const double> v) {
  std::vector<double> out(grid.size());
  const int n = grid.n_r - 1;
  const double inv2h = 1.0 / (2.0 * grid.h_r);
  for (int j = 0; j < grid.n_phi; ++j) {
    auto at = [&](int i) { return v[grid.index(i, j)]; };
    for (int i = 0; i <= n; ++i) {
      double d;
      if (i == 0)
        d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
      else if (i == n)
        d = (3.0 * at(n) - 4.0 * at(n - 1) + at(n - 2)) * inv2h;
      else
        d = (at(i + 1) - at(i - 1)) * inv2h;
      out[grid.index(i, j)] = grid.r[static_cast<std::size_t>(i)] * d;
    }
  }
  return out;
}

CellResiduals cell_residuals(const GridField& field, const DomainParams& params) {
  const Grid& g = field.grid;
  const int cells_r = g.n_r - 1;
  const std::size_t n_cells = static_cast<std::size_t>(cells_r) * static_cast<std::size_t>(g.n_phi);
  CellResiduals res;
  res.eq1.resize(n_cells);
  res.eq2.resize(n_cells);
  res.weight.resize(n_cells);
  res.r_center.resize(n_cells);
  for (int i = 0; i < cells_r; ++i) {
    const double rc = 0.5 * (g.r[static_cast<std::size_t>(i)] + g.r[static_cast<std::size_t>(i + 1)]);
    const double xc = chi(rc, params);
    for (int j = 0; j < g.n_phi; ++j) {
      const int jp = (j + 1) % g.n_phi;
      const std::size_t a = g.index(i, j), b = g.index(i + 1, j), c = g.index(i, jp), d = g.index(i + 1, jp);
      auto dr = [&](const std::vector<double>& u) { return (u[b] - u[a] + u[d] - u[c]) / (2.0 * g.h_r); };
      auto dphi = [&](const std::vector<double>& u) { return (u[c] - u[a] + u[d] - u[b]) / (2.0 * g.h_phi); };
      const double fc = 0.25 * (field.f[a] + field.f[b] + field.f[c] + field.f[d]);
      const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(g.n_phi) + static_cast<std::size_t>(j);
      res.eq1[k] = dr(field.u2) / rc + xc / (rc * rc) * dphi(field.u1) - fc;
      res.eq2[k] = dr(field.u1) / rc - dphi(field.u2) / (rc * rc);
      res.weight[k] = rc * g.h_r * g.h_phi;
      res.r_center[k] = rc;
    }
  }
  return res;
}

ResidualNorms residual_norm(const GridField& field, const DomainParams& params) {
  const CellResiduals res = cell_residuals(field, params);
  ResidualNorms norms;
  for (std::size_t k = 0; k < res.eq1.size(); ++k) {
    norms.eq1 += res.weight[k] * res.eq1[k] * res.eq1[k];
    norms.eq2 += res.weight[k] * res.eq2[k] * res.eq2[k];
  }
  norms.eq1 = std::sqrt(norms.eq1);
  norms.eq2 = std::sqrt(norms.eq2);
  return norms;
}

double weighted_objective(const GridField& field, const DomainParams& params, const MultiplierParams& mult) {
  const CellResiduals res = cell_residuals(field, params);
  double sum = 0.0;
  for (std::size_t k = 0; k < res.eq1.size(); ++k) {
    const Vec2 lr = matrix_l(res.r_center[k], params, mult) * Vec2(res.eq1[k], res.eq2[k]);
    sum += res.weight[k] * lr.squaredNorm();
  }
  return std::sqrt(sum);
}

double l2_norm(const Grid& grid, std::span<const double> values) {
  double sum = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double wr = (i == 0 || i == grid.n_r - 1) ? 0.5 * grid.h_r : grid.h_r;
    const double r = grid.r[static_cast<std::size_t>(i)];
    double line = 0.0;
    for (int j = 0; j < grid.n_phi; ++j) line += values[grid.index(i, j)] * values[grid.index(i, j)];
    sum += wr * grid.h_phi * r * line;
  }
  return std::sqrt(sum);
}

}  // namespace helix
