#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "helix/domain.hpp"
#include "helix/friedrichs_check.hpp"

namespace helix {

/// Nodal fields on a Grid, row-major with r outer. u1 = d_phi Psi,
/// u2 = r d_r Psi.
struct GridField {
  Grid grid;
  std::vector<double> u1;
  std::vector<double> u2;
  std::vector<double> psi;
  std::vector<double> f;

  explicit GridField(Grid g = {});
};

using ScalarFunction = std::function<double(double r, double phi)>;

std::vector<double> sample_on_grid(const Grid& grid, const ScalarFunction& fn);

/// A smoothed point charge exp(-d^2 / (2 w^2)) centred at (r0, phi0), d the
/// Euclidean distance in the plane.
struct GaussianCharge {
  double r0 = 0.5;
  double phi0 = 0.0;
  double amplitude = 1.0;
  double width = 0.1;
};

ScalarFunction gaussian_source(std::vector<GaussianCharge> charges);

/// Two opposite charges at (r0, 0) and (r0, pi).
std::vector<GaussianCharge> opposite_charge_pair(double r0, double amplitude, double width);

// --- Fourier-mode solver -------------------------------------------------

/// Second-order FD solve of one Fourier mode,
///   Psi'' + Psi'/r - (m^2 chi / r^2) Psi = f_m,
///   Psi(r_0) = inner,  tau R Psi'(R) + i sigma m Psi(R) = outer,
/// on the uniform nodes r (r.front() = epsilon, r.back() = R). The outer
/// derivative is one-sided second order. Returns all nodal values.
/// Throws SolverError naming m if the system is singular.
std::vector<std::complex<double>> solve_mode_bvp(const DomainParams& params, double sigma, double tau, int m,
                                                 std::span<const double> r,
                                                 std::span<const std::complex<double>> f_m,
                                                 std::complex<double> inner = 0.0,
                                                 std::complex<double> outer = 0.0);

struct ModeSolveOptions {
  /// Highest |m| kept; negative means n_phi/2 - 1 (the Nyquist mode is dropped).
  int n_modes = -1;
};

/// Fourier decomposition in phi, one tridiagonal solve per mode. Requires
/// constant sigma and tau; inhomogeneous data go through the Lambda shift.
GridField solve_modes(const DomainParams& params, const BoundarySpec& spec, const Grid& grid,
                      std::span<const double> f, const ModeSolveOptions& options = {});

// --- least-squares solver ------------------------------------------------

struct FoslsOptions {
  double cg_tolerance = 1e-10;
  int cg_max_iterations = 10000;
  bool force_iterative = false;
};

struct FoslsStats {
  std::size_t unknowns = 0;
  std::size_t residual_rows = 0;
  /// sqrt(sum_c w_c |L_c res_c|^2), w_c = r_c h_r h_phi, on the final field.
  double objective = 0.0;
  bool used_iterative = false;
  int iterations = 0;
};

/// Box-scheme residuals of the symmetric-positive system collocated at cell
/// centres, boundary conditions eliminated strongly, weighted normal
/// equations solved by sparse LDL^T (CG fallback).
GridField solve_fosls(const CertifiedSystem& system, const Grid& grid, std::span<const double> f,
                      const FoslsOptions& options = {}, FoslsStats* stats = nullptr);

// --- post-processing -----------------------------------------------------

/// Psi(r, phi) = Psi(epsilon, phi) + int_epsilon^r u2/r' dr' by the composite
/// trapezoid rule; `inner` supplies Psi(epsilon, phi) (zero when empty).
std::vector<double> reconstruct_psi(const Grid& grid, std::span<const double> u2,
                                    std::span<const double> inner = {});

/// Spectral phi-derivative of nodal data (Nyquist mode dropped).
std::vector<double> spectral_dphi(const Grid& grid, std::span<const double> values);

/// r d_r of nodal data: centred differences inside, one-sided second order at
/// both radial ends.
std::vector<double> fd_r_dr(const Grid& grid, std::span<const double> values);

struct CellResiduals {
  std::vector<double> eq1;
  std::vector<double> eq2;
  std::vector<double> weight;  ///< r_c h_r h_phi
  std::vector<double> r_center;
};

/// Box-scheme residuals of the two first-order equations at all cell centres.
CellResiduals cell_residuals(const GridField& field, const DomainParams& params);

struct ResidualNorms {
  double eq1 = 0.0;
  double eq2 = 0.0;
};

/// r-weighted discrete L2 norms of both first-order residuals.
ResidualNorms residual_norm(const GridField& field, const DomainParams& params);

/// sqrt(sum_c w_c |L_c res_c|^2).
double weighted_objective(const GridField& field, const DomainParams& params, const MultiplierParams& mult);

/// r-weighted discrete L2 norm (trapezoid in r, rectangle in phi).
double l2_norm(const Grid& grid, std::span<const double> values);

}  // namespace helix
