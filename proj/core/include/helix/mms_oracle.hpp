#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "helix/domain.hpp"
#include "helix/friedrichs_check.hpp"
#include "helix/solver.hpp"

namespace helix {

/// Separable manufactured solution psi(r, phi) = g(r) T(phi) with closed-form
/// radial derivatives up to third order.
struct MmsEntry {
  std::string label;
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> d2g;
  std::function<double(double)> d3g;
  PeriodicFunction angular;

  double psi_exact(double r, double phi) const { return g(r) * angular(phi); }
  double dpsi_dr(double r, double phi) const { return dg(r) * angular(phi); }
  double dpsi_dphi(double r, double phi) const { return g(r) * angular.derivative(phi, 1); }
  double d2psi_dr2(double r, double phi) const { return d2g(r) * angular(phi); }
  double d2psi_dphi2(double r, double phi) const { return g(r) * angular.derivative(phi, 2); }
};

/// (r - eps)^2, (r - eps)^2 sin 2 phi, sin(pi (r - eps)/(R - eps)) cos 3 phi,
/// labelled "quadratic", "quadratic_sin2", "sine_cos3".
std::vector<MmsEntry> mms_catalog(const DomainParams& params);

/// Throws ValidationError for an unknown label.
MmsEntry find_mms_entry(const DomainParams& params, const std::string& label);

struct Manufactured {
  ScalarFunction f;
  PeriodicFunction inner_k;
  PeriodicFunction outer_l;
};

/// f = P[psi], k = psi(epsilon, .), l = tau R psi_r(R, .) + sigma psi_phi(R, .).
Manufactured mms_manufacture(const MmsEntry& entry, const DomainParams& params, const BoundarySpec& spec);

/// Copy of spec with the manufactured inhomogeneous data installed.
BoundarySpec with_manufactured_data(const BoundarySpec& spec, const Manufactured& data);

/// Mode coefficient f_m(r) = (1/2pi) int f(r, phi) e^{-i m phi} dphi by the
/// rectangle rule on `samples` points (exact for trigonometric polynomials of
/// degree < samples/2).
std::function<std::complex<double>(double)> mode_coefficient(ScalarFunction f, int m, int samples = 64);

struct OracleOptions {
  int fine_intervals = 16384;
  double disagreement_limit = 1e-4;
};

/// High-resolution reference for one Fourier mode.
struct OracleProfile {
  int m = 0;
  std::vector<double> r;                    ///< coarse (fine/2) nodes
  std::vector<std::complex<double>> psi;    ///< Richardson-extrapolated values
  double order_estimate = 0.0;              ///< from fine/4, fine/2, fine; NaN when saturated
  double estimated_error = 0.0;             ///< max |extrapolated - fine| / max |psi|
  double disagreement = 0.0;                ///< max |fine - coarse| / max |psi|

  /// Cubic Lagrange interpolation in r.
  std::complex<double> at(double r_value) const;
};

/// Throws SolverError when the two resolutions disagree beyond the limit.
OracleProfile oracle_mode_solve(const DomainParams& params, double sigma, double tau,
                                const std::function<std::complex<double>(double)>& f_m, int m,
                                std::complex<double> inner = 0.0, std::complex<double> outer = 0.0,
                                const OracleOptions& options = {});

struct ErrorNorms {
  double l2 = 0.0;       ///< ||psi - psi_exact|| with weight r
  double h1_semi = 0.0;  ///< from (u2/r - psi_r)^2 + (u1 - psi_phi)^2 / r^2
};

ErrorNorms error_norms(const GridField& field, const MmsEntry& entry);

enum class SolverChoice { Modes, Fosls };

const char* to_string(SolverChoice choice);

struct ConvergenceRow {
  int n_r = 0;
  int n_phi = 0;
  double h = 0.0;
  double l2_err = 0.0;
  double h1_err = 0.0;
  std::optional<double> rate;  ///< log2 of the L2 error ratio; empty when saturated
};

struct ConvergenceOptions {
  int levels = 4;
  int base_intervals = 16;  ///< n_r - 1 and n_phi at level 0; both double per level
  double saturation = 1e-13;
};

/// Runs the chosen solver on the manufactured problem over doubling grids.
/// `system` supplies the certified multiplier (required for Fosls).
std::vector<ConvergenceRow> convergence_study(const MmsEntry& entry, const CertifiedSystem& system,
                                              SolverChoice solver, const ConvergenceOptions& options = {});

}  // namespace helix
