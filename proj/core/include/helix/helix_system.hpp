#pragma once

#include <Eigen/Core>

#include "helix/domain.hpp"

namespace helix {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Constants of the symmetrizing multiplier
///   L = [[a, -c chi], [c, a]],  c(r) = -alpha + exp(-omega^3 r^3).
struct MultiplierParams {
  double a = 0.0;
  double alpha = 2.0;
};

double c_of_r(double r, const DomainParams& params, const MultiplierParams& mult);
double dc_dr(double r, const DomainParams& params);
/// d/dr (c chi) in the closed form omega^2 r {2 alpha - e^{-omega^3 r^3}(2 + 3 omega r chi)}.
double dcchi_dr(double r, const DomainParams& params, const MultiplierParams& mult);

Mat2 matrix_l(double r, const DomainParams& params, const MultiplierParams& mult);
double det_l(double r, const DomainParams& params, const MultiplierParams& mult);

/// Coefficients of the unsymmetrized first-order system
///   (1/r) d_r u2 + (chi/r^2) d_phi u1 = f,   (1/r) d_r u1 - (1/r^2) d_phi u2 = 0.
Mat2 reduced_a_r(double r);
Mat2 reduced_a_phi(double r, const DomainParams& params);

/// Coefficients of the symmetric-positive system A^r d_r u + A^phi d_phi u = h
/// at one radius, with K = -1/2 d_r(omega A^r) and density omega = r.
struct PointMatrices {
  Mat2 a_r;
  Mat2 a_phi;
  Mat2 k_mat;
  double omega_density = 0.0;
};

PointMatrices assemble_point(double r, const DomainParams& params, const MultiplierParams& mult);

/// h = (a f, c f).
Vec2 assemble_source(double r, double f_value, const DomainParams& params, const MultiplierParams& mult);

/// Closed-form eigenvalues (min, max) of the symmetric part of m.
struct SymEigenvalues {
  double min = 0.0;
  double max = 0.0;
};
SymEigenvalues sym_eigenvalues(const Mat2& m);

/// Dense radial scan of the interior conditions on [epsilon, R].
struct InteriorScan {
  double min_eig_k_sym = 0.0;       ///< min over r of the smaller eigenvalue of K + K^T
  double positivity_rel_margin = 0.0;
  double max_dc_dr = 0.0;           ///< must stay < 0
  double min_abs_det_l = 0.0;
  double nondeg_ratio = 0.0;        ///< min |det L| / a^2
  double c_inner = 0.0;             ///< c(epsilon), must be < 0
  /// min over r of lambda_min(K)/r: the constant kappa with
  /// int (u, K u) dr dphi >= kappa ||u||^2 in the omega-weighted norm.
  double kappa = 0.0;
};

InteriorScan scan_interior(const DomainParams& params, const MultiplierParams& mult, int samples = 2048);

struct ChoiceOptions {
  double margin = 0.1;
  int radial_samples = 2048;
  int phi_samples = 720;
  double tol_psd = 1e-10;
  double max_abs_a = 1e6;
};

/// Deterministic search for (a, alpha): alpha = max(2, 1 + 1/sqrt(3) + margin),
/// then |a| doubles from alpha sqrt(max(0, omega^2 R^2 - 1)) + 1 with
/// sign(a) = -sign(sigma tau) until positivity, nondegeneracy and both
/// boundary admissibility checks hold. Throws CertificationError if
/// |a| exceeds max_abs_a, ValidationError for a mixed-sign sigma tau.
MultiplierParams choose_parameters(const DomainParams& params, const BoundarySpec& spec,
                                   const ChoiceOptions& options = {});

}  // namespace helix
