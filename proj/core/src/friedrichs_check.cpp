#include <Eigen/LU>
#include "helix/friedrichs_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "helix/error.hpp"

namespace helix {

const char* to_string(BoundarySide side) { return side == BoundarySide::Inner ? "inner" : "outer"; }

namespace {

double boundary_radius(BoundarySide side, const DomainParams& params) {
  return side == BoundarySide::Inner ? params.epsilon : params.big_r;
}

/// Null direction of a matrix known to have rank one.
Vec2 rank_one_null(const Mat2& m) {
  const Vec2 row0 = m.row(0).transpose();
  const Vec2 row1 = m.row(1).transpose();
  const Vec2& row = row0.squaredNorm() >= row1.squaredNorm() ? row0 : row1;
  return Vec2(-row.y(), row.x()).normalized();
}

enum class Rank { Zero, One, Two };

Rank numerical_rank(const Mat2& m, double scale, double tol) {
  const double norm = m.norm();
  if (norm <= tol * scale) return Rank::Zero;
  if (std::abs(m.determinant()) <= tol * norm * norm) return Rank::One;
  return Rank::Two;
}

}  // namespace

Mat2 boundary_beta(BoundarySide side, const DomainParams& params, const MultiplierParams& mult) {
  const double r = boundary_radius(side, params);
  const double c = c_of_r(r, params, mult);
  const double x = chi(r, params);
  const double a = mult.a;
  Mat2 beta;
  if (side == BoundarySide::Outer)
    beta << -c * x, a, a, c;
  else
    beta << c * x, -a, -a, -c;
  return beta;
}

BoundaryOperators boundary_split(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                                 double sigma, double tau) {
  if (side == BoundarySide::Inner) {
    sigma = 1.0;
    tau = 0.0;
  }
  const double norm2 = sigma * sigma + tau * tau;
  if (!(norm2 > 0.0)) throw ValidationError("boundary", "sigma and tau cannot both vanish");

  const double r = boundary_radius(side, params);
  const double c = c_of_r(r, params, mult);
  const double x = chi(r, params);
  const double a = mult.a;
  const double st = sigma * tau;
  const double s2 = sigma * sigma;
  const double t2 = tau * tau;

  const double f1 = tau * a - sigma * c * x;
  const double f2 = sigma * a + tau * c;
  if (f1 == 0.0 && f2 == 0.0)
    throw CertificationError("boundary_split", std::string("degenerate split factor at the ") + to_string(side) +
                                                   " boundary");

  BoundaryOperators ops;
  ops.side = side;
  ops.sigma = sigma;
  ops.tau = tau;
  ops.n_factor = 1.0 / norm2;
  const double sign = side == BoundarySide::Outer ? 1.0 : -1.0;
  const double scale = sign * ops.n_factor;
  ops.beta1 << -t2 * c * x - st * a, st * c * x + s2 * a,
               t2 * a - st * c,      -st * a + s2 * c;
  ops.beta2 << -s2 * c * x + st * a, -st * c * x + t2 * a,
               s2 * a + st * c,      st * a + t2 * c;
  ops.beta1 *= scale;
  ops.beta2 *= scale;
  ops.beta = boundary_beta(side, params, mult);
  ops.mu = ops.beta1 - ops.beta2;
  return ops;
}

BoundaryOperators boundary_split(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                                 const BoundarySpec& spec, double phi) {
  return boundary_split(side, params, mult, spec.sigma(phi), spec.tau(phi));
}

double admissibility_margin(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                            const BoundarySpec& spec, int phi_samples) {
  if (side == BoundarySide::Inner)
    return sym_eigenvalues(boundary_split(side, params, mult, 1.0, 0.0).mu).min;
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < phi_samples; ++j) {
    const double phi = 2.0 * M_PI * j / phi_samples;
    lowest = std::min(lowest, sym_eigenvalues(boundary_split(side, params, mult, spec, phi).mu).min);
  }
  return lowest;
}

DecompositionCheck nullspace_decomposition_check(const BoundaryOperators& ops, double tol) {
  DecompositionCheck check;
  const double scale = std::max(1.0, ops.beta.norm());
  if (numerical_rank(ops.beta1, scale, tol) != Rank::One) return check;
  if (numerical_rank(ops.beta2, scale, tol) != Rank::One) return check;
  check.null_beta1 = rank_one_null(ops.beta1);
  check.null_beta2 = rank_one_null(ops.beta2);
  check.cross_det = std::abs(check.null_beta1.x() * check.null_beta2.y() -
                             check.null_beta1.y() * check.null_beta2.x());
  check.ok = check.cross_det >= tol;
  return check;
}

EnergyCheck energy_quadrature_check(const TrialField& field, const Grid& grid, const DomainParams& params,
                                    const MultiplierParams& mult, const BoundarySpec& spec) {
  constexpr double kBcTol = 1e-12;
  for (int j = 0; j < grid.n_phi; ++j) {
    const double phi = grid.phi[static_cast<std::size_t>(j)];
    const Vec2 inner = field.u(params.epsilon, phi);
    if (std::abs(inner.x()) > kBcTol)
      throw ValidationError("trial_field", "u1 does not vanish at the inner boundary");
    const Vec2 outer = field.u(params.big_r, phi);
    if (std::abs(spec.sigma(phi) * outer.x() + spec.tau(phi) * outer.y()) > kBcTol)
      throw ValidationError("trial_field", "sigma u1 + tau u2 does not vanish at the outer boundary");
  }

  double lhs = 0.0;
  double norm2 = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.r[static_cast<std::size_t>(i)];
    const double wr = (i == 0 || i == grid.n_r - 1) ? 0.5 * grid.h_r : grid.h_r;
    const PointMatrices pm = assemble_point(r, params, mult);
    double line_lhs = 0.0;
    double line_norm = 0.0;
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = grid.phi[static_cast<std::size_t>(j)];
      const Vec2 u = field.u(r, phi);
      const Vec2 flux = pm.a_r * field.du_dr(r, phi) + pm.a_phi * field.du_dphi(r, phi);
      line_lhs += u.dot(flux);
      line_norm += u.squaredNorm();
    }
    lhs += wr * grid.h_phi * r * line_lhs;
    norm2 += wr * grid.h_phi * r * line_norm;
  }

  EnergyCheck check;
  check.kappa = scan_interior(params, mult).kappa;
  check.lhs = lhs;
  check.rhs = check.kappa * norm2;
  check.tolerance = (grid.h_r * grid.h_r + grid.h_phi * grid.h_phi) * (norm2 + std::abs(lhs));
  check.pass = check.lhs >= check.rhs - check.tolerance;
  return check;
}

VerifyReport verify_system(const DomainParams& params, const MultiplierParams& mult, const BoundarySpec& spec,
                           const VerifyOptions& options) {
  validate(params);
  validate(spec, options.phi_samples);

  VerifyReport report;
  report.multiplier = mult;
  const InteriorScan scan = scan_interior(params, mult, options.radial_samples);
  report.positivity_min_eig = scan.min_eig_k_sym;
  report.positivity_rel_margin = scan.positivity_rel_margin;
  report.nondeg_min_abs_det = scan.min_abs_det_l;
  report.nondeg_ratio = scan.nondeg_ratio;

  bool split_ok = true;
  try {
    report.inner_mu_min_eig = admissibility_margin(BoundarySide::Inner, params, mult, spec, options.phi_samples);
    report.outer_mu_min_eig = admissibility_margin(BoundarySide::Outer, params, mult, spec, options.phi_samples);
  } catch (const CertificationError&) {
    split_ok = false;
    report.inner_mu_min_eig = -std::numeric_limits<double>::infinity();
    report.outer_mu_min_eig = -std::numeric_limits<double>::infinity();
  }

  report.decomposition_ok = split_ok;
  if (split_ok) {
    report.decomposition_ok =
        nullspace_decomposition_check(boundary_split(BoundarySide::Inner, params, mult, 1.0, 0.0)).ok;
    for (int j = 0; j < options.phi_samples && report.decomposition_ok; ++j) {
      const double phi = 2.0 * M_PI * j / options.phi_samples;
      report.decomposition_ok =
          nullspace_decomposition_check(boundary_split(BoundarySide::Outer, params, mult, spec, phi)).ok;
    }
  }

  const bool positivity_ok =
      scan.max_dc_dr < 0.0 && scan.min_eig_k_sym > 0.0 && scan.positivity_rel_margin >= options.margin;
  if (!positivity_ok)
    report.first_failure = "positivity";
  else if (report.nondeg_ratio < options.margin)
    report.first_failure = "nondegeneracy";
  else if (report.inner_mu_min_eig < -options.tol_psd)
    report.first_failure = "inner_admissibility";
  else if (report.outer_mu_min_eig < -options.tol_psd)
    report.first_failure = "outer_admissibility";
  else if (!report.decomposition_ok)
    report.first_failure = "decomposition";
  report.admissible = !report.first_failure.has_value();
  return report;
}

CertifiedSystem CertifiedSystem::certify(const DomainParams& params, const MultiplierParams& mult,
                                         const BoundarySpec& spec, const VerifyOptions& options) {
  VerifyReport report = verify_system(params, mult, spec, options);
  if (!report.admissible) {
    std::ostringstream msg;
    msg << "system with a = " << mult.a << ", alpha = " << mult.alpha << " is not certified";
    throw CertificationError(*report.first_failure, msg.str());
  }
  return CertifiedSystem(params, mult, spec, std::move(report));
}

CertifiedSystem CertifiedSystem::certify_auto(const DomainParams& params, const BoundarySpec& spec,
                                              const VerifyOptions& options) {
  ChoiceOptions choice;
  choice.margin = options.margin;
  choice.radial_samples = options.radial_samples;
  choice.phi_samples = options.phi_samples;
  choice.tol_psd = options.tol_psd;
  return certify(params, choose_parameters(params, spec, choice), spec, options);
}

CertifiedSystem CertifiedSystem::with_boundary_data(PeriodicFunction inner_k, PeriodicFunction outer_l) const {
  CertifiedSystem copy = *this;
  copy.boundary_.inner_k = std::move(inner_k);
  copy.boundary_.outer_l = std::move(outer_l);
  return copy;
}

}  // namespace helix
