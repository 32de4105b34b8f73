#pragma once

#include <functional>
#include <optional>
#include <string>

#include "helix/domain.hpp"
#include "helix/helix_system.hpp"

namespace helix {

enum class BoundarySide { Inner, Outer };

const char* to_string(BoundarySide side);

/// Boundary matrices at one boundary point. beta = n_a A^a with n = R dr at
/// the outer and -epsilon dr at the inner boundary; beta = beta1 + beta2 and
/// the boundary condition is beta2 u = 0, i.e. sigma u1 + tau u2 = 0.
struct BoundaryOperators {
  Mat2 beta;
  Mat2 beta1;
  Mat2 beta2;
  Mat2 mu;  ///< beta1 - beta2
  double n_factor = 0.0;  ///< 1 / (sigma^2 + tau^2)
  double sigma = 0.0;
  double tau = 0.0;
  BoundarySide side = BoundarySide::Outer;

  Mat2 mu_sym() const { return 0.5 * (mu + mu.transpose()); }
};

Mat2 boundary_beta(BoundarySide side, const DomainParams& params, const MultiplierParams& mult);

/// Split with explicit coefficients. The inner boundary ignores (sigma, tau)
/// and always uses (1, 0). Throws CertificationError when the factor
/// (tau a - sigma c chi, sigma a + tau c) vanishes.
BoundaryOperators boundary_split(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                                 double sigma, double tau);
BoundaryOperators boundary_split(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                                 const BoundarySpec& spec, double phi);

/// Smallest eigenvalue of (mu + mu^T)/2 over `phi_samples` equispaced angles.
double admissibility_margin(BoundarySide side, const DomainParams& params, const MultiplierParams& mult,
                            const BoundarySpec& spec, int phi_samples = 720);

struct DecompositionCheck {
  bool ok = false;
  double cross_det = 0.0;  ///< |det[n1 n2]| of the unit null directions
  Vec2 null_beta1 = Vec2::Zero();
  Vec2 null_beta2 = Vec2::Zero();
};

/// Verifies null(beta1) and null(beta2) are one-dimensional and transverse.
DecompositionCheck nullspace_decomposition_check(const BoundaryOperators& ops, double tol = 1e-8);

/// Smooth trial field with closed-form first derivatives.
struct TrialField {
  std::function<Vec2(double r, double phi)> u;
  std::function<Vec2(double r, double phi)> du_dr;
  std::function<Vec2(double r, double phi)> du_dphi;
};

struct EnergyCheck {
  double lhs = 0.0;  ///< int (u, A^a d_a u) omega dr dphi
  double rhs = 0.0;  ///< kappa ||u||^2
  double tolerance = 0.0;
  double kappa = 0.0;
  bool pass = false;
};

/// Trapezoid-in-r, rectangle-in-phi quadrature of the Friedrichs energy.
/// Throws ValidationError if u violates u1(epsilon) = 0 or
/// sigma u1 + tau u2 = 0 at R by more than 1e-12.
EnergyCheck energy_quadrature_check(const TrialField& field, const Grid& grid, const DomainParams& params,
                                    const MultiplierParams& mult, const BoundarySpec& spec);

struct VerifyOptions {
  double margin = 0.1;
  double tol_psd = 1e-10;
  int radial_samples = 2048;
  int phi_samples = 720;
};

/// Every runtime certificate for one (domain, multiplier, boundary) triple.
struct VerifyReport {
  MultiplierParams multiplier;
  double positivity_min_eig = 0.0;
  double positivity_rel_margin = 0.0;
  double nondeg_min_abs_det = 0.0;
  double nondeg_ratio = 0.0;
  double inner_mu_min_eig = 0.0;
  double outer_mu_min_eig = 0.0;
  bool decomposition_ok = false;
  bool admissible = false;
  std::optional<std::string> first_failure;
};

VerifyReport verify_system(const DomainParams& params, const MultiplierParams& mult, const BoundarySpec& spec,
                           const VerifyOptions& options = {});

/// A (domain, multiplier, boundary) triple that passed verify_system. The
/// least-squares solver only accepts this type.
class CertifiedSystem {
 public:
  /// Throws CertificationError naming the first failing check.
  static CertifiedSystem certify(const DomainParams& params, const MultiplierParams& mult,
                                 const BoundarySpec& spec, const VerifyOptions& options = {});
  /// choose_parameters followed by certify.
  static CertifiedSystem certify_auto(const DomainParams& params, const BoundarySpec& spec,
                                      const VerifyOptions& options = {});

  const DomainParams& domain() const { return domain_; }
  const MultiplierParams& multiplier() const { return multiplier_; }
  const BoundarySpec& boundary() const { return boundary_; }
  const VerifyReport& report() const { return report_; }

  /// Same certified operator with different inhomogeneous data; the
  /// certificate depends on sigma and tau only.
  CertifiedSystem with_boundary_data(PeriodicFunction inner_k, PeriodicFunction outer_l) const;

 private:
  CertifiedSystem(DomainParams d, MultiplierParams m, BoundarySpec b, VerifyReport r)
      : domain_(d), multiplier_(m), boundary_(std::move(b)), report_(std::move(r)) {}

  DomainParams domain_;
  MultiplierParams multiplier_;
  BoundarySpec boundary_;
  VerifyReport report_;
};

}  // namespace helix
