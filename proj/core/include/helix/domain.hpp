#pragma once

#include <cstddef>
#include <vector>

#include "helix/periodic_function.hpp"

namespace helix {

/// Annulus epsilon <= r <= R rotating with angular velocity omega.
struct DomainParams {
  double omega = 1.0;
  double epsilon = 0.2;
  double big_r = 2.0;

  double light_radius() const { return 1.0 / omega; }
};

/// Throws ValidationError unless 0 < epsilon < 1/omega and epsilon < R.
void validate(const DomainParams& params);

/// chi(r) = 1 - omega^2 r^2; positive inside the light circle.
double chi(double r, const DomainParams& params);

enum class PointType { Elliptic, LightCircle, Hyperbolic };

const char* to_string(PointType type);

/// |chi| <= tol_zero * omega^2 r^2 is reported as the light circle.
PointType classify_point(double r, const DomainParams& params, double tol_zero = 1e-12);

/// Outer condition tau R d_r Psi + sigma d_phi Psi = outer_l at r = R, and
/// Psi = inner_k at r = epsilon.
struct BoundarySpec {
  PeriodicFunction sigma = PeriodicFunction::constant(1.0);
  PeriodicFunction tau = PeriodicFunction::constant(1.0);
  PeriodicFunction inner_k;
  PeriodicFunction outer_l;

  bool has_constant_coefficients() const { return sigma.is_constant() && tau.is_constant(); }
  bool is_homogeneous() const { return inner_k.is_zero() && outer_l.is_zero(); }
};

/// Sign of sigma*tau when it is constant and nonzero over `samples` angles;
/// 0 when it vanishes somewhere or changes sign.
int sigma_tau_sign(const BoundarySpec& spec, int samples = 720);

/// Throws ValidationError when sigma*tau vanishes or changes sign.
void validate(const BoundarySpec& spec, int samples = 720);

enum class SommerfeldSign { Plus, Minus };

/// tau = 1/R, sigma = +/- omega (no inhomogeneous data).
BoundarySpec sommerfeld_spec(const DomainParams& params, SommerfeldSign sign);

/// Uniform tensor grid: r from epsilon to R inclusive, phi on [0, 2 pi) with
/// the periodic endpoint excluded.
struct Grid {
  int n_r = 0;
  int n_phi = 0;
  double h_r = 0.0;
  double h_phi = 0.0;
  std::vector<double> r;
  std::vector<double> phi;

  std::size_t size() const { return static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_phi); }
  /// Row-major, r outer.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_phi) + static_cast<std::size_t>(j);
  }
};

/// Requires n_r >= 3 and an even n_phi >= 4.
Grid build_grid(const DomainParams& params, int n_r, int n_phi);

}  // namespace helix
