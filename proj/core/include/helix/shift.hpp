#pragma once

#include "helix/domain.hpp"

namespace helix {

/// Smooth lift Lambda(r, phi) = k(phi) p(r) + s(phi) q(r) carrying the
/// inhomogeneous boundary data, with s = l / tau and the cubic Hermite
/// profiles
///   p(epsilon) = 1, p(R) = p'(R) = 0,   q(epsilon) = q(R) = 0, q'(R) = 1/R.
/// Subtracting it leaves the homogeneous problem with source
/// f - P[Lambda], P = d_r^2 + (1/r) d_r + (chi/r^2) d_phi^2.
class ShiftData {
 public:
  ShiftData() = default;
  ShiftData(const BoundarySpec& spec, const DomainParams& params);

  bool is_zero() const { return zero_; }

  double value(double r, double phi) const;
  double d_r(double r, double phi) const;
  double d_phi(double r, double phi) const;
  double d_rr(double r, double phi) const;
  double d_phiphi(double r, double phi) const;
  /// P[Lambda] at (r, phi).
  double laplacian_terms(double r, double phi) const;

  /// s(phi) = l(phi)/tau(phi) and its derivatives (order <= 2).
  double s(double phi, int order) const;
  /// Radial profiles and their derivatives (order <= 2).
  double p(double r, int order) const;
  double q(double r, int order) const;

 private:
  BoundarySpec spec_;
  DomainParams params_;
  bool zero_ = true;
};

/// Throws ValidationError if |tau| < 1e-8 somewhere while l is nonzero.
ShiftData lambda_shift_build(const BoundarySpec& spec, const DomainParams& params);

}  // namespace helix
