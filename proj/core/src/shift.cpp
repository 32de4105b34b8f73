#include "helix/shift.hpp"

#include <cmath>

#include "helix/error.hpp"

namespace helix {

ShiftData::ShiftData(const BoundarySpec& spec, const DomainParams& params)
    : spec_(spec), params_(params), zero_(spec.is_homogeneous()) {}

double ShiftData::p(double r, int order) const {
  const double len = params_.big_r - params_.epsilon;
  const double t = (r - params_.epsilon) / len;
  switch (order) {
    case 0:
      return (2.0 * t - 3.0) * t * t + 1.0;
    case 1:
      return 6.0 * t * (t - 1.0) / len;
    default:
      return (12.0 * t - 6.0) / (len * len);
  }
}

double ShiftData::q(double r, int order) const {
  const double len = params_.big_r - params_.epsilon;
  const double t = (r - params_.epsilon) / len;
  switch (order) {
    case 0:
      return len / params_.big_r * (t - 1.0) * t * t;
    case 1:
      return (3.0 * t - 2.0) * t / params_.big_r;
    default:
      return (6.0 * t - 2.0) / (params_.big_r * len);
  }
}

double ShiftData::s(double phi, int order) const {
  if (spec_.outer_l.is_zero()) return 0.0;
  const double l0 = spec_.outer_l.derivative(phi, 0);
  const double t0 = spec_.tau.derivative(phi, 0);
  if (order == 0) return l0 / t0;
  const double l1 = spec_.outer_l.derivative(phi, 1);
  const double t1 = spec_.tau.derivative(phi, 1);
  if (order == 1) return (l1 * t0 - l0 * t1) / (t0 * t0);
  const double l2 = spec_.outer_l.derivative(phi, 2);
  const double t2 = spec_.tau.derivative(phi, 2);
  return l2 / t0 - 2.0 * l1 * t1 / (t0 * t0) - l0 * t2 / (t0 * t0) + 2.0 * l0 * t1 * t1 / (t0 * t0 * t0);
}

double ShiftData::value(double r, double phi) const {
  if (zero_) return 0.0;
  return spec_.inner_k(phi) * p(r, 0) + s(phi, 0) * q(r, 0);
}

double ShiftData::d_r(double r, double phi) const {
  if (zero_) return 0.0;
  return spec_.inner_k(phi) * p(r, 1) + s(phi, 0) * q(r, 1);
}

double ShiftData::d_phi(double r, double phi) const {
  if (zero_) return 0.0;
  return spec_.inner_k.derivative(phi, 1) * p(r, 0) + s(phi, 1) * q(r, 0);
}

double ShiftData::d_rr(double r, double phi) const {
  if (zero_) return 0.0;
  return spec_.inner_k(phi) * p(r, 2) + s(phi, 0) * q(r, 2);
}

double ShiftData::d_phiphi(double r, double phi) const {
  if (zero_) return 0.0;
  return spec_.inner_k.derivative(phi, 2) * p(r, 0) + s(phi, 2) * q(r, 0);
}

double ShiftData::laplacian_terms(double r, double phi) const {
  if (zero_) return 0.0;
  return d_rr(r, phi) + d_r(r, phi) / r + chi(r, params_) / (r * r) * d_phiphi(r, phi);
}

ShiftData lambda_shift_build(const BoundarySpec& spec, const DomainParams& params) {
  validate(params);
  if (!spec.outer_l.is_zero()) {
    constexpr int kSamples = 720;
    for (int j = 0; j < kSamples; ++j) {
      const double phi = 2.0 * M_PI * j / kSamples;
      if (std::abs(spec.tau(phi)) < 1e-8)
        throw ValidationError("boundary.tau", "tau too close to zero to carry inhomogeneous outer data");
    }
  }
  return ShiftData(spec, params);
}

}  // namespace helix
