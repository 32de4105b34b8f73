#include "helix/domain.hpp"

#include <cmath>
#include <string>

#include "helix/error.hpp"

namespace helix {

void validate(const DomainParams& params) {
  if (!std::isfinite(params.omega) || params.omega <= 0.0)
    throw ValidationError("domain.omega", "angular velocity must be finite and > 0");
  if (!std::isfinite(params.epsilon) || params.epsilon <= 0.0)
    throw ValidationError("domain.epsilon", "inner radius must be finite and > 0");
  if (!std::isfinite(params.big_r))
    throw ValidationError("domain.R", "outer radius must be finite");
  if (params.epsilon >= 1.0 / params.omega)
    throw ValidationError("domain.epsilon",
                          "inner radius must lie strictly inside the light circle r = 1/omega (epsilon < " +
                              std::to_string(1.0 / params.omega) + ")");
  if (params.epsilon >= params.big_r)
    throw ValidationError("domain.R", "outer radius must exceed the inner radius");
}

double chi(double r, const DomainParams& params) {
  const double w = params.omega * r;
  return 1.0 - w * w;
}

const char* to_string(PointType type) {
  switch (type) {
    case PointType::Elliptic:
      return "elliptic";
    case PointType::LightCircle:
      return "light_circle";
    case PointType::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

PointType classify_point(double r, const DomainParams& params, double tol_zero) {
  const double w2 = params.omega * params.omega * r * r;
  const double value = 1.0 - w2;
  const double band = tol_zero * w2;
  if (value > band) return PointType::Elliptic;
  if (value < -band) return PointType::Hyperbolic;
  return PointType::LightCircle;
}

int sigma_tau_sign(const BoundarySpec& spec, int samples) {
  int sign = 0;
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * M_PI * j / samples;
    const double st = spec.sigma(phi) * spec.tau(phi);
    const int s = st > 0.0 ? 1 : (st < 0.0 ? -1 : 0);
    if (s == 0) return 0;
    if (sign == 0)
      sign = s;
    else if (s != sign)
      return 0;
  }
  return sign;
}

void validate(const BoundarySpec& spec, int samples) {
  bool vanishes = false;
  bool positive = false;
  bool negative = false;
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * M_PI * j / samples;
    const double st = spec.sigma(phi) * spec.tau(phi);
    if (st == 0.0) vanishes = true;
    if (st > 0.0) positive = true;
    if (st < 0.0) negative = true;
  }
  if (vanishes)
    throw ValidationError("boundary", "sigma*tau must not vanish on the outer boundary");
  if (positive && negative)
    throw ValidationError("boundary", "sigma*tau must keep a constant sign on the outer boundary");
}

BoundarySpec sommerfeld_spec(const DomainParams& params, SommerfeldSign sign) {
  BoundarySpec spec;
  spec.tau = PeriodicFunction::constant(1.0 / params.big_r);
  spec.sigma = PeriodicFunction::constant(sign == SommerfeldSign::Plus ? params.omega : -params.omega);
  return spec;
}

Grid build_grid(const DomainParams& params, int n_r, int n_phi) {
  if (n_r < 3) throw ValidationError("grid.n_r", "need at least 3 radial nodes");
  if (n_phi < 4) throw ValidationError("grid.n_phi", "need at least 4 angular nodes");
  if (n_phi % 2 != 0) throw ValidationError("grid.n_phi", "angular node count must be even");

  Grid grid;
  grid.n_r = n_r;
  grid.n_phi = n_phi;
  grid.h_r = (params.big_r - params.epsilon) / (n_r - 1);
  grid.h_phi = 2.0 * M_PI / n_phi;
  grid.r.resize(static_cast<std::size_t>(n_r));
  for (int i = 0; i < n_r; ++i) {
    // Anchored at both ends so r[0] == epsilon and r[n_r-1] == R exactly.
    const double t = static_cast<double>(i) / (n_r - 1);
    grid.r[static_cast<std::size_t>(i)] = params.epsilon * (1.0 - t) + params.big_r * t;
  }
  grid.phi.resize(static_cast<std::size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j) grid.phi[static_cast<std::size_t>(j)] = grid.h_phi * j;
  return grid;
}

}  // namespace helix
