#include "helix/helix_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "helix/error.hpp"
#include "helix/friedrichs_check.hpp"

namespace helix {

double c_of_r(double r, const DomainParams& params, const MultiplierParams& mult) {
  const double w = params.omega * r;
  return -mult.alpha + std::exp(-w * w * w);
}

double dc_dr(double r, const DomainParams& params) {
  const double w = params.omega * r;
  const double o3 = params.omega * params.omega * params.omega;
  return -3.0 * o3 * r * r * std::exp(-w * w * w);
}

double dcchi_dr(double r, const DomainParams& params, const MultiplierParams& mult) {
  const double w = params.omega * r;
  const double o2 = params.omega * params.omega;
  return o2 * r * (2.0 * mult.alpha - std::exp(-w * w * w) * (2.0 + 3.0 * w * chi(r, params)));
}

Mat2 matrix_l(double r, const DomainParams& params, const MultiplierParams& mult) {
  const double c = c_of_r(r, params, mult);
  Mat2 l;
  l << mult.a, -c * chi(r, params), c, mult.a;
  return l;
}

double det_l(double r, const DomainParams& params, const MultiplierParams& mult) {
  const double c = c_of_r(r, params, mult);
  return mult.a * mult.a + c * c * chi(r, params);
}

Mat2 reduced_a_r(double r) {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m / r;
}

Mat2 reduced_a_phi(double r, const DomainParams& params) {
  Mat2 m;
  m << chi(r, params), 0.0, 0.0, -1.0;
  return m / (r * r);
}

PointMatrices assemble_point(double r, const DomainParams& params, const MultiplierParams& mult) {
  const double c = c_of_r(r, params, mult);
  const double x = chi(r, params);
  const double a = mult.a;
  PointMatrices pm;
  pm.a_r << -c * x, a, a, c;
  pm.a_r /= r;
  pm.a_phi << a * x, c * x, c * x, -a;
  pm.a_phi /= r * r;
  // a is constant, so the off-diagonal -d_r a vanishes.
  pm.k_mat << 0.5 * dcchi_dr(r, params, mult), 0.0, 0.0, -0.5 * dc_dr(r, params);
  pm.omega_density = r;
  return pm;
}

Vec2 assemble_source(double r, double f_value, const DomainParams& params, const MultiplierParams& mult) {
  return {mult.a * f_value, c_of_r(r, params, mult) * f_value};
}

SymEigenvalues sym_eigenvalues(const Mat2& m) {
  const double p = m(0, 0);
  const double q = m(1, 1);
  const double s = 0.5 * (m(0, 1) + m(1, 0));
  const double mean = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), s);
  return {mean - radius, mean + radius};
}

InteriorScan scan_interior(const DomainParams& params, const MultiplierParams& mult, int samples) {
  InteriorScan scan;
  scan.min_eig_k_sym = std::numeric_limits<double>::infinity();
  scan.positivity_rel_margin = std::numeric_limits<double>::infinity();
  scan.max_dc_dr = -std::numeric_limits<double>::infinity();
  scan.min_abs_det_l = std::numeric_limits<double>::infinity();
  scan.kappa = std::numeric_limits<double>::infinity();
  const double o2 = params.omega * params.omega;
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    const double r = params.epsilon * (1.0 - t) + params.big_r * t;
    const double d_cchi = dcchi_dr(r, params, mult);
    const double d_c = dc_dr(r, params);
    // K + K^T = diag(d_r(c chi), -d_r c).
    const double lo = std::min(d_cchi, -d_c);
    scan.min_eig_k_sym = std::min(scan.min_eig_k_sym, lo);
    scan.positivity_rel_margin = std::min(scan.positivity_rel_margin, d_cchi / (2.0 * mult.alpha * o2 * r));
    scan.max_dc_dr = std::max(scan.max_dc_dr, d_c);
    scan.min_abs_det_l = std::min(scan.min_abs_det_l, std::abs(det_l(r, params, mult)));
    scan.kappa = std::min(scan.kappa, 0.5 * lo / r);
  }
  scan.nondeg_ratio = mult.a != 0.0 ? scan.min_abs_det_l / (mult.a * mult.a) : 0.0;
  scan.c_inner = c_of_r(params.epsilon, params, mult);
  return scan;
}

MultiplierParams choose_parameters(const DomainParams& params, const BoundarySpec& spec,
                                   const ChoiceOptions& options) {
  validate(params);
  validate(spec, options.phi_samples);
  const int sign = sigma_tau_sign(spec, options.phi_samples);

  const double alpha = std::max(2.0, 1.0 + 1.0 / std::sqrt(3.0) + options.margin);
  const double wr = params.omega * params.big_r;
  const double start = alpha * std::sqrt(std::max(0.0, wr * wr - 1.0)) + 1.0;

  for (double magnitude = start; magnitude <= options.max_abs_a; magnitude *= 2.0) {
    const MultiplierParams mult{-sign * magnitude, alpha};
    const InteriorScan scan = scan_interior(params, mult, options.radial_samples);
    if (!(scan.max_dc_dr < 0.0) || scan.positivity_rel_margin < options.margin) {
      std::ostringstream msg;
      msg << "interior positivity margin " << scan.positivity_rel_margin << " below " << options.margin
          << " for alpha = " << alpha;
      throw CertificationError("positivity", msg.str());
    }
    if (!(scan.c_inner < 0.0)) throw CertificationError("inner_admissibility", "c(epsilon) is not negative");
    if (scan.nondeg_ratio < options.margin) continue;
    if (admissibility_margin(BoundarySide::Inner, params, mult, spec, options.phi_samples) < 0.0) continue;
    if (admissibility_margin(BoundarySide::Outer, params, mult, spec, options.phi_samples) < 0.0) continue;
    return mult;
  }
  std::ostringstream msg;
  msg << "no |a| <= " << options.max_abs_a << " satisfies nondegeneracy and admissibility";
  throw CertificationError("choose_parameters", msg.str());
}

}  // namespace helix
