#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helix/mms_oracle.hpp"
#include "helix/solver.hpp"

using namespace helix;

TEST(FieldOps, SpectralDerivativeIsExactForResolvedModes) {
  const DomainParams p;
  const Grid g = build_grid(p, 5, 16);
  const auto v = sample_on_grid(g, [](double r, double phi) { return r * std::sin(3 * phi) + std::cos(7 * phi); });
  const auto d = spectral_dphi(g, v);
  for (int i = 0; i < g.n_r; ++i)
    for (int j = 0; j < g.n_phi; ++j) {
      const double r = g.r[static_cast<std::size_t>(i)];
      const double phi = g.phi[static_cast<std::size_t>(j)];
      EXPECT_NEAR(d[g.index(i, j)], 3 * r * std::cos(3 * phi) - 7 * std::sin(7 * phi), 1e-12);
    }
}

TEST(FieldOps, RadialDerivativeExactOnQuadratics) {
  const DomainParams p;
  const Grid g = build_grid(p, 9, 4);
  const auto v = sample_on_grid(g, [](double r, double) { return 3 * r * r - r + 2; });
  const auto d = fd_r_dr(g, v);
  for (int i = 0; i < g.n_r; ++i) {
    const double r = g.r[static_cast<std::size_t>(i)];
    EXPECT_NEAR(d[g.index(i, 1)], r * (6 * r - 1), 1e-12);
  }
}

TEST(FieldOps, ReconstructionIsSecondOrder) {
  const DomainParams p;
  double prev = 0.0;
  for (int n : {17, 33, 65}) {
    const Grid g = build_grid(p, n, 8);
    const auto u2 = sample_on_grid(g, [](double r, double phi) { return r * std::cos(r) * (1 + std::sin(phi)); });
    const std::vector<double> inner(static_cast<std::size_t>(g.n_phi), 0.5);
    const auto psi = reconstruct_psi(g, u2, inner);
    double err = 0.0;
    for (int i = 0; i < g.n_r; ++i)
      for (int j = 0; j < g.n_phi; ++j) {
        const double r = g.r[static_cast<std::size_t>(i)];
        const double phi = g.phi[static_cast<std::size_t>(j)];
        const double exact = 0.5 + (std::sin(r) - std::sin(p.epsilon)) * (1 + std::sin(phi));
        err = std::max(err, std::abs(psi[g.index(i, j)] - exact));
      }
    if (prev > 0.0) EXPECT_GT(prev / err, 3.5);
    prev = err;
  }
}

TEST(FieldOps, WeightedNormOfConstantIsAnnulusArea) {
  const DomainParams p;
  const Grid g = build_grid(p, 11, 12);
  const std::vector<double> ones(g.size(), 1.0);
  const double area = std::numbers::pi * (p.big_r * p.big_r - p.epsilon * p.epsilon);
  EXPECT_NEAR(l2_norm(g, ones) * l2_norm(g, ones), area, 1e-12);
}

// Sampling a smooth solution of the second-order problem into (u1, u2) gives
// first-order residuals that vanish at second order.
TEST(FieldOps, ClassicalSolutionsSolveFirstOrderSystem) {
  const DomainParams p;
  const auto entry = find_mms_entry(p, "sine_cos3");
  const auto data = mms_manufacture(entry, p, sommerfeld_spec(p, SommerfeldSign::Plus));
  double prev1 = 0.0;
  double prev2 = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g = build_grid(p, n + 1, n);
    GridField field(g);
    field.f = sample_on_grid(g, data.f);
    field.u1 = sample_on_grid(g, [&](double r, double phi) { return entry.dpsi_dphi(r, phi); });
    field.u2 = sample_on_grid(g, [&](double r, double phi) { return r * entry.dpsi_dr(r, phi); });
    field.psi = sample_on_grid(g, [&](double r, double phi) { return entry.psi_exact(r, phi); });
    const auto res = residual_norm(field, p);
    if (prev1 > 0.0) {
      EXPECT_NEAR(std::log2(prev1 / res.eq1), 2.0, 0.15);
      EXPECT_NEAR(std::log2(prev2 / res.eq2), 2.0, 0.15);
    }
    prev1 = res.eq1;
    prev2 = res.eq2;
  }
}

TEST(FieldOps, GaussianPairIsAntisymmetric) {
  const auto src = gaussian_source(opposite_charge_pair(1.0, 2.0, 0.2));
  EXPECT_NEAR(src(1.0, 0.0), -src(1.0, std::numbers::pi), 1e-14);
  EXPECT_GT(src(1.0, 0.0), 1.9);
  EXPECT_NEAR(src(1.0, 0.5 * std::numbers::pi), 0.0, 1e-12);
}
