#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helix/error.hpp"
#include "helix/mms_oracle.hpp"

using namespace helix;
using cplx = std::complex<double>;

namespace {

const DomainParams kCanon{};

BoundarySpec plus_spec() { return sommerfeld_spec(kCanon, SommerfeldSign::Plus); }

// Fourth-order central differences of psi pushed through the second-order operator.
double fd_operator(const MmsEntry& e, double r, double phi) {
  const double h = 1e-3;
  auto psi = [&](double rr, double pp) { return e.psi_exact(rr, pp); };
  const double d1 = (-psi(r + 2 * h, phi) + 8 * psi(r + h, phi) - 8 * psi(r - h, phi) + psi(r - 2 * h, phi)) / (12 * h);
  const double d2 = (-psi(r + 2 * h, phi) + 16 * psi(r + h, phi) - 30 * psi(r, phi) + 16 * psi(r - h, phi) -
                     psi(r - 2 * h, phi)) /
                    (12 * h * h);
  const double a2 = (-psi(r, phi + 2 * h) + 16 * psi(r, phi + h) - 30 * psi(r, phi) + 16 * psi(r, phi - h) -
                     psi(r, phi - 2 * h)) /
                    (12 * h * h);
  return d2 + d1 / r + chi(r, kCanon) / (r * r) * a2;
}

MmsEntry linear_entry() {
  MmsEntry e;
  e.label = "linear";
  e.g = [](double r) { return r - kCanon.epsilon; };
  e.dg = [](double) { return 1.0; };
  e.d2g = [](double) { return 0.0; };
  e.d3g = [](double) { return 0.0; };
  e.angular = PeriodicFunction::constant(1.0);
  return e;
}

}  // namespace

TEST(Manufacture, ZeroSolutionGivesZeroData) {
  MmsEntry zero = linear_entry();
  zero.angular = PeriodicFunction();
  const auto m = mms_manufacture(zero, kCanon, plus_spec());
  EXPECT_EQ(m.f(0.7, 1.0), 0.0);
  EXPECT_TRUE(m.inner_k.is_zero());
  EXPECT_TRUE(m.outer_l.is_zero());
}

TEST(Manufacture, LinearRadialProfileByHand) {
  const auto spec = plus_spec();
  const auto m = mms_manufacture(linear_entry(), kCanon, spec);
  for (double r : {0.3, 1.0, 1.7}) EXPECT_NEAR(m.f(r, 0.4), 1.0 / r, 1e-15);
  EXPECT_TRUE(m.inner_k.is_zero());
  EXPECT_NEAR(m.outer_l(0.9), spec.tau(0.0) * kCanon.big_r, 1e-15);
}

TEST(Manufacture, SourcesMatchFourthOrderDifferences) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ur(kCanon.epsilon + 0.01, kCanon.big_r - 0.01);
  std::uniform_real_distribution<double> up(0.0, 2 * std::numbers::pi);
  for (const auto& e : mms_catalog(kCanon)) {
    const auto m = mms_manufacture(e, kCanon, plus_spec());
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double r = ur(rng);
      const double phi = up(rng);
      worst = std::max(worst, std::abs(m.f(r, phi) - fd_operator(e, r, phi)));
    }
    EXPECT_LT(worst, 1e-7) << e.label;
  }
}

TEST(Manufacture, BoundaryDataMatchExactSolution) {
  const auto spec = plus_spec();
  for (const auto& e : mms_catalog(kCanon)) {
    const auto m = mms_manufacture(e, kCanon, spec);
    for (double phi = 0.0; phi < 6.2; phi += 0.5) {
      EXPECT_NEAR(m.inner_k(phi), e.psi_exact(kCanon.epsilon, phi), 1e-14) << e.label;
      const double l = spec.tau(phi) * kCanon.big_r * e.dpsi_dr(kCanon.big_r, phi) +
                       spec.sigma(phi) * e.dpsi_dphi(kCanon.big_r, phi);
      EXPECT_NEAR(m.outer_l(phi), l, 1e-13) << e.label;
    }
  }
}

TEST(Manufacture, CatalogEntriesAreConsistent) {
  const auto cat = mms_catalog(kCanon);
  ASSERT_GE(cat.size(), 3u);
  const double h = 1e-5;
  for (const auto& e : cat) {
    for (double r : {0.4, 1.1, 1.8}) {
      EXPECT_NEAR(e.dg(r), (e.g(r + h) - e.g(r - h)) / (2 * h), 1e-8);
      EXPECT_NEAR(e.d2g(r), (e.dg(r + h) - e.dg(r - h)) / (2 * h), 1e-8);
      EXPECT_NEAR(e.d3g(r), (e.d2g(r + h) - e.d2g(r - h)) / (2 * h), 1e-7);
    }
  }
  EXPECT_THROW(find_mms_entry(kCanon, "nope"), ValidationError);
}

TEST(ModeCoefficient, ExtractsHarmonics) {
  const auto fm = mode_coefficient([](double r, double phi) { return r * std::cos(2 * phi) + 3 * std::sin(2 * phi); }, 2);
  const cplx c = fm(2.0);
  EXPECT_NEAR(c.real(), 1.0, 1e-14);
  EXPECT_NEAR(c.imag(), -1.5, 1e-14);
  EXPECT_NEAR(std::abs(mode_coefficient([](double, double) { return 1.0; }, 3)(0.5)), 0.0, 1e-15);
}

TEST(Oracle, ZeroDataGivesZero) {
  const auto prof = oracle_mode_solve(kCanon, 1.0, 0.5, [](double) { return cplx(0.0); }, 4);
  for (const auto& v : prof.psi) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(Oracle, ConstantSourceMatchesExactIntegral) {
  const auto prof = oracle_mode_solve(kCanon, 1.0, 0.5, [](double) { return cplx(1.0); }, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    const double r = prof.r[i];
    const double exact = (r * r - 0.04) / 4.0 - 2.0 * std::log(r / 0.2);
    worst = std::max(worst, std::abs(prof.psi[i] - exact));
  }
  EXPECT_LT(worst, 1e-10);
  EXPECT_NEAR(prof.order_estimate, 2.0, 0.1);
  EXPECT_LE(prof.estimated_error, 1e-9);
  EXPECT_NEAR(std::abs(prof.at(1.2345) - ((1.2345 * 1.2345 - 0.04) / 4.0 - 2.0 * std::log(1.2345 / 0.2))), 0.0, 1e-10);
}

TEST(Oracle, SmoothDataOrderEstimate) {
  for (int m : {1, 3, 6}) {
    const auto prof =
        oracle_mode_solve(kCanon, 1.0, 0.5, [](double r) { return cplx(std::exp(-r), std::sin(2 * r)); }, m);
    EXPECT_GE(prof.order_estimate, 1.9) << m;
    EXPECT_LE(prof.order_estimate, 2.1) << m;
    EXPECT_LE(prof.estimated_error, 1e-9) << m;
  }
}

TEST(Oracle, FlagsUnderResolvedData) {
  OracleOptions opts;
  opts.fine_intervals = 16;
  opts.disagreement_limit = 1e-6;
  EXPECT_THROW(oracle_mode_solve(kCanon, 1.0, 0.5, [](double r) { return cplx(std::sin(40 * r)); }, 2, 0.0, 0.0, opts),
               SolverError);
}

// Re-applying the second-order operator to the oracle profile reproduces the
// manufactured mode source, with the discrepancy shrinking at second order.
TEST(Oracle, OperatorOnOracleReproducesSource) {
  const auto e = find_mms_entry(kCanon, "sine_cos3");
  const auto spec = plus_spec();
  const auto m = mms_manufacture(e, kCanon, spec);
  const int mode = 3;
  const auto f3 = mode_coefficient(m.f, mode);
  const auto k3 = mode_coefficient([&](double, double phi) { return m.inner_k(phi); }, mode)(0.0);
  const auto l3 = mode_coefficient([&](double, double phi) { return m.outer_l(phi); }, mode)(0.0);
  const auto prof = oracle_mode_solve(kCanon, spec.sigma(0.0), spec.tau(0.0), f3, mode, k3, l3);
  double prev = 0.0;
  for (double h : {0.04, 0.02, 0.01}) {
    double worst = 0.0;
    for (double r = 0.4; r < 1.8; r += 0.1) {
      const cplx d2 = (prof.at(r + h) - 2.0 * prof.at(r) + prof.at(r - h)) / (h * h);
      const cplx d1 = (prof.at(r + h) - prof.at(r - h)) / (2 * h);
      const cplx op = d2 + d1 / r - double(mode * mode) * chi(r, kCanon) / (r * r) * prof.at(r);
      worst = std::max(worst, std::abs(op - f3(r)));
    }
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / worst), 2.0, 0.2);
    prev = worst;
  }
}

TEST(ErrorNorms, ExactSamplesAndConstantShift) {
  const auto e = find_mms_entry(kCanon, "quadratic_sin2");
  const Grid g = build_grid(kCanon, 33, 32);
  GridField field(g);
  field.psi = sample_on_grid(g, [&](double r, double phi) { return e.psi_exact(r, phi); });
  field.u1 = sample_on_grid(g, [&](double r, double phi) { return e.dpsi_dphi(r, phi); });
  field.u2 = sample_on_grid(g, [&](double r, double phi) { return r * e.dpsi_dr(r, phi); });
  auto err = error_norms(field, e);
  EXPECT_LT(err.l2, 1e-14);
  EXPECT_LT(err.h1_semi, 1e-13);
  for (auto& v : field.psi) v += 1.0;
  err = error_norms(field, e);
  EXPECT_NEAR(err.l2 * err.l2, std::numbers::pi * (4.0 - 0.04), 1e-12);
  EXPECT_LT(err.h1_semi, 1e-13);
}

TEST(Convergence, ModeSolverSecondOrderOnCatalog) {
  const auto sys = CertifiedSystem::certify_auto(kCanon, plus_spec());
  for (const auto& e : mms_catalog(kCanon)) {
    const auto rows = convergence_study(e, sys, SolverChoice::Modes);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_FALSE(rows[0].rate.has_value());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      ASSERT_TRUE(rows[i].rate.has_value());
      EXPECT_NEAR(*rows[i].rate, 2.0, 0.2) << e.label;
      EXPECT_LE(rows[i].l2_err, 1.05 * rows[i - 1].l2_err);
      EXPECT_NEAR(rows[i].h, 0.5 * rows[i - 1].h, 1e-15);
    }
  }
}

TEST(Convergence, SaturatedErrorsHaveNoRate) {
  const auto sys = CertifiedSystem::certify_auto(kCanon, plus_spec());
  ConvergenceOptions opts;
  opts.levels = 3;
  opts.saturation = 1e6;
  const auto rows = convergence_study(find_mms_entry(kCanon, "quadratic"), sys, SolverChoice::Modes, opts);
  for (const auto& row : rows) EXPECT_FALSE(row.rate.has_value());
}

TEST(Oracle, ExactlyResolvedDataReportsNoOrder) {
  // Quadratic profiles are reproduced by the stencil at every resolution.
  const auto f = [](double r) { return cplx(4.0 - 2.0 * kCanon.epsilon / r); };
  const double outer = 0.5 * kCanon.big_r * 2.0 * (kCanon.big_r - kCanon.epsilon);
  const auto prof = oracle_mode_solve(kCanon, 1.0, 0.5, f, 0, 0.0, outer);
  EXPECT_TRUE(std::isnan(prof.order_estimate));
  EXPECT_LT(prof.disagreement, 1e-10);
}
