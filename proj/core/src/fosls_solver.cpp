#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <sstream>

#include "helix/error.hpp"
#include "helix/shift.hpp"
#include "helix/solver.hpp"

namespace helix {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Column layout: u1 at radial nodes 1..N, then u2 at nodes 0..N-1.
/// u1(epsilon) = 0 and u2(R) = -(sigma/tau) u1(R) are eliminated.
class UnknownMap {
 public:
  UnknownMap(const Grid& grid, const BoundarySpec& spec) : grid_(grid), last_(grid.n_r - 1) {
    outer_ratio_.resize(static_cast<std::size_t>(grid.n_phi));
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = grid.phi[static_cast<std::size_t>(j)];
      outer_ratio_[static_cast<std::size_t>(j)] = -spec.sigma(phi) / spec.tau(phi);
    }
  }

  int size() const { return 2 * last_ * grid_.n_phi; }
  int u1(int i, int j) const { return (i - 1) * grid_.n_phi + j; }
  int u2(int i, int j) const { return last_ * grid_.n_phi + i * grid_.n_phi + j; }

  template <class Sink>
  void add_u1(Sink&& sink, int i, int j, double coeff) const {
    if (i == 0) return;
    sink(u1(i, j), coeff);
  }

  template <class Sink>
  void add_u2(Sink&& sink, int i, int j, double coeff) const {
    if (i == last_)
      sink(u1(i, j), coeff * outer_ratio_[static_cast<std::size_t>(j)]);
    else
      sink(u2(i, j), coeff);
  }

  double outer_ratio(int j) const { return outer_ratio_[static_cast<std::size_t>(j)]; }

 private:
  const Grid& grid_;
  int last_;
  std::vector<double> outer_ratio_;
};

std::string grid_label(const Grid& grid) {
  std::ostringstream s;
  s << grid.n_r << "x" << grid.n_phi;
  return s.str();
}

}  // namespace

GridField solve_fosls(const CertifiedSystem& system, const Grid& grid, std::span<const double> f,
                      const FoslsOptions& options, FoslsStats* stats) {
  const DomainParams& params = system.domain();
  const MultiplierParams& mult = system.multiplier();
  const BoundarySpec& spec = system.boundary();
  if (f.size() != grid.size()) throw ValidationError("source", "source size does not match the grid");

  const ShiftData shift = lambda_shift_build(spec, params);
  std::vector<double> f_shifted(f.begin(), f.end());
  if (!shift.is_zero())
    for (int i = 0; i < grid.n_r; ++i)
      for (int j = 0; j < grid.n_phi; ++j)
        f_shifted[grid.index(i, j)] -=
            shift.laplacian_terms(grid.r[static_cast<std::size_t>(i)], grid.phi[static_cast<std::size_t>(j)]);

  const UnknownMap map(grid, spec);
  const int cells_r = grid.n_r - 1;
  const int n_rows = 2 * cells_r * grid.n_phi;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n_rows) * 16);
  Eigen::VectorXd rhs(n_rows);

  // Corner order a=(i,j), b=(i+1,j), c=(i,j+1), d=(i+1,j+1).
  constexpr double kDr[4] = {-1.0, 1.0, -1.0, 1.0};
  constexpr double kDphi[4] = {-1.0, -1.0, 1.0, 1.0};
  constexpr int kDi[4] = {0, 1, 0, 1};
  constexpr int kDj[4] = {0, 0, 1, 1};

  for (int i = 0; i < cells_r; ++i) {
    const double rc = 0.5 * (grid.r[static_cast<std::size_t>(i)] + grid.r[static_cast<std::size_t>(i + 1)]);
    const double xc = chi(rc, params);
    const Mat2 l = matrix_l(rc, params, mult);
    const double sw = std::sqrt(rc * grid.h_r * grid.h_phi);
    for (int j = 0; j < grid.n_phi; ++j) {
      const int cell = i * grid.n_phi + j;
      const int row1 = 2 * cell;
      const int row2 = row1 + 1;
      double fc = 0.0;
      for (int q = 0; q < 4; ++q) {
        const int ii = i + kDi[q];
        const int jj = (j + kDj[q]) % grid.n_phi;
        fc += 0.25 * f_shifted[grid.index(ii, jj)];
        const double dr = kDr[q] / (2.0 * grid.h_r);
        const double dphi = kDphi[q] / (2.0 * grid.h_phi);
        // eq1 = (1/r) D_r u2 + (chi/r^2) D_phi u1, eq2 = (1/r) D_r u1 - (1/r^2) D_phi u2
        const double e1_u1 = xc / (rc * rc) * dphi;
        const double e1_u2 = dr / rc;
        const double e2_u1 = dr / rc;
        const double e2_u2 = -dphi / (rc * rc);
        auto emit = [&](int row, double w1, double w2) {
          auto sink = [&](int col, double v) { triplets.emplace_back(row, col, sw * v); };
          map.add_u1(sink, ii, jj, w1 * e1_u1 + w2 * e2_u1);
          map.add_u2(sink, ii, jj, w1 * e1_u2 + w2 * e2_u2);
        };
        emit(row1, l(0, 0), l(0, 1));
        emit(row2, l(1, 0), l(1, 1));
      }
      rhs(row1) = sw * l(0, 0) * fc;
      rhs(row2) = sw * l(1, 0) * fc;
    }
  }

  SpMat a(n_rows, map.size());
  a.setFromTriplets(triplets.begin(), triplets.end());
  const SpMat normal = (a.transpose() * a).pruned();
  const Eigen::VectorXd normal_rhs = a.transpose() * rhs;

  Eigen::VectorXd x;
  bool iterative = options.force_iterative;
  int iterations = 0;
  if (!iterative) {
    Eigen::SimplicialLDLT<SpMat> ldlt(normal);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
      const Eigen::VectorXd d = ldlt.vectorD();
      ok = d.minCoeff() > 0.0 && d.minCoeff() > 1e-14 * d.maxCoeff();
    }
    if (ok) {
      x = ldlt.solve(normal_rhs);
      ok = ldlt.info() == Eigen::Success && x.allFinite();
    }
    iterative = !ok;
  }
  if (iterative) {
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(options.cg_tolerance);
    cg.setMaxIterations(options.cg_max_iterations);
    cg.compute(normal);
    if (cg.info() != Eigen::Success)
      throw SolverError("normal equations on the " + grid_label(grid) + " grid are too ill-conditioned to factor");
    x = cg.solve(normal_rhs);
    iterations = static_cast<int>(cg.iterations());
    if (cg.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "conjugate gradient did not reach relative residual " << options.cg_tolerance << " within "
          << options.cg_max_iterations << " iterations on the " << grid_label(grid) << " grid";
      throw SolverError(msg.str());
    }
  }

  GridField field(grid);
  std::copy(f.begin(), f.end(), field.f.begin());
  const int last = grid.n_r - 1;
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const std::size_t k = grid.index(i, j);
      field.u1[k] = i == 0 ? 0.0 : x(map.u1(i, j));
      field.u2[k] = i == last ? map.outer_ratio(j) * x(map.u1(i, j)) : x(map.u2(i, j));
    }
  }
  field.psi = reconstruct_psi(grid, field.u2);

  if (!shift.is_zero()) {
    for (int i = 0; i < grid.n_r; ++i) {
      const double r = grid.r[static_cast<std::size_t>(i)];
      for (int j = 0; j < grid.n_phi; ++j) {
        const double phi = grid.phi[static_cast<std::size_t>(j)];
        const std::size_t k = grid.index(i, j);
        field.psi[k] += shift.value(r, phi);
        field.u1[k] += shift.d_phi(r, phi);
        field.u2[k] += r * shift.d_r(r, phi);
      }
    }
  }

  if (stats) {
    stats->unknowns = static_cast<std::size_t>(map.size());
    stats->residual_rows = static_cast<std::size_t>(n_rows);
    stats->objective = weighted_objective(field, params, mult);
    stats->used_iterative = iterative;
    stats->iterations = iterations;
  }
  return field;
}

}  // namespace helix
