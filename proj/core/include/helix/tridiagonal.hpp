#pragma once

#include <complex>
#include <vector>

namespace helix {

/// Complex tridiagonal system with sub/main/super diagonals (lower[0] and
/// upper[n-1] unused). Solved by LAPACK gtsv (partial pivoting); returns
/// false when the matrix is exactly singular.
struct TridiagonalSystem {
  std::vector<std::complex<double>> lower;
  std::vector<std::complex<double>> diag;
  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> rhs;

  explicit TridiagonalSystem(std::size_t n) : lower(n), diag(n), upper(n), rhs(n) {}
  std::size_t size() const { return diag.size(); }
};

/// Solves in place; on success `sys.rhs` holds the solution.
bool solve_in_place(TridiagonalSystem& sys);

/// solve_in_place followed by `sweeps` rounds of iterative refinement with the
/// residual accumulated in extended precision.
bool solve_refined(TridiagonalSystem& sys, int sweeps = 1);

}  // namespace helix
