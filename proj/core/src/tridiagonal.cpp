#include "helix/tridiagonal.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace helix {

bool solve_in_place(TridiagonalSystem& sys) {
  const auto n = static_cast<lapack_int>(sys.size());
  if (n == 0) return true;
  // gtsv takes the off-diagonals as length n-1 arrays.
  std::vector<std::complex<double>> dl(sys.lower.begin() + 1, sys.lower.end());
  std::vector<std::complex<double>> du(sys.upper.begin(), sys.upper.end() - 1);
  std::vector<std::complex<double>> d = sys.diag;
  const lapack_int info = LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), sys.rhs.data(), n);
  return info == 0;
}

bool solve_refined(TridiagonalSystem& sys, int sweeps) {
  using wide = std::complex<long double>;
  const TridiagonalSystem original = sys;
  if (!solve_in_place(sys)) return false;
  const std::size_t n = sys.size();
  for (int s = 0; s < sweeps; ++s) {
    TridiagonalSystem corr = original;
    for (std::size_t i = 0; i < n; ++i) {
      wide acc = wide(original.rhs[i]) - wide(original.diag[i]) * wide(sys.rhs[i]);
      if (i > 0) acc -= wide(original.lower[i]) * wide(sys.rhs[i - 1]);
      if (i + 1 < n) acc -= wide(original.upper[i]) * wide(sys.rhs[i + 1]);
      corr.rhs[i] = std::complex<double>(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    if (!solve_in_place(corr)) return false;
    for (std::size_t i = 0; i < n; ++i) sys.rhs[i] += corr.rhs[i];
  }
  return true;
}

}  // namespace helix
