#pragma once

#include <complex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace helix::detail {

/// One-dimensional real transform of fixed length, X_m = sum_j x_j e^{-2 pi i j m / n}
/// for m = 0..n/2. Not thread-safe (FFTW planning).
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  std::vector<std::complex<double>> forward(std::span<const double> x);
  /// Unnormalized inverse; divide by n for the round trip.
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum);

 private:
  int n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_plan_ = nullptr;
  fftw_plan inverse_plan_ = nullptr;
};

}  // namespace helix::detail
