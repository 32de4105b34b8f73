#pragma once

#include <vector>

namespace helix {

/// A real trigonometric polynomial on the circle,
///   f(phi) = c_0 + sum_{n>=1} c_n cos(n phi) + s_n sin(n phi).
///
/// `cos` holds c_0, c_1, ...; `sin` holds s_1, s_2, ... (no sine constant).
/// Every boundary function in the library is one of these, so values and
/// derivatives of any order are available in closed form.
class PeriodicFunction {
 public:
  PeriodicFunction() = default;

  static PeriodicFunction constant(double value);
  static PeriodicFunction fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);
  /// amplitude * cos(n phi) or amplitude * sin(n phi).
  static PeriodicFunction cosine(int n, double amplitude = 1.0);
  static PeriodicFunction sine(int n, double amplitude = 1.0);

  double operator()(double phi) const { return derivative(phi, 0); }
  /// d^order f / dphi^order at phi.
  double derivative(double phi, int order) const;
  PeriodicFunction derivative_function() const;

  /// Highest harmonic with a nonzero coefficient (0 for constants).
  int degree() const;
  bool is_constant() const { return degree() == 0; }
  bool is_zero() const;
  double mean() const { return cos_.empty() ? 0.0 : cos_[0]; }

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  friend PeriodicFunction operator+(const PeriodicFunction& a, const PeriodicFunction& b);
  friend PeriodicFunction operator*(double s, const PeriodicFunction& f);
  /// Exact product; degrees add.
  friend PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b);

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace helix
