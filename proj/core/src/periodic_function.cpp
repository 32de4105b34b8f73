#include "helix/periodic_function.hpp"

#include <algorithm>
#include <cmath>

#include "helix/error.hpp"

namespace helix {

namespace {

void trim(std::vector<double>& v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
}

}  // namespace

PeriodicFunction PeriodicFunction::constant(double value) { return fourier({value}, {}); }

PeriodicFunction PeriodicFunction::fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  for (double c : cos_coeffs)
    if (!std::isfinite(c)) throw ValidationError("fourier.cos", "coefficients must be finite");
  for (double s : sin_coeffs)
    if (!std::isfinite(s)) throw ValidationError("fourier.sin", "coefficients must be finite");
  PeriodicFunction f;
  f.cos_ = std::move(cos_coeffs);
  f.sin_ = std::move(sin_coeffs);
  trim(f.cos_);
  trim(f.sin_);
  return f;
}

PeriodicFunction PeriodicFunction::cosine(int n, double amplitude) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = amplitude;
  return fourier(std::move(c), {});
}

PeriodicFunction PeriodicFunction::sine(int n, double amplitude) {
  if (n < 1) throw ValidationError("fourier.sin", "sine harmonic must be >= 1");
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  s[static_cast<std::size_t>(n) - 1] = amplitude;
  return fourier({}, std::move(s));
}

double PeriodicFunction::derivative(double phi, int order) const {
  // d^k/dphi^k cos(n phi) = n^k cos(n phi + k pi/2), likewise for sin.
  const double shift = 0.5 * M_PI * order;
  double sum = 0.0;
  if (!cos_.empty() && order == 0) sum += cos_[0];
  for (std::size_t n = 1; n < cos_.size(); ++n) {
    const double nn = static_cast<double>(n);
    sum += cos_[n] * std::pow(nn, order) * std::cos(nn * phi + shift);
  }
  for (std::size_t k = 0; k < sin_.size(); ++k) {
    const double nn = static_cast<double>(k + 1);
    sum += sin_[k] * std::pow(nn, order) * std::sin(nn * phi + shift);
  }
  return sum;
}

PeriodicFunction PeriodicFunction::derivative_function() const {
  // (c_n cos + s_n sin)' = n s_n cos - n c_n sin
  const std::size_t deg = static_cast<std::size_t>(degree());
  std::vector<double> c(deg + 1, 0.0);
  std::vector<double> s(deg, 0.0);
  for (std::size_t n = 1; n <= deg; ++n) {
    const double cn = n < cos_.size() ? cos_[n] : 0.0;
    const double sn = n - 1 < sin_.size() ? sin_[n - 1] : 0.0;
    c[n] = static_cast<double>(n) * sn;
    s[n - 1] = -static_cast<double>(n) * cn;
  }
  return fourier(std::move(c), std::move(s));
}

int PeriodicFunction::degree() const {
  const std::size_t dc = cos_.empty() ? 0 : cos_.size() - 1;
  return static_cast<int>(std::max(dc, sin_.size()));
}

bool PeriodicFunction::is_zero() const { return cos_.empty() && sin_.empty(); }

PeriodicFunction operator+(const PeriodicFunction& a, const PeriodicFunction& b) {
  std::vector<double> c(std::max(a.cos_.size(), b.cos_.size()), 0.0);
  std::vector<double> s(std::max(a.sin_.size(), b.sin_.size()), 0.0);
  for (std::size_t i = 0; i < a.cos_.size(); ++i) c[i] += a.cos_[i];
  for (std::size_t i = 0; i < b.cos_.size(); ++i) c[i] += b.cos_[i];
  for (std::size_t i = 0; i < a.sin_.size(); ++i) s[i] += a.sin_[i];
  for (std::size_t i = 0; i < b.sin_.size(); ++i) s[i] += b.sin_[i];
  return PeriodicFunction::fourier(std::move(c), std::move(s));
}

PeriodicFunction operator*(double scale, const PeriodicFunction& f) {
  auto c = f.cos_;
  auto s = f.sin_;
  for (double& v : c) v *= scale;
  for (double& v : s) v *= scale;
  return PeriodicFunction::fourier(std::move(c), std::move(s));
}

PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b) {
  // Product-to-sum on every pair of harmonics.
  const int deg = a.degree() + b.degree();
  std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
  std::vector<double> s(static_cast<std::size_t>(std::max(deg, 0)), 0.0);
  auto add_cos = [&](int n, double v) { c[static_cast<std::size_t>(std::abs(n))] += v; };
  auto add_sin = [&](int n, double v) {
    if (n == 0) return;
    if (n > 0)
      s[static_cast<std::size_t>(n) - 1] += v;
    else
      s[static_cast<std::size_t>(-n) - 1] -= v;
  };
  auto ca = [&](int n) { return n < static_cast<int>(a.cos_.size()) ? a.cos_[n] : 0.0; };
  auto sa = [&](int n) { return n >= 1 && n - 1 < static_cast<int>(a.sin_.size()) ? a.sin_[n - 1] : 0.0; };
  auto cb = [&](int n) { return n < static_cast<int>(b.cos_.size()) ? b.cos_[n] : 0.0; };
  auto sb = [&](int n) { return n >= 1 && n - 1 < static_cast<int>(b.sin_.size()) ? b.sin_[n - 1] : 0.0; };
  for (int n = 0; n <= a.degree(); ++n) {
    for (int k = 0; k <= b.degree(); ++k) {
      const double cc = ca(n) * cb(k);
      const double ss = sa(n) * sb(k);
      const double cs = ca(n) * sb(k);
      const double sc = sa(n) * cb(k);
      // cos n cos k = (cos(n-k) + cos(n+k))/2
      add_cos(n - k, 0.5 * cc);
      add_cos(n + k, 0.5 * cc);
      // sin n sin k = (cos(n-k) - cos(n+k))/2
      add_cos(n - k, 0.5 * ss);
      add_cos(n + k, -0.5 * ss);
      // cos n sin k = (sin(n+k) - sin(n-k))/2
      add_sin(n + k, 0.5 * cs);
      add_sin(n - k, -0.5 * cs);
      // sin n cos k = (sin(n+k) + sin(n-k))/2
      add_sin(n + k, 0.5 * sc);
      add_sin(n - k, 0.5 * sc);
    }
  }
  return PeriodicFunction::fourier(std::move(c), std::move(s));
}

}  // namespace helix
