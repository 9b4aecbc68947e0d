#include "tsflow/models.hpp"

#include <cmath>

namespace tsflow {

namespace {

// Product of two polynomials in B, constant term first.
std::vector<double> multiply(const std::vector<double> &a, const std::vector<double> &b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> lag_polynomial(std::span<const double> coef, std::size_t stride, double sign) {
  std::vector<double> poly(coef.size() * stride + 1, 0.0);
  poly[0] = 1.0;
  for (std::size_t i = 0; i < coef.size(); ++i) poly[(i + 1) * stride] = sign * coef[i];
  return poly;
}

} // namespace

std::vector<double> expand_ar(std::span<const double> phi, std::span<const double> seasonal_phi,
                              std::size_t period) {
  const auto poly = multiply(lag_polynomial(phi, 1, -1.0), lag_polynomial(seasonal_phi, period, -1.0));
  std::vector<double> out(poly.size() - 1);
  for (std::size_t k = 1; k < poly.size(); ++k) out[k - 1] = -poly[k];
  return out;
}

std::vector<double> expand_ma(std::span<const double> theta, std::span<const double> seasonal_theta,
                              std::size_t period) {
  const auto poly = multiply(lag_polynomial(theta, 1, 1.0), lag_polynomial(seasonal_theta, period, 1.0));
  return {poly.begin() + 1, poly.end()};
}

bool ar_stationary(std::span<const double> a, double margin) {
  std::vector<double> cur(a.begin(), a.end());
  while (!cur.empty() && cur.back() == 0.0) cur.pop_back();
  while (!cur.empty()) {
    const std::size_t m = cur.size();
    const double k = cur[m - 1];
    if (!std::isfinite(k) || std::abs(k) >= 1.0 - margin) {
      return false;
    }
    const double denom = 1.0 - k * k;
    std::vector<double> next(m - 1);
    for (std::size_t j = 1; j < m; ++j) {
      next[j - 1] = (cur[j - 1] + k * cur[m - j - 1]) / denom;
    }
    cur = std::move(next);
  }
  return true;
}

bool ma_invertible(std::span<const double> b, double margin) {
  std::vector<double> neg(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) neg[i] = -b[i];
  return ar_stationary(neg, margin);
}

} // namespace tsflow
