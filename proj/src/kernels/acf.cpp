#include "tsflow/kernels.hpp"

namespace tsflow::kernels {

namespace {

constexpr std::size_t kParallelWork = 1u << 15;

double lag_sum(std::span<const double> x, double m, std::size_t k) {
  const std::size_t n = x.size();
  double acc = 0.0;
  for (std::size_t t = 0; t + k < n; ++t) {
    acc += (x[t] - m) * (x[t + k] - m);
  }
  return acc / static_cast<double>(n);
}

} // namespace

std::vector<double> autocovariance_serial(std::span<const double> x, double m, std::size_t max_lag) {
  std::vector<double> gamma(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    gamma[k] = lag_sum(x, m, k);
  }
  return gamma;
}

std::vector<double> autocovariance_omp(std::span<const double> x, double m, std::size_t max_lag) {
  std::vector<double> gamma(max_lag + 1);
  const auto lags = static_cast<long>(max_lag + 1);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < lags; ++k) {
    gamma[static_cast<std::size_t>(k)] = lag_sum(x, m, static_cast<std::size_t>(k));
  }
  return gamma;
}

std::vector<double> autocovariance(std::span<const double> x, double m, std::size_t max_lag) {
  if (x.size() * (max_lag + 1) >= kParallelWork) {
    return autocovariance_omp(x, m, max_lag);
  }
  return autocovariance_serial(x, m, max_lag);
}

} // namespace tsflow::kernels
