#include "tsflow/kernels.hpp"

#include <cmath>
#include <numbers>

namespace tsflow::kernels {

namespace {

constexpr std::size_t kParallelWork = 1u << 14;

double power_at(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    // k*t is reduced modulo n so the phase stays accurate for long series.
    const double phase = step * static_cast<double>((k * t) % n);
    re += x[t] * std::cos(phase);
    im -= x[t] * std::sin(phase);
  }
  return (re * re + im * im) / static_cast<double>(n);
}

} // namespace

std::vector<double> dft_power_serial(std::span<const double> centered) {
  const std::size_t half = centered.size() / 2;
  std::vector<double> out(half);
  for (std::size_t k = 1; k <= half; ++k) {
    out[k - 1] = power_at(centered, k);
  }
  return out;
}

std::vector<double> dft_power_omp(std::span<const double> centered) {
  const std::size_t half = centered.size() / 2;
  std::vector<double> out(half);
  const auto count = static_cast<long>(half);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i) + 1;
    out[k - 1] = power_at(centered, k);
  }
  return out;
}

std::vector<double> dft_power(std::span<const double> centered) {
  if (centered.size() * centered.size() / 2 >= kParallelWork) {
    return dft_power_omp(centered);
  }
  return dft_power_serial(centered);
}

} // namespace tsflow::kernels
