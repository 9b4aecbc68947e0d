#include "tsflow/kernels.hpp"

namespace tsflow::kernels {

namespace {

constexpr std::size_t kParallelWork = 1u << 16;

} // namespace

double ets_sse(std::span<const double> x, double alpha, double beta, bool trend) {
  const std::size_t n = x.size();
  if (n < 2) {
    return 0.0;
  }
  double level = x[0];
  double slope = trend ? x[1] - x[0] : 0.0;
  double sse = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double e = x[t] - (level + slope);
    sse += e * e;
    const double next = alpha * x[t] + (1.0 - alpha) * (level + slope);
    if (trend) {
      slope = beta * (next - level) + (1.0 - beta) * slope;
    }
    level = next;
  }
  return sse;
}

std::vector<double> ets_sse_grid_serial(std::span<const double> x, std::span<const double> alphas,
                                        std::span<const double> betas) {
  const bool trend = !betas.empty();
  const std::size_t nb = trend ? betas.size() : 1;
  std::vector<double> out(alphas.size() * nb);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      out[i * nb + j] = ets_sse(x, alphas[i], trend ? betas[j] : 0.0, trend);
    }
  }
  return out;
}

std::vector<double> ets_sse_grid_omp(std::span<const double> x, std::span<const double> alphas,
                                     std::span<const double> betas) {
  const bool trend = !betas.empty();
  const std::size_t nb = trend ? betas.size() : 1;
  std::vector<double> out(alphas.size() * nb);
  const auto cells = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cells; ++c) {
    const auto i = static_cast<std::size_t>(c) / nb;
    const auto j = static_cast<std::size_t>(c) % nb;
    out[static_cast<std::size_t>(c)] = ets_sse(x, alphas[i], trend ? betas[j] : 0.0, trend);
  }
  return out;
}

std::vector<double> ets_sse_grid(std::span<const double> x, std::span<const double> alphas,
                                 std::span<const double> betas) {
  const std::size_t cells = alphas.size() * (betas.empty() ? 1 : betas.size());
  if (cells * x.size() >= kParallelWork) {
    return ets_sse_grid_omp(x, alphas, betas);
  }
  return ets_sse_grid_serial(x, alphas, betas);
}

} // namespace tsflow::kernels
