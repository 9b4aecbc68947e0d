#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP variant; both compute every output element with the same
// sequential arithmetic, so their results are bitwise identical for any
// thread count. The dispatching entry point picks the OpenMP variant once
// the work is large enough to amortize the parallel region.

#include <cstddef>
#include <span>
#include <vector>

namespace tsflow::kernels {

// Biased autocovariances gamma_k = sum_t (x_t - m)(x_{t+k} - m) / n for
// k = 0..max_lag, given the series mean m.
std::vector<double> autocovariance_serial(std::span<const double> x, double m, std::size_t max_lag);
std::vector<double> autocovariance_omp(std::span<const double> x, double m, std::size_t max_lag);
std::vector<double> autocovariance(std::span<const double> x, double m, std::size_t max_lag);

// |X_k|^2 / n of the DFT of a (mean-removed) series, k = 1..n/2.
std::vector<double> dft_power_serial(std::span<const double> centered);
std::vector<double> dft_power_omp(std::span<const double> centered);
std::vector<double> dft_power(std::span<const double> centered);

// One-step SSE of exponential smoothing over a grid of smoothing
// parameters. `alphas` x `betas` row-major; an empty `betas` selects simple
// smoothing (one value per alpha).
std::vector<double> ets_sse_grid_serial(std::span<const double> x, std::span<const double> alphas,
                                        std::span<const double> betas);
std::vector<double> ets_sse_grid_omp(std::span<const double> x, std::span<const double> alphas,
                                     std::span<const double> betas);
std::vector<double> ets_sse_grid(std::span<const double> x, std::span<const double> alphas,
                                 std::span<const double> betas);

// Single-cell SSE used by both grid variants and by the model fit.
double ets_sse(std::span<const double> x, double alpha, double beta, bool trend);

} // namespace tsflow::kernels
