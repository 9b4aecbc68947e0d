#pragma once

#include "tsflow/series.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsflow {

struct AcfResult {
  std::vector<double> rho; // lags 0..h
  std::size_t n = 0;
  double ci_halfwidth = 0.0; // 1.96 / sqrt(n)
  bool operator==(const AcfResult &) const = default;
};

struct PacfResult {
  std::vector<double> phi_kk; // lags 1..h, phi_kk[0] is lag 1
  std::size_t n = 0;
  double ci_halfwidth = 0.0;
  bool operator==(const PacfResult &) const = default;
};

struct LagRow {
  std::size_t lag = 0;
  double rho = 0.0;
  bool significant = false;
  bool operator==(const LagRow &) const = default;
};

struct TestResult {
  std::string test; // curie of the test term
  double statistic = 0.0;
  std::optional<double> p_value;
  // Keys "1%", "5%", "10%".
  std::optional<std::map<std::string, double>> critical_values;
  bool reject_at_5pct = false;
  long df_or_lags = 0;
  // Auxiliary numbers (run counts, sample moments, ...).
  std::map<std::string, double> detail;
  bool operator==(const TestResult &) const = default;
};

struct Decomposition {
  TimeSeries trend; // NaN where the centered average is undefined
  TimeSeries seasonal;
  TimeSeries remainder;
  std::string model = "additive";
  std::size_t period = 1;
  double seasonal_strength = 0.0;
  bool operator==(const Decomposition &) const = default;
};

// floor(10 * log10(n)), capped at n - 1.
std::size_t default_max_lag(std::size_t n);

AcfResult acf(const TimeSeries &ts, std::optional<std::size_t> max_lag = std::nullopt);
PacfResult pacf(const TimeSeries &ts, std::optional<std::size_t> max_lag = std::nullopt);
std::vector<LagRow> lag_study(const TimeSeries &ts, std::optional<std::size_t> max_lag = std::nullopt);

struct Levinson {
  std::vector<double> phi;            // AR coefficients of the final order
  std::vector<double> pacf;           // phi_kk, k = 1..order
  std::vector<double> variance_ratio; // sigma_k^2 / gamma_0, k = 0..order
};

// Durbin-Levinson recursion on autocorrelations rho[0..order].
Levinson durbin_levinson(std::span<const double> rho, std::size_t order);

Decomposition decompose(const TimeSeries &ts, std::size_t period);

// Augmented Dickey-Fuller with constant and no trend.
TestResult adf_test(const TimeSeries &ts, std::optional<std::size_t> lag_order = std::nullopt);
TestResult jarque_bera(const TimeSeries &ts);
TestResult ljung_box(const TimeSeries &ts, std::optional<std::size_t> lags = std::nullopt);
TestResult runs_test(const TimeSeries &ts);

} // namespace tsflow
