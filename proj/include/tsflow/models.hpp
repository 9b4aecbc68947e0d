#pragma once

#include "tsflow/series.hpp"
#include "tsflow/vocabulary.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tsflow {

using Coefficients = std::vector<std::pair<std::string, double>>;

struct ArState {
  double mean = 0.0;
  std::vector<double> phi;
  std::vector<double> tail; // last p training values, oldest first
  bool operator==(const ArState &) const = default;
};

struct ArimaOrder {
  std::size_t p = 0, d = 0, q = 0;
  std::size_t P = 0, D = 0, Q = 0;
  std::size_t period = 1;
  std::optional<double> lambda;
  bool operator==(const ArimaOrder &) const = default;
};

struct ArimaState {
  ArimaOrder order;
  std::vector<double> ar; // expanded lag coefficients, lag 1 first
  std::vector<double> ma;
  double intercept = 0.0;
  std::vector<double> transformed; // series after Box-Cox, before differencing
  std::vector<double> differenced;
  std::vector<double> errors; // CSS innovations aligned with `differenced`
  bool operator==(const ArimaState &) const = default;
};

struct EtsState {
  bool trend = false;
  double alpha = 0.0;
  double beta = 0.0;
  double level = 0.0;
  double slope = 0.0;
  bool operator==(const EtsState &) const = default;
};

struct SvrState {
  std::size_t embedding = 0;
  std::vector<double> weights; // scaled space, lag 1 first
  double intercept = 0.0;
  double center = 0.0;
  double scale = 1.0;
  std::vector<double> tail; // last p training values, oldest first
  bool operator==(const SvrState &) const = default;
};

using ModelState = std::variant<ArState, ArimaState, EtsState, SvrState>;

struct ModelFit {
  std::string model; // curie
  ParamMap params_resolved;
  Coefficients coefficients;
  TimeSeries fitted;
  TimeSeries residuals;
  double training_loss = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  std::vector<double> loss_trace;
  std::vector<std::string> warnings;
  std::size_t training_size = 0;
  ModelState state;
  bool operator==(const ModelFit &) const = default;
};

struct Forecast {
  std::string model;
  std::size_t origin = 0; // index of the last training point
  std::size_t horizon = 0;
  std::vector<double> point;
  bool operator==(const Forecast &) const = default;
};

// Yule-Walker AR(p). Without an order, p minimizes AIC over 0..min(10, n/10).
ModelFit fit_ar(const TimeSeries &ts, std::optional<std::size_t> order = std::nullopt);

// ARIMA by conditional sum of squares.
ModelFit fit_arima(const TimeSeries &ts, const ArimaOrder &order);

// The CSS objective at the given expanded coefficients on a differenced
// series. Exposed for oracles.
double css_objective(std::span<const double> w, std::span<const double> ar,
                     std::span<const double> ma, double intercept);

enum class EtsVariant { Simple, Holt };
ModelFit fit_ets(const TimeSeries &ts, EtsVariant variant);

struct SvrOptions {
  std::size_t embedding = 5;
  double epsilon = 0.1;
  double C = 1.0;
  std::size_t epochs = 200;
};
ModelFit fit_svr(const TimeSeries &ts, const SvrOptions &options = {});

Forecast forecast(const ModelFit &fit, std::size_t horizon, bool allow_unconverged = false);

// Polynomial helpers. AR-form coefficients describe 1 - sum a_i B^i; MA-form
// describe 1 + sum b_i B^i.
std::vector<double> expand_ar(std::span<const double> phi, std::span<const double> seasonal_phi,
                              std::size_t period);
std::vector<double> expand_ma(std::span<const double> theta, std::span<const double> seasonal_theta,
                              std::size_t period);

// Schur-Cohn step-down: true when every root of 1 - sum a_i z^i lies
// outside the circle of radius 1 + margin (approximately, via the
// reflection coefficients bounded by 1 - margin).
bool ar_stationary(std::span<const double> a, double margin = 1e-5);
bool ma_invertible(std::span<const double> b, double margin = 1e-5);

} // namespace tsflow
