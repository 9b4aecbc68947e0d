#include "tsflow/error.hpp"
#include "tsflow/models.hpp"

#include <cmath>

namespace tsflow {

namespace {

std::vector<double> forecast_ar(const ArState &s, std::size_t h) {
  std::vector<double> hist(s.tail);
  const std::size_t p = s.phi.size();
  std::vector<double> out;
  for (std::size_t k = 0; k < h; ++k) {
    double f = s.mean;
    for (std::size_t i = 1; i <= p; ++i) f += s.phi[i - 1] * (hist[hist.size() - i] - s.mean);
    hist.push_back(f);
    out.push_back(f);
  }
  return out;
}

std::vector<double> forecast_arima(const ArimaState &s, std::size_t h) {
  std::vector<double> w(s.differenced);
  std::vector<double> e(s.errors);
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < h; ++k) {
    const std::size_t t = n + k;
    double v = s.intercept;
    for (std::size_t i = 1; i <= s.ar.size() && i <= t; ++i) v += s.ar[i - 1] * w[t - i];
    for (std::size_t j = 1; j <= s.ma.size() && j <= t; ++j) v += s.ma[j - 1] * e[t - j];
    w.push_back(v);
    e.push_back(0.0);
  }
  const std::span<const double> future(w.data() + n, h);
  const auto &o = s.order;
  const std::size_t lost = o.d + o.D * o.period;
  const std::span<const double> initial(s.transformed.data() + s.transformed.size() - lost, lost);
  auto y = undifference(future, initial, o.d, o.D, o.period);
  std::vector<double> out(y.begin() + static_cast<std::ptrdiff_t>(lost), y.end());
  if (o.lambda) {
    for (auto &v : out) v = inverse_box_cox(v, *o.lambda);
  }
  return out;
}

std::vector<double> forecast_ets(const EtsState &s, std::size_t h) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= h; ++k) out.push_back(s.level + static_cast<double>(k) * s.slope);
  return out;
}

std::vector<double> forecast_svr(const SvrState &s, std::size_t h) {
  std::vector<double> hist;
  for (double v : s.tail) hist.push_back((v - s.center) / s.scale);
  std::vector<double> out;
  for (std::size_t k = 0; k < h; ++k) {
    double pred = s.intercept;
    for (std::size_t i = 1; i <= s.embedding; ++i) pred += s.weights[i - 1] * hist[hist.size() - i];
    hist.push_back(pred);
    out.push_back(pred * s.scale + s.center);
  }
  return out;
}

} // namespace

Forecast forecast(const ModelFit &fit, std::size_t horizon, bool allow_unconverged) {
  if (horizon < 1) {
    throw Error(Errc::InvalidArgument, "forecast horizon must be at least 1");
  }
  if (!fit.converged && !allow_unconverged) {
    throw Error(Errc::UnconvergedModel, fit.model + " fit did not converge");
  }
  Forecast out;
  out.model = fit.model;
  out.horizon = horizon;
  out.origin = fit.training_size > 0 ? fit.training_size - 1 : 0;
  out.point = std::visit(
      [&](const auto &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ArState>) return forecast_ar(s, horizon);
        else if constexpr (std::is_same_v<S, ArimaState>) return forecast_arima(s, horizon);
        else if constexpr (std::is_same_v<S, EtsState>) return forecast_ets(s, horizon);
        else return forecast_svr(s, horizon);
      },
      fit.state);
  for (double v : out.point) {
    if (!std::isfinite(v)) {
      throw Error(Errc::DegenerateSeries, fit.model + " forecast is not finite");
    }
  }
  return out;
}

} // namespace tsflow
