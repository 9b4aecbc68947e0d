#include "tsflow/analysis.hpp"
#include "tsflow/error.hpp"
#include "tsflow/models.hpp"

#include <cmath>
#include <limits>

namespace tsflow {

ModelFit fit_ar(const TimeSeries &ts, std::optional<std::size_t> order) {
  require_complete(ts);
  const std::size_t n = ts.size();
  if (order && n <= *order + 1) {
    throw Error(Errc::SeriesTooShort, "AR(" + std::to_string(*order) + ") needs more than " +
                                          std::to_string(*order + 1) + " points");
  }
  if (n < 2) {
    throw Error(Errc::SeriesTooShort, "AR fit needs at least 2 points");
  }
  const std::size_t max_order = order ? *order : std::min<std::size_t>(10, n / 10);
  const double gamma0 = population_variance(ts.values());

  // A constant series has no autocorrelation to fit; every coefficient is
  // zero and the forecast is the mean.
  std::size_t p = order ? *order : 0;
  std::vector<double> phi(p, 0.0);
  if (gamma0 > 0.0) {
    const auto rho = acf(ts, max_order).rho;
    const auto lev = durbin_levinson(rho, max_order);
    p = max_order;
    if (!order) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k <= max_order; ++k) {
        const double sigma2 = gamma0 * lev.variance_ratio[k];
        const double aic = static_cast<double>(n) * std::log(sigma2) + 2.0 * static_cast<double>(k);
        if (aic < best) {
          best = aic;
          p = k;
        }
      }
    }
    phi = p == max_order ? lev.phi : durbin_levinson(rho, p).phi;
  }

  const auto &x = ts.data();
  const double mu = mean(ts.values());
  std::vector<double> fitted(n - p);
  std::vector<double> resid(n - p);
  double sse = 0.0;
  for (std::size_t t = p; t < n; ++t) {
    double f = mu;
    for (std::size_t i = 1; i <= p; ++i) f += phi[i - 1] * (x[t - i] - mu);
    fitted[t - p] = f;
    resid[t - p] = x[t] - f;
    sse += resid[t - p] * resid[t - p];
  }

  ModelFit fit;
  fit.model = "tswf:AR";
  fit.params_resolved["order"] = static_cast<std::int64_t>(p);
  double phi_sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    fit.coefficients.emplace_back("phi." + std::to_string(i + 1), phi[i]);
    phi_sum += phi[i];
  }
  fit.coefficients.emplace_back("intercept", mu * (1.0 - phi_sum));
  fit.fitted = ts.with_values(std::move(fitted), p);
  fit.residuals = ts.with_values(std::move(resid), p);
  fit.training_loss = sse;
  fit.training_size = n;
  ArState state;
  state.mean = mu;
  state.phi = phi;
  state.tail.assign(x.end() - static_cast<std::ptrdiff_t>(p), x.end());
  fit.state = std::move(state);
  return fit;
}

} // namespace tsflow
