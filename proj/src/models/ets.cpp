#include "tsflow/error.hpp"
#include "tsflow/kernels.hpp"
#include "tsflow/models.hpp"

#include <algorithm>

namespace tsflow {

namespace {

std::vector<double> smoothing_grid() {
  std::vector<double> g(99);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = static_cast<double>(k + 1) / 100.0;
  return g;
}

} // namespace

ModelFit fit_ets(const TimeSeries &ts, EtsVariant variant) {
  require_complete(ts);
  if (ts.size() < 10) {
    throw Error(Errc::SeriesTooShort, "exponential smoothing needs at least 10 points");
  }
  const bool trend = variant == EtsVariant::Holt;
  const auto grid = smoothing_grid();
  const std::vector<double> betas = trend ? grid : std::vector<double>{};
  const auto sse = kernels::ets_sse_grid(ts.values(), grid, betas);
  const auto best = static_cast<std::size_t>(std::min_element(sse.begin(), sse.end()) - sse.begin());
  const std::size_t nb = trend ? betas.size() : 1;
  const double alpha = grid[best / nb];
  const double beta = trend ? betas[best % nb] : 0.0;

  // Same recursion as kernels::ets_sse, keeping the one-step predictions.
  const auto &x = ts.data();
  double level = x[0];
  double slope = trend ? x[1] - x[0] : 0.0;
  std::vector<double> fitted, resid;
  double total = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    const double pred = level + slope;
    const double e = x[t] - pred;
    fitted.push_back(pred);
    resid.push_back(e);
    total += e * e;
    const double next = alpha * x[t] + (1.0 - alpha) * (level + slope);
    if (trend) {
      slope = beta * (next - level) + (1.0 - beta) * slope;
    }
    level = next;
  }

  ModelFit fit;
  fit.model = "tswf:ETS";
  fit.params_resolved["variant"] = std::string(trend ? "holt" : "simple");
  fit.coefficients.emplace_back("alpha", alpha);
  if (trend) fit.coefficients.emplace_back("beta", beta);
  fit.fitted = ts.with_values(std::move(fitted), 1);
  fit.residuals = ts.with_values(std::move(resid), 1);
  fit.training_loss = total;
  fit.training_size = ts.size();
  fit.state = EtsState{trend, alpha, beta, level, slope};
  return fit;
}

} // namespace tsflow
