#include "tsflow/error.hpp"
#include "tsflow/models.hpp"

#include <cmath>

namespace tsflow {

ModelFit fit_svr(const TimeSeries &ts, const SvrOptions &options) {
  require_complete(ts);
  const std::size_t p = options.embedding;
  const std::size_t n = ts.size();
  if (p == 0) {
    throw Error(Errc::InvalidArgument, "SVR embedding must be at least 1");
  }
  if (n <= p + 10) {
    throw Error(Errc::SeriesTooShort, "SVR with embedding " + std::to_string(p) +
                                          " needs more than " + std::to_string(p + 10) + " points");
  }
  if (!(options.C > 0.0) || options.epsilon < 0.0) {
    throw Error(Errc::InvalidArgument, "SVR needs C > 0 and epsilon >= 0");
  }

  const double center = mean(ts.values());
  const double sd = std::sqrt(sample_variance(ts.values()));
  const double scale = sd > 0.0 ? sd : 1.0;
  std::vector<double> z(n);
  for (std::size_t t = 0; t < n; ++t) z[t] = (ts[t] - center) / scale;

  // Objective 1/2 |w|^2 + C sum_i l_eps(z_i - w.x_i - b), split evenly over
  // the m samples; step size 1/(C t) with t counting passes.
  const std::size_t m = n - p;
  const double reg_share = 1.0 / static_cast<double>(m);
  std::vector<double> w(p, 0.0);
  double b = 0.0;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const double eta = 1.0 / (options.C * static_cast<double>(epoch + 1));
    for (std::size_t t = p; t < n; ++t) {
      double pred = b;
      for (std::size_t i = 1; i <= p; ++i) pred += w[i - 1] * z[t - i];
      const double r = z[t] - pred;
      const double g = r > options.epsilon ? -1.0 : (r < -options.epsilon ? 1.0 : 0.0);
      const double shrink = std::max(0.0, 1.0 - eta * reg_share);
      for (std::size_t i = 1; i <= p; ++i) {
        w[i - 1] = shrink * w[i - 1] - eta * options.C * g * z[t - i];
      }
      b -= eta * options.C * g;
    }
  }

  std::vector<double> fitted(m), resid(m);
  double loss = 0.0;
  for (std::size_t t = p; t < n; ++t) {
    double pred = b;
    for (std::size_t i = 1; i <= p; ++i) pred += w[i - 1] * z[t - i];
    loss += std::max(0.0, std::abs(z[t] - pred) - options.epsilon);
    fitted[t - p] = pred * scale + center;
    resid[t - p] = ts[t] - fitted[t - p];
  }

  ModelFit fit;
  fit.model = "tswf:SVM";
  fit.params_resolved["embedding"] = static_cast<std::int64_t>(p);
  fit.params_resolved["epsilon"] = options.epsilon;
  fit.params_resolved["C"] = options.C;
  fit.params_resolved["epochs"] = static_cast<std::int64_t>(options.epochs);
  for (std::size_t i = 0; i < p; ++i) fit.coefficients.emplace_back("w." + std::to_string(i + 1), w[i]);
  fit.coefficients.emplace_back("intercept", b);
  fit.fitted = ts.with_values(std::move(fitted), p);
  fit.residuals = ts.with_values(std::move(resid), p);
  fit.training_loss = loss / static_cast<double>(m);
  fit.training_size = n;
  fit.iterations = options.epochs;
  SvrState state;
  state.embedding = p;
  state.weights = w;
  state.intercept = b;
  state.center = center;
  state.scale = scale;
  state.tail.assign(ts.data().end() - static_cast<std::ptrdiff_t>(p), ts.data().end());
  fit.state = std::move(state);
  return fit;
}

} // namespace tsflow
