#include "tsflow/analysis.hpp"
#include "tsflow/error.hpp"
#include "tsflow/models.hpp"
#include "tsflow/optim.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace tsflow {

double css_objective(std::span<const double> w, std::span<const double> ar,
                     std::span<const double> ma, double intercept) {
  const std::size_t n = w.size();
  const std::size_t t0 = ar.size();
  std::vector<double> e(n, 0.0);
  double sse = 0.0;
  for (std::size_t t = t0; t < n; ++t) {
    double v = w[t] - intercept;
    for (std::size_t i = 1; i <= ar.size(); ++i) v -= ar[i - 1] * w[t - i];
    for (std::size_t j = 1; j <= ma.size() && j <= t; ++j) v -= ma[j - 1] * e[t - j];
    e[t] = v;
    sse += v * v;
  }
  return sse;
}

namespace {

struct Layout {
  std::size_t p, P, q, Q;
  bool intercept;
  std::size_t size() const { return p + P + q + Q + (intercept ? 1 : 0); }
};

struct Expanded {
  std::vector<double> ar;
  std::vector<double> ma;
  double c = 0.0;
};

Expanded expand(const Layout &l, std::span<const double> x, std::size_t period) {
  Expanded out;
  const auto phi = x.subspan(0, l.p);
  const auto Phi = x.subspan(l.p, l.P);
  const auto theta = x.subspan(l.p + l.P, l.q);
  const auto Theta = x.subspan(l.p + l.P + l.q, l.Q);
  out.ar = expand_ar(phi, Phi, period);
  out.ma = expand_ma(theta, Theta, period);
  out.c = l.intercept ? x[l.size() - 1] : 0.0;
  return out;
}

std::vector<double> innovations(std::span<const double> w, const Expanded &m) {
  std::vector<double> e(w.size(), 0.0);
  for (std::size_t t = m.ar.size(); t < w.size(); ++t) {
    double v = w[t] - m.c;
    for (std::size_t i = 1; i <= m.ar.size(); ++i) v -= m.ar[i - 1] * w[t - i];
    for (std::size_t j = 1; j <= m.ma.size() && j <= t; ++j) v -= m.ma[j - 1] * e[t - j];
    e[t] = v;
  }
  return e;
}

bool feasible(const Layout &l, std::span<const double> x) {
  return ar_stationary(x.subspan(0, l.p)) && ar_stationary(x.subspan(l.p, l.P)) &&
         ma_invertible(x.subspan(l.p + l.P, l.q)) && ma_invertible(x.subspan(l.p + l.P + l.q, l.Q));
}

// Hannan-Rissanen: long autoregression for innovation estimates, then least
// squares on lagged values and lagged innovations. Seasonal terms start at 0.
std::vector<double> hannan_rissanen(const Layout &l, std::span<const double> w) {
  std::vector<double> start(l.size(), 0.0);
  const std::size_t n = w.size();
  const double wbar = mean(w);
  if (l.intercept) start.back() = wbar;
  if (l.p == 0 && l.q == 0) {
    return start;
  }

  std::vector<double> eps(n, 0.0);
  std::size_t m = 0;
  if (l.q > 0) {
    m = std::min<std::size_t>(std::max<std::size_t>(default_max_lag(n), l.p + l.q), n / 2);
    try {
      const auto rho = acf(TimeSeries(std::vector<double>(w.begin(), w.end())), m).rho;
      const auto a = durbin_levinson(rho, m).phi;
      for (std::size_t t = m; t < n; ++t) {
        double f = wbar;
        for (std::size_t i = 1; i <= m; ++i) f += a[i - 1] * (w[t - i] - wbar);
        eps[t] = w[t] - f;
      }
    } catch (const Error &) {
      return start;
    }
  }

  const std::size_t first = m + std::max(l.p, l.q);
  if (first + l.p + l.q + 2 >= n) {
    return start;
  }
  const std::size_t rows = n - first;
  const std::size_t cols = l.p + l.q + (l.intercept ? 1 : 0);
  Eigen::MatrixXd X(rows, cols);
  Eigen::VectorXd y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = first + r;
    y(r) = w[t];
    std::size_t c = 0;
    for (std::size_t i = 1; i <= l.p; ++i) X(r, c++) = w[t - i];
    for (std::size_t j = 1; j <= l.q; ++j) X(r, c++) = eps[t - j];
    if (l.intercept) X(r, c++) = 1.0;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(cols)) {
    return start;
  }
  const Eigen::VectorXd beta = qr.solve(y);
  for (std::size_t i = 0; i < l.p; ++i) start[i] = beta(static_cast<Eigen::Index>(i));
  for (std::size_t j = 0; j < l.q; ++j) start[l.p + l.P + j] = beta(static_cast<Eigen::Index>(l.p + j));
  if (l.intercept) start.back() = beta(static_cast<Eigen::Index>(cols - 1));

  // Pull an infeasible start back toward zero.
  for (int k = 0; k < 20 && !feasible(l, start); ++k) {
    for (std::size_t i = 0; i < l.size() - (l.intercept ? 1 : 0); ++i) start[i] *= 0.5;
  }
  if (!feasible(l, start)) {
    std::fill(start.begin(), start.end(), 0.0);
    if (l.intercept) start.back() = wbar;
  }
  return start;
}

} // namespace

ModelFit fit_arima(const TimeSeries &ts, const ArimaOrder &order) {
  require_complete(ts);
  if (order.period == 0) {
    throw Error(Errc::InvalidArgument, "ARIMA period must be at least 1");
  }
  ModelFit fit;
  fit.model = "tswf:ARIMA";
  if ((order.P > 0 || order.D > 0 || order.Q > 0) && order.period == 1) {
    fit.warnings.push_back(
        "seasonal orders with period 1 fold into the nonseasonal lag polynomials");
  }

  const TimeSeries transformed = order.lambda ? transform(ts, *order.lambda) : ts;
  const TimeSeries w_ts = difference(transformed, order.d, order.D, order.period);
  const auto &w = w_ts.data();
  const std::size_t need = 10 + order.p + order.q + order.P + order.Q;
  if (w.size() < need) {
    throw Error(Errc::SeriesTooShort, "ARIMA needs at least " + std::to_string(need) +
                                          " points after differencing, got " +
                                          std::to_string(w.size()));
  }

  const Layout layout{order.p, order.P, order.q, order.Q, order.d + order.D == 0};
  const std::size_t period = order.period;
  const Objective objective = [&](std::span<const double> x) {
    if (!feasible(layout, x)) {
      return std::numeric_limits<double>::infinity();
    }
    const auto m = expand(layout, x, period);
    return css_objective(w, m.ar, m.ma, m.c);
  };

  NelderMeadOptions opts;
  opts.steps.assign(layout.size(), 0.1);
  if (layout.intercept) {
    const double sd = std::sqrt(sample_variance(w));
    opts.steps.back() = sd > 0.0 ? 0.1 * sd : 0.1;
  }
  const auto result = nelder_mead(objective, hannan_rissanen(layout, w), opts);
  fit.converged = result.converged;
  fit.iterations = result.iterations;
  fit.loss_trace = result.best_trace;
  fit.training_loss = result.value;
  if (!result.converged) {
    fit.warnings.push_back("CSS minimization stopped after " + std::to_string(result.iterations) +
                           " iterations without converging");
  }

  const auto &x = result.x;
  auto name = [&](const char *prefix, std::size_t offset, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      fit.coefficients.emplace_back(std::string(prefix) + "." + std::to_string(i + 1), x[offset + i]);
    }
  };
  name("phi", 0, order.p);
  name("Phi", order.p, order.P);
  name("theta", order.p + order.P, order.q);
  name("Theta", order.p + order.P + order.q, order.Q);
  if (layout.intercept) fit.coefficients.emplace_back("intercept", x.back());

  const auto m = expand(layout, x, period);
  const auto e = innovations(w, m);
  const std::size_t t0 = m.ar.size();
  std::vector<double> fitted, resid;
  for (std::size_t t = t0; t < w.size(); ++t) {
    fitted.push_back(w[t] - e[t]);
    resid.push_back(e[t]);
  }
  fit.fitted = w_ts.with_values(std::move(fitted), t0);
  fit.residuals = w_ts.with_values(std::move(resid), t0);
  fit.training_size = ts.size();

  ArimaState state;
  state.order = order;
  state.ar = m.ar;
  state.ma = m.ma;
  state.intercept = m.c;
  state.transformed = transformed.data();
  state.differenced = w;
  state.errors = e;
  fit.state = std::move(state);
  return fit;
}

} // namespace tsflow
