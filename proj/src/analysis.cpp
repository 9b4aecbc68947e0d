#include "tsflow/analysis.hpp"

#include "tsflow/error.hpp"
#include "tsflow/kernels.hpp"
#include "tsflow/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_acf_input(const TimeSeries &ts, std::size_t h) {
  require_complete(ts);
  if (ts.size() < 2) {
    throw Error(Errc::SeriesTooShort, "autocorrelation needs at least 2 points");
  }
  if (h >= ts.size()) {
    throw Error(Errc::LagTooLarge, "lag " + std::to_string(h) + " must be below the series length " +
                                       std::to_string(ts.size()));
  }
}

std::vector<double> autocorrelations(const TimeSeries &ts, std::size_t h) {
  check_acf_input(ts, h);
  const auto gamma = kernels::autocovariance(ts.values(), mean(ts.values()), h);
  if (!(gamma[0] > 0.0)) {
    throw Error(Errc::DegenerateSeries, "series has zero variance");
  }
  std::vector<double> rho(h + 1);
  rho[0] = 1.0;
  for (std::size_t k = 1; k <= h; ++k) {
    rho[k] = gamma[k] / gamma[0];
  }
  return rho;
}

} // namespace

std::size_t default_max_lag(std::size_t n) {
  if (n < 2) {
    return 0;
  }
  const auto h = static_cast<std::size_t>(std::floor(10.0 * std::log10(static_cast<double>(n))));
  return std::min(h, n - 1);
}

AcfResult acf(const TimeSeries &ts, std::optional<std::size_t> max_lag) {
  const std::size_t h = max_lag.value_or(default_max_lag(ts.size()));
  AcfResult out;
  out.rho = autocorrelations(ts, h);
  out.n = ts.size();
  out.ci_halfwidth = 1.96 / std::sqrt(static_cast<double>(out.n));
  return out;
}

Levinson durbin_levinson(std::span<const double> rho, std::size_t order) {
  if (rho.size() < order + 1) {
    throw Error(Errc::InvalidArgument, "durbin_levinson needs rho[0..order]");
  }
  Levinson out;
  out.variance_ratio.push_back(1.0);
  std::vector<double> phi;
  for (std::size_t k = 1; k <= order; ++k) {
    double num = rho[k];
    for (std::size_t j = 1; j < k; ++j) {
      num -= phi[j - 1] * rho[k - j];
    }
    const double v = out.variance_ratio.back();
    if (!(v > 0.0)) {
      throw Error(Errc::SingularSystem, "autocorrelation matrix is singular at lag " +
                                            std::to_string(k));
    }
    const double a = num / v;
    std::vector<double> next(k);
    for (std::size_t j = 1; j < k; ++j) {
      next[j - 1] = phi[j - 1] - a * phi[k - j - 1];
    }
    next[k - 1] = a;
    phi = std::move(next);
    out.pacf.push_back(a);
    out.variance_ratio.push_back(v * (1.0 - a * a));
  }
  out.phi = std::move(phi);
  return out;
}

PacfResult pacf(const TimeSeries &ts, std::optional<std::size_t> max_lag) {
  const std::size_t h = max_lag.value_or(default_max_lag(ts.size()));
  if (h < 1) {
    throw Error(Errc::InvalidArgument, "pacf needs a lag of at least 1");
  }
  const auto rho = autocorrelations(ts, h);
  PacfResult out;
  out.phi_kk = durbin_levinson(rho, h).pacf;
  out.n = ts.size();
  out.ci_halfwidth = 1.96 / std::sqrt(static_cast<double>(out.n));
  return out;
}

std::vector<LagRow> lag_study(const TimeSeries &ts, std::optional<std::size_t> max_lag) {
  const auto r = acf(ts, max_lag);
  std::vector<LagRow> rows;
  for (std::size_t k = 1; k < r.rho.size(); ++k) {
    rows.push_back({k, r.rho[k], std::abs(r.rho[k]) > r.ci_halfwidth});
  }
  return rows;
}

Decomposition decompose(const TimeSeries &ts, std::size_t period) {
  require_complete(ts);
  if (period == 0) {
    throw Error(Errc::InvalidArgument, "period must be at least 1");
  }
  const std::size_t n = ts.size();
  if (n < 2 * period || n < 2) {
    throw Error(Errc::SeriesTooShort, "decomposition needs at least two full periods");
  }
  const auto &x = ts.data();
  std::vector<double> trend(n, kNaN);
  std::vector<double> seasonal(n, 0.0);
  std::vector<double> remainder(n, kNaN);

  if (period == 1) {
    trend = x;
  } else if (period % 2 == 1) {
    const std::size_t half = period / 2;
    for (std::size_t i = half; i + half < n; ++i) {
      double s = 0.0;
      for (std::size_t j = i - half; j <= i + half; ++j) s += x[j];
      trend[i] = s / static_cast<double>(period);
    }
  } else {
    // 2 x s moving average: half weight on the two end points.
    const std::size_t half = period / 2;
    for (std::size_t i = half; i + half < n; ++i) {
      double s = 0.5 * (x[i - half] + x[i + half]);
      for (std::size_t j = i - half + 1; j < i + half; ++j) s += x[j];
      trend[i] = s / static_cast<double>(period);
    }
  }

  if (period > 1) {
    std::vector<double> sum(period, 0.0);
    std::vector<std::size_t> count(period, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isnan(trend[i])) {
        sum[i % period] += x[i] - trend[i];
        ++count[i % period];
      }
    }
    std::vector<double> figure(period, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < period; ++j) {
      figure[j] = count[j] > 0 ? sum[j] / static_cast<double>(count[j]) : 0.0;
      total += figure[j];
    }
    const double shift = total / static_cast<double>(period);
    for (auto &f : figure) f -= shift;
    for (std::size_t i = 0; i < n; ++i) seasonal[i] = figure[i % period];
  }

  std::vector<double> rem_defined;
  std::vector<double> detrended;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isnan(trend[i])) {
      remainder[i] = x[i] - trend[i] - seasonal[i];
      rem_defined.push_back(remainder[i]);
      detrended.push_back(seasonal[i] + remainder[i]);
    }
  }
  const double var_sr = sample_variance(detrended);
  const double strength =
      var_sr > 0.0 ? std::max(0.0, 1.0 - sample_variance(rem_defined) / var_sr) : 0.0;

  Decomposition out;
  out.trend = ts.with_values(std::move(trend));
  out.seasonal = ts.with_values(std::move(seasonal));
  out.remainder = ts.with_values(std::move(remainder));
  out.period = period;
  out.seasonal_strength = std::min(1.0, strength);
  return out;
}

TestResult adf_test(const TimeSeries &ts, std::optional<std::size_t> lag_order) {
  require_complete(ts);
  const std::size_t n = ts.size();
  const std::size_t p = lag_order.value_or(
      n > 1 ? static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n - 1)))) : 0);
  if (n < p + 10) {
    throw Error(Errc::SeriesTooShort, "ADF with lag order " + std::to_string(p) + " needs at least " +
                                          std::to_string(p + 10) + " points");
  }
  const auto &x = ts.data();
  std::vector<double> dx(n - 1);
  for (std::size_t t = 1; t < n; ++t) dx[t - 1] = x[t] - x[t - 1];

  // Rows t = p+1 .. n-1: dx_t on (1, x_{t-1}, dx_{t-1}, ..., dx_{t-p}).
  const std::size_t nobs = n - 1 - p;
  const std::size_t k = 2 + p;
  Eigen::MatrixXd X(nobs, k);
  Eigen::VectorXd y(nobs);
  for (std::size_t r = 0; r < nobs; ++r) {
    const std::size_t t = r + p + 1;
    y(r) = dx[t - 1];
    X(r, 0) = 1.0;
    X(r, 1) = x[t - 1];
    for (std::size_t j = 1; j <= p; ++j) X(r, 1 + j) = dx[t - 1 - j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(X);
  if (pivoted.rank() < static_cast<Eigen::Index>(k) || nobs <= k) {
    throw Error(Errc::SingularRegression, "ADF regression is rank deficient");
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  const double sigma2 = resid.squaredNorm() / static_cast<double>(nobs - k);
  const Eigen::MatrixXd R =
      qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const double se = std::sqrt(sigma2 * Rinv.row(1).squaredNorm());
  if (!(se > 0.0)) {
    throw Error(Errc::SingularRegression, "ADF coefficient has zero standard error");
  }

  TestResult out;
  out.test = "tswf:DickeyFuller";
  out.statistic = beta(1) / se;
  out.critical_values = std::map<std::string, double>{{"1%", -3.43}, {"5%", -2.86}, {"10%", -2.57}};
  out.reject_at_5pct = out.statistic < -2.86;
  out.df_or_lags = static_cast<long>(p);
  out.detail["nobs"] = static_cast<double>(nobs);
  return out;
}

TestResult jarque_bera(const TimeSeries &ts) {
  require_complete(ts);
  const std::size_t n = ts.size();
  if (n < 4) {
    throw Error(Errc::SeriesTooShort, "Jarque-Bera needs at least 4 points");
  }
  const double m = mean(ts.values());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : ts.values()) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double nn = static_cast<double>(n);
  m2 /= nn;
  m3 /= nn;
  m4 /= nn;
  if (!(m2 > 0.0)) {
    throw Error(Errc::DegenerateSeries, "series has zero variance");
  }
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2) - 3.0;
  TestResult out;
  out.test = "tswf:JarqueBera";
  out.statistic = nn / 6.0 * (skew * skew + kurt * kurt / 4.0);
  out.p_value = std::exp(-out.statistic / 2.0);
  out.reject_at_5pct = *out.p_value < 0.05;
  out.df_or_lags = 2;
  out.detail["skewness"] = skew;
  out.detail["excess_kurtosis"] = kurt;
  return out;
}

TestResult ljung_box(const TimeSeries &ts, std::optional<std::size_t> lags) {
  const std::size_t n = ts.size();
  const std::size_t h = lags.value_or(std::max<std::size_t>(1, std::min<std::size_t>(10, n / 5)));
  if (h < 1) {
    throw Error(Errc::InvalidArgument, "Ljung-Box needs at least one lag");
  }
  const auto rho = autocorrelations(ts, h);
  const double nn = static_cast<double>(n);
  double q = 0.0;
  for (std::size_t k = 1; k <= h; ++k) {
    q += rho[k] * rho[k] / (nn - static_cast<double>(k));
  }
  q *= nn * (nn + 2.0);
  TestResult out;
  out.test = "tswf:JungBox";
  out.statistic = q;
  out.p_value = std::clamp(chi_square_sf(q, static_cast<double>(h)), 0.0, 1.0);
  out.reject_at_5pct = *out.p_value < 0.05;
  out.df_or_lags = static_cast<long>(h);
  return out;
}

TestResult runs_test(const TimeSeries &ts) {
  require_complete(ts);
  if (ts.size() < 10) {
    throw Error(Errc::SeriesTooShort, "runs test needs at least 10 points");
  }
  const double med = median(ts.data());
  std::vector<bool> above;
  for (double v : ts.values()) {
    if (v != med) above.push_back(v > med);
  }
  const auto n1 = static_cast<double>(std::count(above.begin(), above.end(), true));
  const auto n2 = static_cast<double>(above.size()) - n1;
  if (n1 == 0.0 || n2 == 0.0) {
    throw Error(Errc::DegenerateSeries, "all values lie on one side of the median");
  }
  double runs = 1.0;
  for (std::size_t i = 1; i < above.size(); ++i) {
    if (above[i] != above[i - 1]) runs += 1.0;
  }
  const double n = n1 + n2;
  const double mu = 2.0 * n1 * n2 / n + 1.0;
  const double var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n) / (n * n * (n - 1.0));
  if (!(var > 0.0)) {
    throw Error(Errc::DegenerateSeries, "runs statistic has zero variance");
  }
  const double z = (runs - mu) / std::sqrt(var);
  TestResult out;
  out.test = "tswf:RunsTest";
  out.statistic = z;
  out.p_value = std::clamp(2.0 * normal_cdf(-std::abs(z)), 0.0, 1.0);
  out.reject_at_5pct = *out.p_value < 0.05;
  out.df_or_lags = 0;
  out.detail["runs"] = runs;
  out.detail["n_above"] = n1;
  out.detail["n_below"] = n2;
  return out;
}

} // namespace tsflow
