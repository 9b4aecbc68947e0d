#include "tsflow/series.hpp"

#include "tsflow/error.hpp"
#include "tsflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsflow {

TimeSeries::TimeSeries(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {}

TimeSeries::TimeSeries(std::vector<double> values,
                       std::optional<std::vector<std::int64_t>> timestamps,
                       std::optional<int> frequency, std::string name)
    : values_(std::move(values)), timestamps_(std::move(timestamps)), frequency_(frequency),
      name_(std::move(name)) {
  if (timestamps_) {
    if (timestamps_->size() != values_.size()) {
      throw Error(Errc::BadTimestamps, "timestamps and values differ in length");
    }
    if (std::adjacent_find(timestamps_->begin(), timestamps_->end(),
                           [](auto a, auto b) { return b <= a; }) != timestamps_->end()) {
      throw Error(Errc::BadTimestamps, "timestamps must be strictly increasing");
    }
  }
  if (frequency_ && *frequency_ < 2) {
    throw Error(Errc::InvalidArgument, "frequency must be at least 2");
  }
}

bool TimeSeries::has_missing() const {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return std::isnan(v); });
}

TimeSeries TimeSeries::with_values(std::vector<double> values, std::size_t drop_front) const {
  std::optional<std::vector<std::int64_t>> stamps;
  if (timestamps_) {
    const auto first = std::min(drop_front, timestamps_->size());
    const auto last = std::min(first + values.size(), timestamps_->size());
    stamps.emplace(timestamps_->begin() + static_cast<std::ptrdiff_t>(first),
                   timestamps_->begin() + static_cast<std::ptrdiff_t>(last));
    if (stamps->size() != values.size()) {
      stamps.reset();
    }
  }
  return TimeSeries(std::move(values), std::move(stamps), frequency_, name_);
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, values_.size());
  begin = std::min(begin, end);
  std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                        values_.begin() + static_cast<std::ptrdiff_t>(end));
  return with_values(std::move(v), begin);
}

void require_complete(const TimeSeries &ts) {
  if (ts.has_missing()) {
    throw Error(Errc::MissingValues, "series has missing values; impute first");
  }
}

double mean(std::span<const double> xs) {
  if (xs.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

namespace {

double centered_ss(std::span<const double> xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - m) * (x - m);
  }
  return ss;
}

} // namespace

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) {
    return 0.0;
  }
  return centered_ss(xs) / static_cast<double>(xs.size() - 1);
}

double population_variance(std::span<const double> xs) {
  if (xs.empty()) {
    return 0.0;
  }
  return centered_ss(xs) / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  if (xs.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

TimeSeries impute(const TimeSeries &ts, ImputeMethod method) {
  const auto &x = ts.data();
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isnan(x[i])) {
      known.push_back(i);
    }
  }
  if (known.empty()) {
    throw Error(Errc::AllMissing, "every value is missing");
  }
  std::vector<double> out = x;
  if (method == ImputeMethod::Mean) {
    double sum = 0.0;
    for (auto i : known) sum += x[i];
    const double m = sum / static_cast<double>(known.size());
    for (auto &v : out) {
      if (std::isnan(v)) v = m;
    }
    return ts.with_values(std::move(out));
  }
  // Flat extrapolation before the first and after the last known value.
  for (std::size_t i = 0; i < known.front(); ++i) out[i] = x[known.front()];
  for (std::size_t i = known.back() + 1; i < x.size(); ++i) out[i] = x[known.back()];
  for (std::size_t k = 0; k + 1 < known.size(); ++k) {
    const auto a = known[k];
    const auto b = known[k + 1];
    for (std::size_t i = a + 1; i < b; ++i) {
      const double w = static_cast<double>(i - a) / static_cast<double>(b - a);
      out[i] = x[a] + w * (x[b] - x[a]);
    }
  }
  return ts.with_values(std::move(out));
}

std::vector<std::size_t> detect_outliers(const TimeSeries &ts, double z_threshold) {
  if (ts.size() < 3) {
    throw Error(Errc::SeriesTooShort, "outlier detection needs at least 3 points");
  }
  require_complete(ts);
  const double m = mean(ts.values());
  const double sd = std::sqrt(sample_variance(ts.values()));
  if (!(sd > 0.0)) {
    throw Error(Errc::DegenerateSeries, "series has zero variance");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::abs(ts[i] - m) / sd > z_threshold) {
      idx.push_back(i);
    }
  }
  return idx;
}

TimeSeries scale(const TimeSeries &ts, ScaleMethod method) {
  require_complete(ts);
  std::vector<double> out(ts.data());
  if (method == ScaleMethod::ZScore) {
    const double m = mean(out);
    const double sd = std::sqrt(sample_variance(out));
    if (!(sd > 0.0)) {
      throw Error(Errc::DegenerateSeries, "z-score scaling of a constant series");
    }
    for (auto &v : out) v = (v - m) / sd;
  } else {
    if (out.empty()) {
      throw Error(Errc::DegenerateSeries, "empty series");
    }
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double a = *lo;
    const double range = *hi - *lo;
    if (!(range > 0.0)) {
      throw Error(Errc::DegenerateSeries, "min-max scaling of a constant series");
    }
    for (auto &v : out) v = (v - a) / range;
  }
  return ts.with_values(std::move(out));
}

TimeSeries smooth_ma(const TimeSeries &ts, std::size_t window) {
  if (window == 0) {
    throw Error(Errc::InvalidArgument, "window must be at least 1");
  }
  if (window > ts.size()) {
    throw Error(Errc::WindowTooLarge, "window exceeds series length");
  }
  if (window == 1) {
    return ts;
  }
  const auto &x = ts.data();
  std::vector<double> out(x.size() - window + 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < window; ++j) s += x[i + j];
    out[i] = s / static_cast<double>(window);
  }
  return ts.with_values(std::move(out), (window - 1) / 2);
}

std::vector<double> differencing_polynomial(std::size_t d, std::size_t seasonal_d,
                                            std::size_t period) {
  std::vector<double> poly{1.0};
  auto multiply = [&](std::size_t lag) {
    std::vector<double> next(poly.size() + lag, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + lag] -= poly[i];
    }
    poly = std::move(next);
  };
  for (std::size_t i = 0; i < d; ++i) multiply(1);
  for (std::size_t i = 0; i < seasonal_d; ++i) multiply(period);
  return poly;
}

TimeSeries difference(const TimeSeries &ts, std::size_t d, std::size_t seasonal_d,
                      std::size_t period) {
  if (seasonal_d > 0 && period == 0) {
    throw Error(Errc::InvalidArgument, "seasonal differencing needs a period");
  }
  const std::size_t lost = d + seasonal_d * period;
  if (ts.size() <= lost) {
    throw Error(Errc::SeriesTooShort, "series too short for the requested differencing");
  }
  if (lost == 0) {
    return ts;
  }
  const auto poly = differencing_polynomial(d, seasonal_d, period);
  const auto &x = ts.data();
  std::vector<double> out(x.size() - lost);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t t = j + lost;
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] != 0.0) acc += poly[i] * x[t - i];
    }
    out[j] = acc;
  }
  return ts.with_values(std::move(out), lost);
}

std::vector<double> undifference(std::span<const double> diffs, std::span<const double> initial,
                                 std::size_t d, std::size_t seasonal_d, std::size_t period) {
  const auto poly = differencing_polynomial(d, seasonal_d, period);
  const std::size_t lost = poly.size() - 1;
  if (initial.size() != lost) {
    throw Error(Errc::InvalidArgument, "undifference needs exactly d + D*s initial values");
  }
  std::vector<double> y(initial.begin(), initial.end());
  y.reserve(lost + diffs.size());
  for (std::size_t j = 0; j < diffs.size(); ++j) {
    const std::size_t t = j + lost;
    double acc = diffs[j];
    for (std::size_t i = 1; i < poly.size(); ++i) {
      if (poly[i] != 0.0) acc -= poly[i] * y[t - i];
    }
    y.push_back(acc);
  }
  return y;
}

double box_cox(double x, double lambda) {
  return lambda == 0.0 ? std::log(x) : (std::pow(x, lambda) - 1.0) / lambda;
}

double inverse_box_cox(double y, double lambda) {
  return lambda == 0.0 ? std::exp(y) : std::pow(lambda * y + 1.0, 1.0 / lambda);
}

TimeSeries transform(const TimeSeries &ts, double lambda) {
  const bool integral = std::floor(lambda) == lambda;
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = ts[i];
    if (lambda <= 0.0 && !(x > 0.0)) {
      throw Error(Errc::NonPositiveValue, "Box-Cox with lambda <= 0 needs positive values");
    }
    if (lambda > 0.0 && !integral && x < 0.0) {
      throw Error(Errc::NonPositiveValue, "fractional Box-Cox power of a negative value");
    }
    out[i] = box_cox(x, lambda);
  }
  return ts.with_values(std::move(out));
}

TimeSeries inverse_transform(const TimeSeries &ts, double lambda) {
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out[i] = inverse_box_cox(ts[i], lambda);
  }
  return ts.with_values(std::move(out));
}

std::vector<SpectrumPoint> periodogram(const TimeSeries &ts) {
  if (ts.size() < 4) {
    throw Error(Errc::SeriesTooShort, "periodogram needs at least 4 points");
  }
  require_complete(ts);
  const std::size_t n = ts.size();
  const double m = mean(ts.values());
  std::vector<double> centered(n);
  std::transform(ts.data().begin(), ts.data().end(), centered.begin(),
                 [m](double v) { return v - m; });
  auto power = kernels::dft_power(centered);
  if (n % 2 == 0) {
    power.back() *= 0.5;
  }
  std::vector<SpectrumPoint> out(power.size());
  for (std::size_t k = 0; k < power.size(); ++k) {
    out[k] = {static_cast<double>(k + 1) / static_cast<double>(n), power[k]};
  }
  return out;
}

} // namespace tsflow
