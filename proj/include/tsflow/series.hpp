#pragma once

#include "tsflow/document.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsflow {

// Ordered observations. Missing values are NaN. Timestamps, when present,
// are seconds since the Unix epoch and strictly increasing.
class TimeSeries {
public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> values, std::string name = {});
  TimeSeries(std::vector<double> values, std::optional<std::vector<std::int64_t>> timestamps,
             std::optional<int> frequency, std::string name);

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double> &data() const noexcept { return values_; }
  const std::optional<std::vector<std::int64_t>> &timestamps() const noexcept { return timestamps_; }
  std::optional<int> frequency() const noexcept { return frequency_; }
  const std::string &name() const noexcept { return name_; }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  bool has_missing() const;

  // Same metadata, new values. `drop_front` leading timestamps are removed
  // and the remainder is trimmed to the new length.
  TimeSeries with_values(std::vector<double> values, std::size_t drop_front = 0) const;
  TimeSeries slice(std::size_t begin, std::size_t end) const;

  bool operator==(const TimeSeries &) const = default;

private:
  std::vector<double> values_;
  std::optional<std::vector<std::int64_t>> timestamps_;
  std::optional<int> frequency_;
  std::string name_;
};

struct Ingested {
  TimeSeries series;
  std::vector<std::string> warnings;
};

// RFC-4180 CSV: comma separated, header row, double-quote quoting.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

Ingested ingest_csv(const std::filesystem::path &locator, const InputSpec &spec);

// Seconds since epoch for the accepted ISO-8601 shapes ("1875",
// "2020-09-01", "2020-09-01 10:30:00", ...).
std::optional<std::int64_t> parse_instant(std::string_view text);

enum class ImputeMethod { Mean, Linear };
enum class ScaleMethod { ZScore, MinMax };

TimeSeries impute(const TimeSeries &ts, ImputeMethod method);
std::vector<std::size_t> detect_outliers(const TimeSeries &ts, double z_threshold = 3.0);
TimeSeries scale(const TimeSeries &ts, ScaleMethod method);
TimeSeries smooth_ma(const TimeSeries &ts, std::size_t window);
TimeSeries difference(const TimeSeries &ts, std::size_t d, std::size_t seasonal_d = 0,
                      std::size_t period = 1);
TimeSeries transform(const TimeSeries &ts, double lambda);
TimeSeries inverse_transform(const TimeSeries &ts, double lambda);
double box_cox(double x, double lambda);
double inverse_box_cox(double y, double lambda);

struct SpectrumPoint {
  double frequency;
  double power;
  bool operator==(const SpectrumPoint &) const = default;
};

// One-sided periodogram of the mean-removed series at k/n, k = 1..n/2.
// Ordinates are |X_k|^2 / n, with the Nyquist ordinate (even n) halved so
// the powers sum to n/2 times the population variance.
std::vector<SpectrumPoint> periodogram(const TimeSeries &ts);

// Cumulative-sum inverse of `difference`: rebuilds the series from its
// differences and the first d + D*s original values.
std::vector<double> undifference(std::span<const double> diffs, std::span<const double> initial,
                                 std::size_t d, std::size_t seasonal_d, std::size_t period);

// Coefficients of (1-B)^d (1-B^s)^D as a polynomial in B, constant term first.
std::vector<double> differencing_polynomial(std::size_t d, std::size_t seasonal_d,
                                            std::size_t period);

// Throws MissingValues when any value is NaN.
void require_complete(const TimeSeries &ts);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);
double population_variance(std::span<const double> xs);
double median(std::vector<double> xs);

} // namespace tsflow
