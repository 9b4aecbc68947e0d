#include "tsflow/metrics.hpp"

#include "tsflow/error.hpp"
#include "tsflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsflow {

namespace {

void check_pairs(std::span<const double> a, std::span<const double> p) {
  if (a.size() != p.size()) {
    throw Error(Errc::LengthMismatch, "actual has " + std::to_string(a.size()) +
                                          " values, predicted " + std::to_string(p.size()));
  }
  if (a.empty()) {
    throw Error(Errc::EmptySeries, "no pairs to evaluate");
  }
}

template <class F> double mean_of(std::size_t n, F term) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += term(i);
  return s / static_cast<double>(n);
}

// Direction of change relative to the previous actual value.
std::pair<std::vector<int>, std::vector<int>> direction_labels(std::span<const double> a,
                                                               std::span<const double> p,
                                                               std::optional<std::span<const double>> training) {
  std::vector<int> la, lp;
  std::optional<double> prev;
  if (training && !training->empty()) prev = training->back();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (prev) {
      la.push_back(a[i] > *prev ? 1 : 0);
      lp.push_back(p[i] > *prev ? 1 : 0);
    }
    prev = a[i];
  }
  if (la.empty()) {
    throw Error(Errc::MissingTraining, "direction labels need a previous actual value");
  }
  return {la, lp};
}

} // namespace

MeasureValue evaluate_measure(const std::string &measure, std::span<const double> a,
                              std::span<const double> p,
                              std::optional<std::span<const double>> training) {
  MeasureValue out;
  out.measure = measure;
  const std::string_view local = std::string_view(measure).substr(
      measure.rfind(':') == std::string::npos ? 0 : measure.rfind(':') + 1);

  if (local == "DTW") {
    out.value = dtw(a, p);
    out.n = std::max(a.size(), p.size());
    return out;
  }
  check_pairs(a, p);
  const std::size_t n = a.size();
  out.n = n;
  auto e = [&](std::size_t i) { return a[i] - p[i]; };

  if (local == "ME") {
    out.value = mean_of(n, e);
  } else if (local == "MSE") {
    out.value = mean_of(n, [&](std::size_t i) { return e(i) * e(i); });
  } else if (local == "RMSE") {
    out.value = std::sqrt(mean_of(n, [&](std::size_t i) { return e(i) * e(i); }));
  } else if (local == "MAE") {
    out.value = mean_of(n, [&](std::size_t i) { return std::abs(e(i)); });
  } else if (local == "MdAE") {
    std::vector<double> abs_err(n);
    for (std::size_t i = 0; i < n; ++i) abs_err[i] = std::abs(e(i));
    out.value = median(std::move(abs_err));
  } else if (local == "MPE" || local == "MAPE") {
    if (std::any_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) {
      throw Error(Errc::ZeroActual, measure + " is undefined with zero actual values");
    }
    out.value = local == "MPE" ? mean_of(n, [&](std::size_t i) { return 100.0 * e(i) / a[i]; })
                               : mean_of(n, [&](std::size_t i) { return 100.0 * std::abs(e(i)) / std::abs(a[i]); });
  } else if (local == "sMAPE") {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a[i]) + std::abs(p[i]) == 0.0) {
        throw Error(Errc::ZeroDenominator, "sMAPE denominator is zero at pair " + std::to_string(i));
      }
    }
    out.value = mean_of(n, [&](std::size_t i) {
      return 200.0 * std::abs(e(i)) / (std::abs(a[i]) + std::abs(p[i]));
    });
  } else if (local == "MASE") {
    if (!training || training->size() < 2) {
      throw Error(Errc::MissingTraining, "MASE needs a training series of at least 2 points");
    }
    const auto &tr = *training;
    const double scale = mean_of(tr.size() - 1, [&](std::size_t i) { return std::abs(tr[i + 1] - tr[i]); });
    if (!(scale > 0.0)) {
      throw Error(Errc::ZeroDenominator, "MASE scale is zero for a constant training series");
    }
    out.value = mean_of(n, [&](std::size_t i) { return std::abs(e(i)); }) / scale;
  } else if (local == "Euclidean") {
    out.value = euclidean(a, p);
  } else if (local == "F1Score" || local == "ConfusionMatrix") {
    const auto [la, lp] = direction_labels(a, p, training);
    const auto s = classification_scores(la, lp);
    out.n = la.size();
    out.detail = {{"tp", static_cast<double>(s.matrix.tp)}, {"fp", static_cast<double>(s.matrix.fp)},
                  {"tn", static_cast<double>(s.matrix.tn)}, {"fn", static_cast<double>(s.matrix.fn)}};
    if (local == "F1Score") {
      out.value = s.f1;
      out.detail["precision"] = s.precision;
      out.detail["recall"] = s.recall;
    } else {
      out.value = static_cast<double>(s.matrix.tp + s.matrix.tn) / static_cast<double>(la.size());
    }
  } else {
    throw Error(Errc::NoSuchMetric, "no evaluator for " + measure);
  }
  return out;
}

std::vector<MeasureValue> forecast_accuracy(std::span<const double> actual,
                                            std::span<const double> predicted,
                                            std::span<const std::string> measures,
                                            std::optional<std::span<const double>> training) {
  std::vector<MeasureValue> out;
  for (const auto &m : measures) out.push_back(evaluate_measure(m, actual, predicted, training));
  return out;
}

double dtw(std::span<const double> x, std::span<const double> y, std::optional<std::size_t> band) {
  if (x.empty() || y.empty()) {
    throw Error(Errc::EmptySeries, "dtw needs non-empty series");
  }
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const std::size_t gap = n > m ? n - m : m - n;
  if (band && *band < gap) {
    throw Error(Errc::BandTooNarrow, "band " + std::to_string(*band) +
                                         " is narrower than the length difference " + std::to_string(gap));
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), inf);
    std::size_t lo = 1, hi = m;
    if (band) {
      lo = i > *band ? std::max<std::size_t>(1, i - *band) : 1;
      hi = std::min(m, i + *band);
    }
    for (std::size_t j = lo; j <= hi; ++j) {
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = std::abs(x[i - 1] - y[j - 1]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double euclidean(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::LengthMismatch, "euclidean distance needs equal lengths");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

ClassificationScores classification_scores(std::span<const int> actual, std::span<const int> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(Errc::LengthMismatch, "label vectors differ in length");
  }
  if (actual.empty()) {
    throw Error(Errc::EmptySeries, "no labels to score");
  }
  ClassificationScores s;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int a = actual[i];
    const int p = predicted[i];
    if ((a != 0 && a != 1) || (p != 0 && p != 1)) {
      throw Error(Errc::NonBinaryLabels, "labels must be 0 or 1");
    }
    if (a == 1 && p == 1) ++s.matrix.tp;
    else if (a == 0 && p == 1) ++s.matrix.fp;
    else if (a == 0 && p == 0) ++s.matrix.tn;
    else ++s.matrix.fn;
  }
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  const auto tp = static_cast<double>(s.matrix.tp);
  s.precision = ratio(tp, tp + static_cast<double>(s.matrix.fp));
  s.recall = ratio(tp, tp + static_cast<double>(s.matrix.fn));
  s.f1 = ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

} // namespace tsflow
