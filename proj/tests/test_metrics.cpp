#include "tsflow/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "expect.hpp"
#include "support.hpp"

using namespace tsflow;
namespace ts = testing_support;

namespace {

double value(const std::string &m, const std::vector<double> &a, const std::vector<double> &p,
             std::optional<std::vector<double>> training = std::nullopt) {
  if (training) return evaluate_measure(m, a, p, std::span<const double>(*training)).value;
  return evaluate_measure(m, a, p).value;
}

// Full-matrix DTW with an explicit band test.
double dtw_oracle(const std::vector<double> &x, const std::vector<double> &y, std::optional<std::size_t> band) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = x.size(), m = y.size();
  std::vector<std::vector<double>> D(n + 1, std::vector<double>(m + 1, inf));
  D[0][0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (band && (i > j ? i - j : j - i) > *band) continue;
      D[i][j] = std::abs(x[i - 1] - y[j - 1]) + std::min({D[i - 1][j], D[i][j - 1], D[i - 1][j - 1]});
    }
  }
  return D[n][m];
}

} // namespace

TEST(Metrics, PerfectPrediction) {
  const std::vector<double> a{1, 2, 3, 4};
  for (const char *m : {"tswf:MSE", "tswf:RMSE", "tswf:MAE", "tswf:MAPE", "tswf:ME", "tswf:MdAE", "tswf:sMAPE"}) {
    EXPECT_EQ(value(m, a, a), 0.0) << m;
  }
}

TEST(Metrics, HandValues) {
  const std::vector<double> a{1, 2, 3}, p{1, 3, 5};
  EXPECT_NEAR(value("tswf:MSE", a, p), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(value("tswf:RMSE", a, p), std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(value("tswf:RMSE", a, p), 1.29099, 1e-5);
  EXPECT_DOUBLE_EQ(value("tswf:MAE", a, p), 1.0);
  EXPECT_DOUBLE_EQ(value("tswf:ME", a, p), -1.0);
  EXPECT_DOUBLE_EQ(value("tswf:MdAE", a, p), 1.0);
  EXPECT_NEAR(value("tswf:MPE", a, p), 100.0 * (0.0 - 0.5 - 2.0 / 3.0) / 3.0, 1e-12);
  EXPECT_NEAR(value("tswf:MAPE", a, p), 100.0 * (0.0 + 0.5 + 2.0 / 3.0) / 3.0, 1e-12);
  EXPECT_NEAR(value("tswf:sMAPE", a, p), 200.0 * (0.0 + 1.0 / 5.0 + 2.0 / 8.0) / 3.0, 1e-12);
}

TEST(Metrics, Errors) {
  EXPECT_ERRC(value("tswf:MAPE", {0, 1}, {1, 1}), Errc::ZeroActual);
  EXPECT_ERRC(value("tswf:MSE", {1, 2}, {1}), Errc::LengthMismatch);
  EXPECT_ERRC(value("tswf:MASE", {1, 2}, {1, 2}), Errc::MissingTraining);
  EXPECT_ERRC(value("tswf:MASE", {1, 2}, {1, 2}, std::vector<double>{3, 3, 3}), Errc::ZeroDenominator);
  EXPECT_ERRC(value("tswf:R2", {1}, {1}), Errc::NoSuchMetric);
}

TEST(Metrics, RandomPairIdentities) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = ts::white_noise(25, seed);
    const auto p = ts::white_noise(25, seed + 1000);
    const double mse = value("tswf:MSE", a, p), rmse = value("tswf:RMSE", a, p), mae = value("tswf:MAE", a, p);
    double max_e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) max_e = std::max(max_e, std::abs(a[i] - p[i]));
    EXPECT_NEAR(rmse * rmse, mse, 1e-9);
    EXPECT_LE(mae, rmse + 1e-15);
    EXPECT_LE(rmse, max_e + 1e-15);

    EXPECT_EQ(dtw(a, a), 0.0);
    EXPECT_NEAR(dtw(a, p), dtw(p, a), 1e-12);
    double l1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] - p[i]);
    EXPECT_NEAR(dtw(a, p, 0), l1, 1e-12);
    EXPECT_LE(dtw(a, p), l1 + 1e-12);

    const auto train = ts::random_walk(40, seed);
    const std::vector<double> actual(train.begin() + 1, train.end()), naive(train.begin(), train.end() - 1);
    EXPECT_NEAR(value("tswf:MASE", actual, naive, train), 1.0, 1e-9);
  }
}

TEST(Dtw, MatchesFullMatrixOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = ts::white_noise(10 + seed % 7, seed);
    const auto y = ts::white_noise(12 + seed % 5, seed + 50);
    EXPECT_NEAR(dtw(x, y), dtw_oracle(x, y, std::nullopt), 1e-12);
    EXPECT_NEAR(dtw(x, y, 6), dtw_oracle(x, y, 6), 1e-12);
  }
  EXPECT_ERRC(dtw(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{1, 2}, 1), Errc::BandTooNarrow);
}

TEST(Distance, Euclidean) {
  EXPECT_DOUBLE_EQ(euclidean(std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
  const std::vector<double> x{1.5, -2, 7};
  EXPECT_EQ(euclidean(x, x), 0.0);
}

TEST(Classification, Scores) {
  const std::vector<int> a{1, 0, 1, 1, 0};
  const auto perfect = classification_scores(a, a);
  EXPECT_EQ(perfect.f1, 1.0);
  const auto none = classification_scores(a, std::vector<int>(5, 0));
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  const auto mixed = classification_scores(std::vector<int>{1, 1, 1, 0, 0}, std::vector<int>{1, 1, 0, 1, 0});
  EXPECT_EQ(mixed.matrix, (ConfusionMatrix{2, 1, 1, 1}));
  EXPECT_NEAR(mixed.precision, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mixed.recall, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mixed.f1, 2.0 / 3.0, 1e-15);
  EXPECT_ERRC(classification_scores(std::vector<int>{2}, std::vector<int>{1}), Errc::NonBinaryLabels);
}

TEST(Classification, DirectionMeasuresOnForecasts) {
  // Directions relative to the previous actual, starting from the last
  // training value 10: up, down, up; the second prediction says up.
  const std::vector<double> train{9, 10}, actual{11, 10.5, 12}, pred{10.5, 11.5, 13};
  const auto f1 = evaluate_measure("tswf:F1Score", actual, pred, std::span<const double>(train));
  const auto cm = evaluate_measure("tswf:ConfusionMatrix", actual, pred, std::span<const double>(train));
  EXPECT_EQ(cm.detail.at("tp"), 2.0);
  EXPECT_EQ(cm.detail.at("fp"), 1.0);
  EXPECT_NEAR(f1.value, 0.8, 1e-15);
  // Without a training series the first point has no predecessor.
  const auto no_train = evaluate_measure("tswf:F1Score", actual, pred);
  EXPECT_EQ(no_train.n, 2u);
  EXPECT_ERRC(evaluate_measure("tswf:F1Score", std::vector<double>{11}, std::vector<double>{10.5}),
              Errc::MissingTraining);
}

TEST(Metrics, ForecastAccuracyKeepsOrder) {
  const std::vector<std::string> measures{"tswf:RMSE", "tswf:MSE"};
  const auto out = forecast_accuracy(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 5}, measures);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].measure, "tswf:RMSE");
  EXPECT_EQ(out[1].measure, "tswf:MSE");
  EXPECT_EQ(out[1].n, 3u);
}
