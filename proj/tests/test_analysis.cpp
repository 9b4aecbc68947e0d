#include "tsflow/analysis.hpp"
#include "tsflow/special.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>

#include "expect.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace tsflow;
namespace ts = testing_support;

namespace {

std::vector<double> lakehuron() {
  InputSpec spec;
  spec.fields = {{"Level", FieldType::Real}};
  return ingest_csv(ts::data_dir() / "lakehuron.csv", spec).series.data();
}

void expect_consistent(const TestResult &r) {
  if (r.p_value) {
    EXPECT_GE(*r.p_value, 0.0);
    EXPECT_LE(*r.p_value, 1.0);
    EXPECT_EQ(r.reject_at_5pct, *r.p_value < 0.05) << r.test;
  }
  if (r.critical_values) EXPECT_EQ(r.reject_at_5pct, r.statistic < r.critical_values->at("5%")) << r.test;
}

} // namespace

TEST(Acf, HandValues) {
  const auto r = acf(ts::series({1, 2, 3, 4, 5}), 2);
  ASSERT_EQ(r.rho.size(), 3u);
  EXPECT_DOUBLE_EQ(r.rho[0], 1.0);
  EXPECT_NEAR(r.rho[1], 0.4, 1e-15);
  EXPECT_NEAR(r.rho[2], -0.1, 1e-15);
  EXPECT_NEAR(r.ci_halfwidth, 1.96 / std::sqrt(5.0), 1e-15);
}

TEST(Acf, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 20 + seed * 3;
    const auto x = ts::white_noise(n, seed, 1.0 + static_cast<double>(seed));
    const auto r = acf(ts::series(x), n - 1);
    for (std::size_t k = 0; k < n; ++k) ASSERT_NEAR(r.rho[k], ts::brute_acf(x, k), 1e-12) << seed << " lag " << k;
  }
}

TEST(Pacf, MatchesYuleWalkerSolves) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = ts::ar1(80 + seed, 0.6, seed);
    const std::size_t h = 12;
    const auto rho = acf(ts::series(x), h).rho;
    const auto p = pacf(ts::series(x), h);
    ASSERT_EQ(p.phi_kk.size(), h);
    for (std::size_t k = 1; k <= h; ++k) {
      ASSERT_NEAR(p.phi_kk[k - 1], ts::yule_walker_last(rho, k), 1e-8) << seed << " lag " << k;
      ASSERT_LE(std::abs(p.phi_kk[k - 1]), 1.0);
    }
  }
}

TEST(Pacf, LakeHuronAgainstReference) {
  const auto x = ts::series(lakehuron());
  const auto a = acf(x, 3).rho;
  const auto p = pacf(x, 3).phi_kk;
  EXPECT_NEAR(a[1], 0.83191121, 1e-8);
  EXPECT_NEAR(a[2], 0.6099371, 1e-7);
  EXPECT_NEAR(p[1], -0.26675163, 1e-8);
  EXPECT_NEAR(p[2], 0.13075413, 1e-8);
}

TEST(Acf, ErrorsAndDefaults) {
  EXPECT_ERRC(acf(ts::series({1, 2, 3}), 3), Errc::LagTooLarge);
  EXPECT_ERRC(acf(ts::series({1, 1, 1}), 1), Errc::DegenerateSeries);
  EXPECT_EQ(default_max_lag(98), 19u);
  EXPECT_EQ(default_max_lag(5), 4u);
}

TEST(LagStudy, WhiteNoiseMostlyInsignificant) {
  const auto rows = lag_study(ts::series(ts::white_noise(1000, 42)), 30);
  ASSERT_EQ(rows.size(), 30u);
  std::size_t sig = 0;
  for (const auto &r : rows) sig += r.significant;
  EXPECT_LE(sig, 3u);
}

TEST(LagStudy, TrendSignificantAndEmpty) {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
  const auto rows = lag_study(ts::series(x), 5);
  EXPECT_EQ(rows[0].lag, 1u);
  EXPECT_TRUE(rows[0].significant);
  EXPECT_NEAR(rows[0].rho, 0.97, 0.01);
  EXPECT_TRUE(lag_study(ts::series(x), 0).empty());
}

TEST(Decompose, RecoversAdditiveSignal) {
  std::vector<double> x(40);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = static_cast<double>(t) + (t % 2 == 0 ? 1.0 : -1.0);
  const auto d = decompose(ts::series(x), 2);
  for (std::size_t t = 1; t + 1 < x.size(); ++t) {
    EXPECT_NEAR(d.seasonal[t], t % 2 == 0 ? 1.0 : -1.0, 1e-9);
    EXPECT_NEAR(d.trend[t], static_cast<double>(t), 1e-9);
  }
}

TEST(Decompose, ConstantSeries) {
  const auto d = decompose(ts::series(std::vector<double>(16, 5.0)), 4);
  for (std::size_t t = 0; t < 16; ++t) {
    EXPECT_EQ(d.seasonal[t], 0.0);
    if (!std::isnan(d.remainder[t])) EXPECT_NEAR(d.remainder[t], 0.0, 1e-12);
  }
}

TEST(Decompose, ExactnessAndZeroSumSeasonal) {
  for (std::size_t s : {2u, 3u, 4u, 7u, 12u}) {
    const auto x = ts::random_walk(10 * s + 3, s);
    const auto d = decompose(ts::series(x), s);
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (!std::isnan(d.trend[t])) EXPECT_NEAR(d.trend[t] + d.seasonal[t] + d.remainder[t], x[t], 1e-9);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) sum += d.seasonal[j];
    EXPECT_NEAR(sum, 0.0, 1e-9) << s;
  }
}

TEST(Decompose, NoiseHasWeakSeasonality) {
  const auto d = decompose(ts::series(ts::white_noise(240, 9)), 12);
  EXPECT_LT(d.seasonal_strength, 0.3);
}

TEST(Decompose, PeriodOneAndShortSeries) {
  const auto d = decompose(ts::series({1, 5, 2}), 1);
  EXPECT_EQ(d.trend.data(), (std::vector<double>{1, 5, 2}));
  EXPECT_EQ(d.seasonal.data(), (std::vector<double>{0, 0, 0}));
  EXPECT_ERRC(decompose(ts::series({1, 2, 3}), 2), Errc::SeriesTooShort);
}

// Statistic values frozen from statsmodels adfuller(x, maxlag=p,
// autolag=None, regression="c") on the same generated series.
TEST(Adf, MatchesReferenceFixtures) {
  const auto rw = adf_test(ts::series(ts::random_walk(500, 11)));
  EXPECT_NEAR(rw.statistic, -1.5769738226786145, 1e-9);
  EXPECT_EQ(rw.df_or_lags, 7);
  EXPECT_FALSE(rw.reject_at_5pct);
  expect_consistent(rw);

  const auto st = adf_test(ts::series(ts::ar1(500, 0.3, 12)));
  EXPECT_NEAR(st.statistic, -7.302052529480966, 1e-9);
  EXPECT_TRUE(st.reject_at_5pct);
  expect_consistent(st);

  const auto lh = adf_test(ts::series(lakehuron()), 4);
  EXPECT_NEAR(lh.statistic, -2.5069201383957718, 1e-9);
  EXPECT_FALSE(lh.p_value);
  EXPECT_DOUBLE_EQ(lh.critical_values->at("5%"), -2.86);
}

TEST(JarqueBera, AlternatingSignsIsExactlyTwo) {
  std::vector<double> x(12);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
  const auto r = jarque_bera(ts::series(x));
  EXPECT_EQ(r.statistic, 2.0);
  EXPECT_NEAR(*r.p_value, std::exp(-1.0), 1e-15);
  EXPECT_EQ(r.detail.at("skewness"), 0.0);
  EXPECT_EQ(r.detail.at("excess_kurtosis"), -2.0);
}

TEST(JarqueBera, NormalVsExponential) {
  const auto n = jarque_bera(ts::series(ts::white_noise(10000, 5)));
  EXPECT_FALSE(n.reject_at_5pct);
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> e(10000);
  for (auto &v : e) v = expo(rng);
  EXPECT_TRUE(jarque_bera(ts::series(e)).reject_at_5pct);
  expect_consistent(n);
}

TEST(JarqueBera, AffineInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = ts::ar1(200, 0.5, seed);
    const double base = jarque_bera(ts::series(x)).statistic;
    for (auto &v : x) v = -3.5 * v + 100.0;
    EXPECT_NEAR(jarque_bera(ts::series(x)).statistic, base, 1e-9);
  }
}

TEST(JarqueBera, LakeHuronAgainstReference) {
  const auto r = jarque_bera(ts::series(lakehuron()));
  EXPECT_NEAR(r.statistic, 1.3433453275194491, 1e-9);
  EXPECT_NEAR(*r.p_value, 0.5108533768241577, 1e-9);
}

TEST(LjungBox, WhiteNoiseNotRejected) {
  const auto r = ljung_box(ts::series(ts::white_noise(1000, 77)), 10);
  EXPECT_GT(*r.p_value, 0.05);
  expect_consistent(r);
}

TEST(LjungBox, LakeHuronAgainstReference) {
  const auto r = ljung_box(ts::series(lakehuron()), 10);
  EXPECT_NEAR(r.statistic, 189.85700583764975, 1e-8);
  EXPECT_NEAR(*r.p_value / 2.093830323500241e-35, 1.0, 1e-6);
  EXPECT_TRUE(r.reject_at_5pct);
}

TEST(LjungBox, NonNegativeAndMonotoneInLag) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = ts::series(ts::ar1(150, seed % 2 ? 0.4 : -0.2, seed));
    double prev = 0.0;
    for (std::size_t h = 1; h <= 20; ++h) {
      const double q = ljung_box(x, h).statistic;
      EXPECT_GE(q, prev);
      prev = q;
    }
  }
}

TEST(RunsTest, Extremes) {
  std::vector<double> alt(50), sorted(50);
  for (std::size_t i = 0; i < 50; ++i) {
    alt[i] = i % 2 == 0 ? 1.0 : -1.0;
    sorted[i] = static_cast<double>(i + 1);
  }
  const auto a = runs_test(ts::series(alt));
  EXPECT_EQ(a.detail.at("runs"), 50.0);
  EXPECT_GT(a.statistic, 0.0);
  EXPECT_TRUE(a.reject_at_5pct);
  const auto s = runs_test(ts::series(sorted));
  EXPECT_EQ(s.detail.at("runs"), 2.0);
  EXPECT_LT(s.statistic, 0.0);
  EXPECT_TRUE(s.reject_at_5pct);
  const auto noise = runs_test(ts::series(ts::white_noise(1000, 31)));
  EXPECT_FALSE(noise.reject_at_5pct);
  expect_consistent(noise);
}
