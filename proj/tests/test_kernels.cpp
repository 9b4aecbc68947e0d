#include "tsflow/kernels.hpp"
#include "tsflow/series.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include "support.hpp"

using namespace tsflow;
using namespace tsflow::kernels;
namespace ts = testing_support;

// The OpenMP kernels must agree with the serial references exactly: each
// output element is computed by one thread with the same summation order.
class KernelAgreement : public ::testing::TestWithParam<int> {
protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

private:
  int saved_ = 1;
};

TEST_P(KernelAgreement, Autocovariance) {
  for (std::size_t n : {5u, 97u, 1000u}) {
    const auto x = ts::white_noise(n, n + 1);
    const double m = mean(x);
    EXPECT_EQ(autocovariance_serial(x, m, n - 1), autocovariance_omp(x, m, n - 1));
    EXPECT_EQ(autocovariance(x, m, 10), autocovariance_serial(x, m, 10));
  }
}

TEST_P(KernelAgreement, DftPower) {
  for (std::size_t n : {4u, 63u, 256u}) {
    auto x = ts::white_noise(n, n);
    const double m = mean(x);
    for (auto &v : x) v -= m;
    EXPECT_EQ(dft_power_serial(x), dft_power_omp(x));
    EXPECT_EQ(dft_power(x), dft_power_serial(x));
  }
}

TEST_P(KernelAgreement, EtsGrid) {
  const auto x = ts::random_walk(120, 3);
  std::vector<double> grid;
  for (int i = 1; i <= 99; i += 7) grid.push_back(i / 100.0);
  for (bool trend : {false, true}) {
    const auto betas = trend ? grid : std::vector<double>{};
    const auto s = ets_sse_grid_serial(x, grid, betas);
    EXPECT_EQ(s, ets_sse_grid_omp(x, grid, betas));
    EXPECT_EQ(s, ets_sse_grid(x, grid, betas));
    const std::size_t cols = trend ? betas.size() : 1;
    ASSERT_EQ(s.size(), grid.size() * cols);
    EXPECT_EQ(s[1 * cols + 0], ets_sse(x, grid[1], trend ? betas[0] : 0.0, trend));
  }
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelAgreement, ::testing::Values(1, 2, 4));
