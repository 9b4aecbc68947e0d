#pragma once

#include "tsflow/series.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

inline std::filesystem::path data_dir() { return TSFLOW_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return TSFLOW_TEST_DATA_DIR; }

inline std::string read_text(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string lakehuron_text() { return read_text(data_dir() / "lakehuron.jsonld"); }

// Seeded generators. Everything built on std::mt19937_64 so values are
// stable across runs with the same standard library.
inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> x(n);
  for (auto &v : x) v = dist(rng);
  return x;
}

inline std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed, std::size_t burn = 200) {
  const auto e = white_noise(n + burn, seed);
  std::vector<double> x(n + burn, 0.0);
  for (std::size_t t = 1; t < x.size(); ++t) x[t] = phi * x[t - 1] + e[t];
  return {x.begin() + static_cast<std::ptrdiff_t>(burn), x.end()};
}

inline std::vector<double> ma1(std::size_t n, double theta, std::uint64_t seed) {
  const auto e = white_noise(n + 1, seed);
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = e[t + 1] + theta * e[t];
  return x;
}

inline std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
  auto x = white_noise(n, seed);
  for (std::size_t t = 1; t < n; ++t) x[t] += x[t - 1];
  return x;
}

inline tsflow::TimeSeries series(std::vector<double> v) { return tsflow::TimeSeries(std::move(v)); }

// Fresh directory under the build tree, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tsflow-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

} // namespace testing_support
