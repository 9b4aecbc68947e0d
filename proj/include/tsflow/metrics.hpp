#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsflow {

struct MeasureValue {
  std::string measure; // curie
  double value = 0.0;
  std::size_t n = 0;
  std::map<std::string, double> detail;
  bool operator==(const MeasureValue &) const = default;
};

// Evaluates each measure on actual/predicted pairs. Error measures
// (tswf:ME, MSE, RMSE, MAE, MdAE, MPE, MAPE, sMAPE, MASE), similarity
// measures (tswf:DTW, tswf:Euclidean) and, on direction-of-change labels,
// classification measures (tswf:F1Score, tswf:ConfusionMatrix).
// `training` supplies the MASE scale and the reference point for the first
// direction label.
std::vector<MeasureValue> forecast_accuracy(std::span<const double> actual,
                                            std::span<const double> predicted,
                                            std::span<const std::string> measures,
                                            std::optional<std::span<const double>> training = {});

MeasureValue evaluate_measure(const std::string &measure, std::span<const double> actual,
                              std::span<const double> predicted,
                              std::optional<std::span<const double>> training = {});

// Dynamic time warping with absolute-difference cost. `band` is the
// Sakoe-Chiba half-width.
double dtw(std::span<const double> x, std::span<const double> y,
           std::optional<std::size_t> band = std::nullopt);

double euclidean(std::span<const double> x, std::span<const double> y);

struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  bool operator==(const ConfusionMatrix &) const = default;
};

struct ClassificationScores {
  ConfusionMatrix matrix;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Labels must be 0 or 1; 1 is the positive class.
ClassificationScores classification_scores(std::span<const int> actual, std::span<const int> predicted);

} // namespace tsflow
