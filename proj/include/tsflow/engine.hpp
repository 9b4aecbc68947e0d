#pragma once

#include "tsflow/analysis.hpp"
#include "tsflow/document.hpp"
#include "tsflow/error.hpp"
#include "tsflow/metrics.hpp"
#include "tsflow/models.hpp"
#include "tsflow/series.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tsflow {

// Result of a preprocessing op. `flagged` and `spectrum` are filled by the
// ops that inspect rather than transform (outlier flags, periodogram).
struct SeriesOut {
  TimeSeries series;
  std::vector<std::size_t> flagged;
  std::vector<SpectrumPoint> spectrum;
  bool operator==(const SeriesOut &) const = default;
};

struct LagTable {
  std::vector<LagRow> rows;
  double ci_halfwidth = 0.0;
  bool operator==(const LagTable &) const = default;
};

struct PlotArtifact {
  std::string plot;      // curie
  std::string svg_path;  // relative to the run directory
  std::string data_path; // JSON sidecar, relative to the run directory
  bool operator==(const PlotArtifact &) const = default;
};

struct ModelMeasures {
  std::string model; // curie
  std::vector<MeasureValue> values;
  // Measures that could not be evaluated for this model: curie -> message.
  std::map<std::string, std::string> errors;
  bool operator==(const ModelMeasures &) const = default;
};

struct MeasureTable {
  std::string output_id;
  std::size_t holdout = 0;
  std::vector<ModelMeasures> rows;
  bool operator==(const MeasureTable &) const = default;
};

struct StepError {
  Errc code = Errc::InvalidArgument;
  std::string message;
  bool operator==(const StepError &) const = default;
};

// Ops that validate but have nothing to compute.
struct Skipped {
  std::string reason;
  bool operator==(const Skipped &) const = default;
};

using Outcome = std::variant<SeriesOut, AcfResult, PacfResult, LagTable, TestResult, Decomposition,
                             ModelFit, Forecast, MeasureTable, PlotArtifact, Skipped, StepError>;

struct StepResult {
  Stage stage = Stage::Preprocessing;
  std::string op; // curie
  ParamMap params_resolved;
  std::vector<std::string> defaulted; // params not written in the document
  Outcome outcome;
  std::vector<std::string> warnings;
  double elapsed_ms = 0.0;

  bool ok() const { return !std::holds_alternative<StepError>(outcome); }
};

enum class RunStatus { Succeeded, Partial, Failed };

std::string_view to_string(RunStatus s) noexcept;

struct RunBundle {
  std::string workflow_id;
  std::string run_id;
  std::string started;
  std::string finished;
  std::size_t horizon = 0;
  std::size_t series_length = 0;
  std::size_t train_size = 0;
  std::size_t holdout = 0;
  std::vector<StepResult> steps;
  std::vector<std::string> warnings;
  RunStatus status = RunStatus::Succeeded;
};

struct ExecuteOptions {
  std::filesystem::path data_root = ".";
  // Run artifacts go to out_dir/run_<id>/. Nothing is written when empty.
  std::filesystem::path out_dir = "./out";
  std::size_t horizon = 10;
  std::string run_id; // generated when empty
};

// Runs every stage in order. Input failures throw Error(InputError); any
// other failure is recorded on its step and execution continues.
RunBundle execute(const WorkflowDoc &doc, const ExecuteOptions &options);
RunBundle execute(const WorkflowDoc &doc, const std::filesystem::path &data_root,
                  const std::filesystem::path &out_dir, std::size_t horizon = 10);

// Locates the document's input under data_root: the path itself, then the
// path with leading slashes removed, then its file name.
std::filesystem::path resolve_locator(const std::string &src, const std::filesystem::path &data_root);

// Holdout length for measure evaluation: max(horizon, floor(0.2 n)),
// leaving at least one training point.
std::size_t holdout_size(std::size_t n, std::size_t horizon);

// CQ01: the step count of an all-successful run.
std::size_t operations_count(const WorkflowDoc &doc);

using PlotSource = std::variant<TimeSeries, AcfResult, PacfResult, Decomposition>;

// Writes <stem>.svg and <stem>.json under run_dir/plots.
PlotArtifact render_plot(const std::string &kind, const PlotSource &source,
                         const std::filesystem::path &run_dir, const std::string &stem);

struct BestModel {
  std::string model;
  double value = 0.0;
  bool operator==(const BestModel &) const = default;
};

BestModel best_model(const RunBundle &bundle, const std::string &metric);

std::string generate_run_id();
std::string utc_timestamp();

} // namespace tsflow
