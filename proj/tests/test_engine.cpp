#include "tsflow/engine.hpp"
#include "tsflow/results.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>

#include "expect.hpp"
#include "support.hpp"

using namespace tsflow;
using nlohmann::json;
namespace ts = testing_support;

namespace {

WorkflowDoc lakehuron() { return parse_document(ts::lakehuron_text()); }

std::size_t count_stage(const RunBundle &b, Stage s) {
  std::size_t n = 0;
  for (const auto &step : b.steps) n += step.stage == s;
  return n;
}

template <class T> std::size_t count_outcome(const RunBundle &b) {
  std::size_t n = 0;
  for (const auto &step : b.steps) n += std::holds_alternative<T>(step.outcome);
  return n;
}

json read_json(const std::filesystem::path &p) { return json::parse(ts::read_text(p)); }

} // namespace

TEST(Engine, HoldoutRule) {
  EXPECT_EQ(holdout_size(98, 10), 19u);
  EXPECT_EQ(holdout_size(98, 25), 25u);
  EXPECT_EQ(holdout_size(10, 3), 3u);
  EXPECT_EQ(holdout_size(5, 10), 4u);
}

TEST(Engine, LocatorFallsBackToFileName) {
  EXPECT_EQ(resolve_locator("///dicits/examples/lakehuron.csv", ts::data_dir()),
            ts::data_dir() / "lakehuron.csv");
}

TEST(Engine, LakeHuronRunShape) {
  ts::TempDir dir("engine-lh");
  const auto doc = lakehuron();
  ExecuteOptions opt;
  opt.data_root = ts::data_dir();
  opt.out_dir = dir.path();
  opt.horizon = 10;
  const auto b = execute(doc, opt);
  EXPECT_EQ(b.status, RunStatus::Succeeded);
  EXPECT_EQ(b.series_length, 98u);
  EXPECT_EQ(b.holdout, 19u);
  EXPECT_EQ(b.train_size, 79u);
  ASSERT_EQ(b.steps.size(), 19u);
  EXPECT_EQ(b.steps.size(), operations_count(doc));
  EXPECT_EQ(count_stage(b, Stage::Plots), 4u);
  EXPECT_EQ(count_stage(b, Stage::InfoAnalyses), 4u);
  EXPECT_EQ(count_stage(b, Stage::StationaryAnalyses), 4u);
  EXPECT_EQ(count_outcome<PlotArtifact>(b), 4u);
  EXPECT_EQ(count_outcome<ModelFit>(b), 3u);
  EXPECT_EQ(count_outcome<Forecast>(b), 3u);
  for (const auto &s : b.steps) EXPECT_TRUE(s.ok()) << s.op;

  const auto &table = std::get<MeasureTable>(b.steps.back().outcome);
  ASSERT_EQ(table.rows.size(), 3u);
  std::size_t values = 0;
  for (const auto &row : table.rows) {
    values += row.values.size();
    for (const auto &v : row.values) EXPECT_EQ(v.n, 19u);
  }
  EXPECT_EQ(values, 6u);

  const auto run_dir = dir.path() / ("run_" + b.run_id);
  ASSERT_TRUE(std::filesystem::exists(run_dir / "bundle.json"));
  const auto bundle = read_json(run_dir / "bundle.json");
  EXPECT_EQ(bundle["steps"].size(), 19u);
  EXPECT_EQ(bundle["status"], "succeeded");
  for (const auto &p : {"PlotSTL", "PlotACF", "PlotPACF", "PlotRegular"}) {
    EXPECT_TRUE(std::filesystem::exists(run_dir / "plots" / (std::string(p) + ".svg"))) << p;
    EXPECT_TRUE(std::filesystem::exists(run_dir / "plots" / (std::string(p) + ".json"))) << p;
  }
}

TEST(Engine, HoldoutIsNotSeenByModels) {
  const auto doc = lakehuron();
  const auto b = execute(doc, ts::data_dir(), {}, 10);
  for (const auto &s : b.steps) {
    if (const auto *fit = std::get_if<ModelFit>(&s.outcome)) {
      EXPECT_EQ(fit->training_size, 79u) << s.op;
    }
    if (const auto *f = std::get_if<Forecast>(&s.outcome)) {
      EXPECT_EQ(f->point.size(), 19u) << s.op;
    }
  }
}

TEST(Engine, PlotSidecarsCarryTheNumbers) {
  ts::TempDir dir("engine-plots");
  const auto b = execute(lakehuron(), ts::data_dir(), dir.path(), 10);
  const auto plots = dir.path() / ("run_" + b.run_id) / "plots";

  const auto pacf = read_json(plots / "PlotPACF.json");
  EXPECT_EQ(pacf["values"].size(), 10u);
  const auto svg = ts::read_text(plots / "PlotPACF.svg");
  std::size_t stems = 0;
  for (auto pos = svg.find("class=\"stem\""); pos != std::string::npos; pos = svg.find("class=\"stem\"", pos + 1)) {
    ++stems;
  }
  EXPECT_EQ(stems, 10u);

  const auto regular = read_json(plots / "PlotRegular.json");
  EXPECT_EQ(regular["y"].size(), 98u);
  EXPECT_DOUBLE_EQ(regular["y"][0].get<double>(), 580.38);
  EXPECT_NE(ts::read_text(plots / "PlotRegular.svg").find("<polyline"), std::string::npos);
}

TEST(Engine, NonExecutableModelGivesPartialRun) {
  auto j = json::parse(ts::lakehuron_text());
  j["tswf:performs"]["tswf:hasMLAnalysis"] = {{"@type", "tswf:RandomForest"}};
  const auto b = execute(parse_document(j.dump()), ts::data_dir(), {}, 10);
  EXPECT_EQ(b.status, RunStatus::Partial);
  std::size_t failed = 0;
  for (const auto &s : b.steps) {
    if (!s.ok()) {
      ++failed;
      EXPECT_EQ(std::get<StepError>(s.outcome).code, Errc::UnsupportedOperation);
    }
  }
  EXPECT_GE(failed, 1u);
  // The remaining models are still measured.
  const auto &table = std::get<MeasureTable>(b.steps.back().outcome);
  EXPECT_EQ(table.rows.size(), 2u);
}

TEST(Engine, DocumentWithoutModelsSucceeds) {
  auto j = json::parse(ts::lakehuron_text());
  j.erase("tswf:performs");
  j.erase("tswf:hasOutput");
  const auto doc = parse_document(j.dump());
  const auto b = execute(doc, ts::data_dir(), {}, 10);
  EXPECT_EQ(b.status, RunStatus::Succeeded);
  EXPECT_EQ(b.steps.size(), 12u);
  EXPECT_EQ(operations_count(doc), 12u);
}

TEST(Engine, MissingInputIsAnInputError) {
  auto j = json::parse(ts::lakehuron_text());
  j["tswf:hasInput"]["tswf:source"]["tswf:src"] = "nowhere/missing.csv";
  EXPECT_ERRC(execute(parse_document(j.dump()), ts::data_dir(), {}, 10), Errc::InputError);
}

TEST(Engine, BestModel) {
  RunBundle b;
  StepResult s;
  s.stage = Stage::Outputs;
  MeasureTable t;
  for (const auto &[model, v] : std::vector<std::pair<std::string, double>>{{"tswf:AR", 1.2}, {"tswf:ARIMA", 0.9}, {"tswf:SVM", 1.5}}) {
    ModelMeasures row;
    row.model = model;
    MeasureValue mv;
    mv.measure = "tswf:RMSE";
    mv.value = v;
    row.values.push_back(mv);
    t.rows.push_back(row);
  }
  s.outcome = t;
  b.steps.push_back(s);
  EXPECT_EQ(best_model(b, "tswf:RMSE"), (BestModel{"tswf:ARIMA", 0.9}));
  EXPECT_EQ(best_model(b, "RMSE").model, "tswf:ARIMA");
  EXPECT_ERRC(best_model(b, "tswf:MAE"), Errc::NoSuchMetric);

  const auto j = to_json(b);
  EXPECT_EQ(best_model(j, "tswf:RMSE"), (BestModel{"tswf:ARIMA", 0.9}));
}

TEST(Engine, DeterministicAfterStrippingVolatileFields) {
  const auto doc = lakehuron();
  const auto a = strip_volatile(to_json(execute(doc, ts::data_dir(), {}, 10)));
  const auto b = strip_volatile(to_json(execute(doc, ts::data_dir(), {}, 10)));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.contains("run_id"));
  EXPECT_FALSE(a["steps"][0].contains("elapsed_ms"));
}

TEST(Engine, StoredForecastsMatchTheRun) {
  const auto b = execute(lakehuron(), ts::data_dir(), {}, 10);
  const auto stored = forecasts(json::parse(bundle_text(b)));
  ASSERT_EQ(stored.size(), 3u);
  std::size_t i = 0;
  for (const auto &s : b.steps) {
    if (const auto *f = std::get_if<Forecast>(&s.outcome)) {
      EXPECT_EQ(stored[i].model, f->model);
      EXPECT_EQ(stored[i].point, f->point);
      ++i;
    }
  }
}
