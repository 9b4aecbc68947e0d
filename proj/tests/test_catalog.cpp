#include "tsflow/catalog.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <thread>

#include "corpus.hpp"
#include "expect.hpp"
#include "support.hpp"

using namespace tsflow;
using nlohmann::json;
namespace ts = testing_support;

namespace {

const std::string kLakeHuron = "http://dicits.ugr.es/tswf-marketplace/#TS_eb09t74";

std::string with_id(const std::string &id) {
  auto j = json::parse(ts::lakehuron_text());
  j["@id"] = id;
  return j.dump(2);
}

} // namespace

TEST(Catalog, NormalizeTerm) {
  EXPECT_EQ(normalize_term("ARIMA"), "tswf:ARIMA");
  EXPECT_EQ(normalize_term("tswf:ARIMA"), "tswf:ARIMA");
  EXPECT_EQ(normalize_term("http://dicits.ugr.es/linkeddata/tswf-schema/ARIMA"), "tswf:ARIMA");
}

TEST(Catalog, CheckDocumentFoldsSyntaxErrors) {
  const auto r = check_document("{\"@id\": ");
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(r.diagnostics.front().code, "SyntaxError");
  EXPECT_EQ(r.diagnostics.front().path, "");
}

TEST(Catalog, ImportIsIdempotentAndDetectsConflicts) {
  ts::TempDir dir("cat-import");
  Store store(dir.path());
  const auto text = ts::lakehuron_text();
  const auto first = store.import_document(text);
  ASSERT_TRUE(first.id);
  EXPECT_TRUE(first.created);
  EXPECT_EQ(*first.id, kLakeHuron);

  const auto again = store.import_document(text);
  EXPECT_FALSE(again.created);
  EXPECT_EQ(again.id, first.id);

  auto changed = json::parse(text);
  changed["tswf:version"] = "2";
  EXPECT_ERRC(store.import_document(changed.dump()), Errc::Conflict);
  EXPECT_EQ(store.raw(kLakeHuron), text);

  const auto forced = store.import_document(changed.dump(), true);
  EXPECT_TRUE(forced.id);
  EXPECT_EQ(store.raw(kLakeHuron), changed.dump());
  EXPECT_EQ(store.document(kLakeHuron).version, "2");
  EXPECT_EQ(store.list().size(), 1u);
}

TEST(Catalog, InvalidDocumentIsNotStored) {
  ts::TempDir dir("cat-invalid");
  Store store(dir.path());
  auto j = json::parse(ts::lakehuron_text());
  j["tswf:performs"]["tswf:hasTSAnalysis"]["@type"] = "tswf:Prophet";
  const auto r = store.import_document(j.dump());
  EXPECT_FALSE(r.id);
  EXPECT_FALSE(r.report.valid());
  EXPECT_TRUE(store.list().empty());
  EXPECT_ERRC(store.raw(kLakeHuron), Errc::NotFound);
}

TEST(Catalog, SurvivesRestartByteForByte) {
  ts::TempDir dir("cat-restart");
  const auto text = ts::lakehuron_text();
  std::string run_id;
  {
    Store store(dir.path());
    store.import_document(text);
    run_id = store.run_workflow(kLakeHuron, 10, ts::data_dir());
  }
  Store reopened(dir.path());
  EXPECT_EQ(reopened.raw(kLakeHuron), text);
  const auto info = reopened.info(kLakeHuron);
  ASSERT_TRUE(info);
  EXPECT_EQ(info->runs, std::vector<std::string>{run_id});
  EXPECT_EQ(reopened.run_bundle(run_id)["run_id"], run_id);
}

TEST(Catalog, RestartIgnoresStagingLeftovers) {
  ts::TempDir dir("cat-staging");
  { Store store(dir.path()); store.import_document(ts::lakehuron_text()); }
  std::filesystem::create_directories(dir.path() / "tmp" / "half-written");
  std::ofstream(dir.path() / "tmp" / "half-written" / "raw.jsonld") << "{";
  Store reopened(dir.path());
  EXPECT_EQ(reopened.list().size(), 1u);
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "tmp" / "half-written"));
}

TEST(Catalog, ListIsOrderedAndComplete) {
  ts::TempDir dir("cat-list");
  Store store(dir.path());
  const auto corpus = ts::valid_corpus();
  for (const auto &text : corpus) ASSERT_TRUE(store.import_document(text).id);
  const auto entries = store.list();
  EXPECT_EQ(entries.size(), corpus.size());
  for (std::size_t i = 1; i < entries.size(); ++i) {
    EXPECT_LE(std::tie(entries[i - 1].imported_at, entries[i - 1].id),
              std::tie(entries[i].imported_at, entries[i].id));
  }
}

TEST(Catalog, ConcurrentImports) {
  ts::TempDir dir("cat-concurrent");
  Store store(dir.path());
  std::vector<std::thread> threads;
  for (int c = 0; c < 8; ++c) {
    threads.emplace_back([&, c] {
      for (int i = c; i < 50; i += 8) {
        store.import_document(with_id("http://example.org/concurrent/#w" + std::to_string(i)));
      }
    });
  }
  for (auto &t : threads) t.join();
  EXPECT_EQ(store.list().size(), 50u);
  Store reopened(dir.path());
  EXPECT_EQ(reopened.list().size(), 50u);
  EXPECT_EQ(reopened.raw("http://example.org/concurrent/#w7"), with_id("http://example.org/concurrent/#w7"));
}

TEST(Catalog, MissingCsvRecordsNoRun) {
  ts::TempDir dir("cat-missing");
  Store store(dir.path());
  store.import_document(ts::lakehuron_text());
  EXPECT_ERRC(store.run_workflow(kLakeHuron, 10, dir.path() / "empty"), Errc::InputError);
  EXPECT_TRUE(store.info(kLakeHuron)->runs.empty());
}

TEST(Catalog, RunsAccumulate) {
  ts::TempDir dir("cat-runs");
  Store store(dir.path());
  store.import_document(ts::lakehuron_text());
  const auto a = store.run_workflow(kLakeHuron, 10, ts::data_dir());
  const auto b = store.run_workflow(kLakeHuron, 10, ts::data_dir());
  EXPECT_NE(a, b);
  EXPECT_EQ(store.info(kLakeHuron)->runs, (std::vector<std::string>{a, b}));
  EXPECT_EQ(strip_volatile(store.run_bundle(a)).dump(), strip_volatile(store.run_bundle(b)).dump());
  EXPECT_ERRC(store.run_bundle("nope"), Errc::NotFound);
}

class CompetencyQuestions : public ::testing::Test {
protected:
  void SetUp() override {
    store_ = std::make_unique<Store>(dir_.path());
    store_->import_document(ts::lakehuron_text());
    run_ = store_->run_workflow(kLakeHuron, 10, ts::data_dir());
  }
  ts::TempDir dir_{"cat-cq"};
  std::unique_ptr<Store> store_;
  std::string run_;
};

TEST_F(CompetencyQuestions, Cq01OperationCount) {
  const auto a = store_->operations_count(kLakeHuron);
  EXPECT_EQ(a["operations"], 19);
  EXPECT_EQ(a["breakdown"]["plots"], 4);
  EXPECT_EQ(a["breakdown"]["information_analyses"], 4);
  EXPECT_EQ(a["breakdown"]["stationary_analyses"], 4);
  EXPECT_EQ(a["breakdown"]["models"], 3);
  EXPECT_EQ(a["breakdown"]["outputs"], 1);
  EXPECT_EQ(a["breakdown"]["preprocessing"], 0);
  EXPECT_EQ(a["operations"].get<std::size_t>(), store_->run_bundle(run_)["steps"].size());
}

TEST_F(CompetencyQuestions, Cq02Services) {
  auto j = json::parse(ts::lakehuron_text());
  j["@id"] = "http://example.org/plots-only";
  j["tswf:hasInput"].erase("tswf:hasInformationAnalysis");
  j["tswf:hasInput"].erase("tswf:hasStationaryAnalysis");
  j.erase("tswf:performs");
  j.erase("tswf:hasOutput");
  ASSERT_TRUE(store_->import_document(j.dump()).id);
  EXPECT_EQ(store_->services_with_ts_functions()["services"], json::array({kLakeHuron}));
}

TEST_F(CompetencyQuestions, Cq03Algorithms) {
  EXPECT_EQ(store_->provides_algorithm(kLakeHuron, "SVM")["provided"], true);
  EXPECT_EQ(store_->provides_algorithm(kLakeHuron, "tswf:NeuralNetwork")["provided"], false);
  EXPECT_EQ(store_->provides_algorithm(kLakeHuron, "tswf:DeepNN")["provided"], false);
  EXPECT_EQ(store_->provides_algorithm(kLakeHuron, "tswf:ETS")["provided"], false);
}

TEST_F(CompetencyQuestions, Cq04Cq05InputAndOutputs) {
  const auto in = store_->input_of(kLakeHuron)["input"];
  EXPECT_EQ(in["src"], "///dicits/examples/lakehuron.csv");
  ASSERT_EQ(in["fields"].size(), 2u);
  EXPECT_EQ(in["fields"][0]["name"], "Year");
  EXPECT_EQ(in["fields"][1]["name"], "Level");
  const auto out = store_->outputs_of(kLakeHuron)["outputs"];
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0]["id"], "tswf:TSFCastAccu");
  EXPECT_EQ(out[0]["measures"], json::array({"tswf:RMSE", "tswf:MSE"}));
}

TEST_F(CompetencyQuestions, Cq06Cq07Metadata) {
  EXPECT_EQ(store_->cost_of(kLakeHuron)["cost_per_run"], "unspecified");
  EXPECT_EQ(store_->auth_of(kLakeHuron)["auth_required"], "unspecified");
  auto j = json::parse(ts::lakehuron_text());
  j["@id"] = "http://example.org/paid";
  j["dmcc:serviceMeta"] = {{"dmcc:costPerRun", {{"dmcc:amount", 0.25}, {"dmcc:currency", "EUR"}}},
                           {"dmcc:authRequired", true}};
  ASSERT_TRUE(store_->import_document(j.dump()).id);
  const auto cost = store_->cost_of("http://example.org/paid")["cost_per_run"];
  EXPECT_EQ(cost["amount"], 0.25);
  EXPECT_EQ(cost["currency"], "EUR");
  EXPECT_EQ(store_->auth_of("http://example.org/paid")["auth_required"], true);
}

TEST_F(CompetencyQuestions, Cq08Parameters) {
  const auto a = store_->parameters_of(kLakeHuron, "ARIMA");
  EXPECT_EQ(a["params"]["order"], json::array({0, 0, 1}));
  EXPECT_EQ(a["params"]["seasonal"], json::array({0, 0, 1}));
  EXPECT_EQ(a["params"]["lambda"], 0);
  EXPECT_TRUE(a["defaulted"].empty());
  EXPECT_ERRC(store_->parameters_of(kLakeHuron, "tswf:ETS"), Errc::NotFound);
}

TEST_F(CompetencyQuestions, Cq09Forecast) {
  const auto full = store_->forecast_of(run_, 19);
  const auto a = store_->forecast_of(run_, 5);
  ASSERT_EQ(a["forecasts"].size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(a["forecasts"][i]["point"].size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_EQ(a["forecasts"][i]["point"][k], full["forecasts"][i]["point"][k]);
    }
  }
  EXPECT_ERRC(store_->forecast_of(run_, 100), Errc::InvalidArgument);
}

TEST_F(CompetencyQuestions, Cq10BestModel) {
  const auto a = store_->best_model_of(run_, "RMSE");
  EXPECT_EQ(a["model"], "tswf:ARIMA");
  EXPECT_EQ(a["metric"], "tswf:RMSE");
  EXPECT_ERRC(store_->best_model_of(run_, "tswf:MAE"), Errc::NoSuchMetric);
}

TEST_F(CompetencyQuestions, QueryDispatch) {
  EXPECT_EQ(store_->query("cq01", {{"id", kLakeHuron}})["operations"], 19);
  EXPECT_EQ(store_->query("1", {{"id", kLakeHuron}})["operations"], 19);
  EXPECT_EQ(store_->query("09", {{"run", run_}, {"horizon", "3"}})["forecasts"][0]["point"].size(), 3u);
  EXPECT_ERRC(store_->query("11", {}), Errc::NotFound);
  EXPECT_ERRC(store_->query("01", {}), Errc::InvalidArgument);
  EXPECT_ERRC(store_->query("01", {{"id", "http://nowhere"}}), Errc::NotFound);
}
