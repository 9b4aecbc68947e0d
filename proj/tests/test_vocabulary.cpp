#include "tsflow/error.hpp"
#include "tsflow/results.hpp"
#include "tsflow/vocabulary.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tsflow;

TEST(Vocabulary, ResolvesCurieAndIri) {
  const auto &reg = load_vocabulary();
  EXPECT_EQ(reg.resolve("tswf:RMSE").category, Category::EvaluationMeasure);
  const auto &ar = reg.resolve("http://dicits.ugr.es/linkeddata/tswf-schema/AR");
  EXPECT_EQ(ar.curie, "tswf:AR");
  EXPECT_EQ(ar.category, Category::PredictiveModel);
}

TEST(Vocabulary, UnknownTermThrows) {
  try {
    load_vocabulary().resolve("tswf:Bogus");
    FAIL() << "expected UnknownTerm";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::UnknownTerm);
  }
  EXPECT_EQ(load_vocabulary().find("tswf:Bogus"), nullptr);
}

TEST(Vocabulary, ParamSchemas) {
  const auto &reg = load_vocabulary();
  auto names = [](const Term &t) {
    std::vector<std::string> out;
    for (const auto &p : param_schema_of(t)) out.push_back(p.name);
    return out;
  };
  const auto arima = names(reg.resolve("tswf:ARIMA"));
  EXPECT_NE(std::find(arima.begin(), arima.end(), "order"), arima.end());
  EXPECT_NE(std::find(arima.begin(), arima.end(), "seasonal"), arima.end());
  EXPECT_NE(std::find(arima.begin(), arima.end(), "lambda"), arima.end());
  const auto pacf = names(reg.resolve("tswf:PlotPACF"));
  EXPECT_NE(std::find(pacf.begin(), pacf.end(), "lag"), pacf.end());
  EXPECT_TRUE(param_schema_of(reg.resolve("tswf:RMSE")).empty());
}

TEST(Vocabulary, RoundTripEveryTerm) {
  const auto &reg = load_vocabulary();
  ASSERT_GT(reg.terms().size(), 50u);
  for (const auto &t : reg.terms()) {
    EXPECT_EQ(reg.resolve(t.curie), t) << t.curie;
    EXPECT_EQ(reg.resolve(t.iri), t) << t.iri;
    EXPECT_EQ(expand_iri(t.curie, default_context()), t.iri);
    EXPECT_EQ(compact_iri(t.iri), t.curie);
  }
}

TEST(Vocabulary, NamespaceClosure) {
  const auto ctx = default_context();
  for (const auto &t : load_vocabulary().terms()) {
    const auto colon = t.curie.find(':');
    ASSERT_NE(colon, std::string::npos) << t.curie;
    const auto prefix = t.curie.substr(0, colon);
    ASSERT_TRUE(ctx.count(prefix)) << t.curie;
    EXPECT_EQ(t.iri.rfind(ctx.at(prefix), 0), 0u) << t.curie;
  }
}

TEST(Vocabulary, ParentsResolveAndIsA) {
  const auto &reg = load_vocabulary();
  for (const auto &t : reg.terms()) {
    if (t.parent) EXPECT_NE(reg.find(*t.parent), nullptr) << t.curie << " -> " << *t.parent;
  }
  EXPECT_TRUE(reg.is_a(reg.resolve("tswf:ARIMA"), "tswf:PredictiveModel"));
  EXPECT_FALSE(reg.is_a(reg.resolve("tswf:RMSE"), "tswf:PredictiveModel"));
}

TEST(Vocabulary, OutOfScopeTermsAreNotExecutable) {
  const auto &reg = load_vocabulary();
  for (const char *name : {"tswf:NeuralNetwork", "tswf:RandomForest", "tswf:LASSO", "tswf:MARS", "tswf:SARIMA",
                           "tswf:ARIMAX", "tswf:APN", "tswf:ADM", "tswf:SilhouetteW", "tswf:ROC",
                           "tswf:EditDistance", "tswf:Jaccard"}) {
    const auto *t = reg.find(name);
    ASSERT_NE(t, nullptr) << name;
    EXPECT_FALSE(t->executable) << name;
  }
  for (const char *name : {"tswf:AR", "tswf:ARIMA", "tswf:SVM", "tswf:ETS", "tswf:ACF", "tswf:DickeyFuller"}) {
    EXPECT_TRUE(reg.resolve(name).executable) << name;
  }
}

TEST(Vocabulary, DefaultsSatisfyTheirOwnSchema) {
  for (const auto &t : load_vocabulary().terms()) {
    for (const auto &p : t.params) {
      if (!p.default_value) continue;
      if (p.bounds) {
        if (const auto v = as_real(*p.default_value)) EXPECT_TRUE(p.bounds->contains(*v)) << t.curie << "." << p.name;
      }
      if (!p.choices.empty()) {
        const auto &s = std::get<std::string>(*p.default_value);
        EXPECT_NE(std::find(p.choices.begin(), p.choices.end(), s), p.choices.end()) << t.curie << "." << p.name;
      }
    }
  }
}

TEST(Vocabulary, ShippedDumpMatchesCompiledTable) {
  const auto shipped = Json::parse(testing_support::read_text(testing_support::data_dir() / "vocabulary.json"));
  EXPECT_EQ(shipped, vocabulary_json(load_vocabulary()));
}
