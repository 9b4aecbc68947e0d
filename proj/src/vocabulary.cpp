#include "tsflow/vocabulary.hpp"

#include "tsflow/error.hpp"

#include <limits>
#include <stdexcept>

namespace tsflow {

std::string_view to_string(Category c) noexcept {
  switch (c) {
  case Category::Metadata: return "Metadata";
  case Category::Input: return "Input";
  case Category::Plot: return "Plot";
  case Category::InformationAnalysis: return "InformationAnalysis";
  case Category::StationaryAnalysis: return "StationaryAnalysis";
  case Category::Preprocessing: return "Preprocessing";
  case Category::PredictiveModel: return "PredictiveModel";
  case Category::EvaluationMeasure: return "EvaluationMeasure";
  case Category::Output: return "Output";
  case Category::Property: return "Property";
  }
  return "Property";
}

std::string_view to_string(ParamKind k) noexcept {
  switch (k) {
  case ParamKind::Integer: return "integer";
  case ParamKind::Real: return "real";
  case ParamKind::IntegerList: return "integer-list";
  case ParamKind::RealList: return "real-list";
  case ParamKind::String: return "string";
  case ParamKind::Boolean: return "boolean";
  }
  return "real";
}

PrefixMap default_context() {
  return {
      {"tswf", std::string(kTswfNamespace)},
      {"dmcc", std::string(kDmccNamespace)},
      {"skos", "http://www.w3.org/2004/02/skos/core#"},
      {"schema", "http://schema.org/"},
      {"mls", "http://www.w3.org/ns/mls#"},
  };
}

std::string expand_iri(std::string_view name, const PrefixMap &prefixes) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) {
    return std::string(name);
  }
  const auto prefix = name.substr(0, colon);
  const auto rest = name.substr(colon + 1);
  if (rest.starts_with("//")) {
    return std::string(name); // already absolute
  }
  const auto it = prefixes.find(prefix);
  if (it == prefixes.end()) {
    return std::string(name);
  }
  return it->second + std::string(rest);
}

std::string compact_iri(std::string_view iri) {
  if (iri.starts_with(kTswfNamespace)) {
    return "tswf:" + std::string(iri.substr(kTswfNamespace.size()));
  }
  return std::string(iri);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ParamSpec integer(std::string name, std::optional<std::int64_t> def, double lo,
                  double hi, std::string rule = {}) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = ParamKind::Integer;
  if (def) {
    p.default_value = *def;
  }
  p.bounds = Bounds{lo, hi};
  p.default_rule = std::move(rule);
  return p;
}

ParamSpec real(std::string name, std::optional<double> def, double lo, double hi,
               std::string rule = {}) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = ParamKind::Real;
  if (def) {
    p.default_value = *def;
  }
  p.bounds = Bounds{lo, hi};
  p.default_rule = std::move(rule);
  return p;
}

ParamSpec int_list(std::string name, std::vector<std::int64_t> def,
                   std::size_t len, double lo, double hi) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = ParamKind::IntegerList;
  p.default_value = std::move(def);
  p.length = len;
  p.bounds = Bounds{lo, hi};
  return p;
}

ParamSpec choice(std::string name, std::string def, std::vector<std::string> options) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = ParamKind::String;
  p.default_value = std::move(def);
  p.choices = std::move(options);
  return p;
}

ParamSpec auto_lag(std::string name = "lag") {
  return integer(std::move(name), std::nullopt, 1, 10000, "floor(10*log10(n)), capped at n-1");
}

ParamSpec period() {
  return integer("period", std::nullopt, 1, 10000, "input frequency, else 1");
}

struct Builder {
  std::vector<Term> terms;

  Term &add(std::string_view local, Category cat, std::optional<std::string> parent,
            bool executable, std::vector<ParamSpec> params = {}, std::string note = {}) {
    Term t;
    t.iri = std::string(kTswfNamespace) + std::string(local);
    t.curie = "tswf:" + std::string(local);
    t.category = cat;
    if (parent) {
      t.parent = "tswf:" + *parent;
    }
    t.executable = executable;
    t.params = std::move(params);
    t.note = std::move(note);
    terms.push_back(std::move(t));
    return terms.back();
  }
};

std::vector<Term> build_terms() {
  using C = Category;
  Builder b;

  // Workflow description
  b.add("TSAnalysis", C::Metadata, std::nullopt, false);

  // Data input
  b.add("Data", C::Input, std::nullopt, false);
  b.add("DataSource", C::Input, "Data", false);
  b.add("CSVFile", C::Input, "DataSource", true);
  b.add("Database", C::Input, "DataSource", false, {}, "validates; execution returns UnsupportedSource");
  b.add("TSDatabase", C::Input, "DataSource", false, {}, "validates; execution returns UnsupportedSource");
  b.add("DataStream", C::Input, "DataSource", false, {}, "validates; execution returns UnsupportedSource");
  b.add("Datatype", C::Input, "Data", false);
  for (const char *dt : {"datetime", "integer", "real", "string", "url"}) {
    b.add(dt, C::Input, "Datatype", false);
  }

  // Preprocessing: one concrete leaf per sub-part
  b.add("Preprocessing", C::Preprocessing, std::nullopt, false);
  for (const char *part : {"Imputation", "OutlierDetection", "SpectralAnalysis", "Scaling",
                           "NoiseReduction", "Smoothing", "Transformation"}) {
    b.add(part, C::Preprocessing, "Preprocessing", false);
  }
  b.add("ImputeMissing", C::Preprocessing, "Imputation", true,
        {choice("method", "linear", {"linear", "mean"})});
  b.add("ZScoreOutliers", C::Preprocessing, "OutlierDetection", true,
        {real("z_threshold", 3.0, 0.0, kInf)}, "flags outliers; series passes through unchanged");
  b.add("Periodogram", C::Preprocessing, "SpectralAnalysis", true);
  b.add("ScaleSeries", C::Preprocessing, "Scaling", true,
        {choice("method", "zscore", {"zscore", "minmax"})});
  b.add("OutlierReplacement", C::Preprocessing, "NoiseReduction", true,
        {real("z_threshold", 3.0, 0.0, kInf)},
        "z-score outliers replaced by linear interpolation");
  b.add("MovingAverage", C::Preprocessing, "Smoothing", true,
        {integer("window", 3, 1, 10000)});
  b.add("Differencing", C::Preprocessing, "Transformation", true,
        {integer("order", 1, 0, 10), integer("seasonal", 0, 0, 10), period()});
  b.add("BoxCox", C::Preprocessing, "Transformation", true,
        {real("lambda", 0.0, -5.0, 5.0)});

  // Visualization
  b.add("TSPlot", C::Plot, std::nullopt, false);
  b.add("PlotSTL", C::Plot, "TSPlot", true, {period()});
  b.add("PlotACF", C::Plot, "TSPlot", true, {auto_lag()});
  b.add("PlotPACF", C::Plot, "TSPlot", true, {auto_lag()});
  b.add("PlotRegular", C::Plot, "TSPlot", true);

  // Information analysis
  b.add("InformationAnalysis", C::InformationAnalysis, std::nullopt, false);
  b.add("LagStudy", C::InformationAnalysis, "InformationAnalysis", true, {auto_lag()});
  b.add("TrendSTL", C::InformationAnalysis, "InformationAnalysis", true, {period()},
        "classical additive decomposition (STL-lite)");
  b.add("ACF", C::InformationAnalysis, "InformationAnalysis", true, {auto_lag()});
  b.add("PACF", C::InformationAnalysis, "InformationAnalysis", true, {auto_lag()});

  // Stationarity and statistical tests (the schema spells the root this way)
  b.add("StatitionaryAnalysis", C::StationaryAnalysis, std::nullopt, false);
  b.add("StatisticalTest", C::StationaryAnalysis, "StatitionaryAnalysis", true, {},
        "abstract test term; executes as a no-op with a warning");
  b.add("DickeyFuller", C::StationaryAnalysis, "StatisticalTest", true,
        {integer("lag_order", std::nullopt, 0, 1000, "floor((n-1)^(1/3))")});
  b.add("JarqueBera", C::StationaryAnalysis, "StatisticalTest", true);
  b.add("JungBox", C::StationaryAnalysis, "StatisticalTest", true,
        {integer("lag", std::nullopt, 1, 1000, "min(10, n/5)")});
  b.add("RunsTest", C::StationaryAnalysis, "StatisticalTest", true);
  b.add("NonLinearityTest", C::StationaryAnalysis, "StatisticalTest", false);

  // Predictive models
  b.add("PredictiveModel", C::PredictiveModel, std::nullopt, false);
  b.add("StatisticalModel", C::PredictiveModel, "PredictiveModel", false);
  b.add("RegressionModel", C::PredictiveModel, "PredictiveModel", false);
  b.add("MachineLearningModel", C::PredictiveModel, "PredictiveModel", false);
  b.add("ARIMA", C::PredictiveModel, "StatisticalModel", true,
        {int_list("order", {1, 0, 0}, 3, 0, 10), int_list("seasonal", {0, 0, 0}, 3, 0, 10),
         real("lambda", std::nullopt, -5.0, 5.0, "absent: no transform")});
  b.add("SARIMA", C::PredictiveModel, "StatisticalModel", false, {}, "substitute: tswf:ARIMA");
  b.add("ARIMAX", C::PredictiveModel, "StatisticalModel", false, {}, "substitute: tswf:ARIMA");
  b.add("ETS", C::PredictiveModel, "StatisticalModel", true,
        {choice("variant", "simple", {"simple", "holt"})});
  b.add("AR", C::PredictiveModel, "RegressionModel", true,
        {integer("order", std::nullopt, 0, 50, "AIC over 0..min(10, n/10)")});
  b.add("LASSO", C::PredictiveModel, "RegressionModel", false, {}, "substitute: tswf:AR");
  b.add("MARS", C::PredictiveModel, "RegressionModel", false, {}, "substitute: tswf:AR");
  b.add("SVM", C::PredictiveModel, "MachineLearningModel", true,
        {integer("embedding", 5, 1, 50), real("epsilon", 0.1, 0.0, 1e6),
         real("C", 1.0, 1e-6, 1e6), integer("epochs", 200, 1, 100000)},
        "linear-kernel epsilon-insensitive regression");
  b.add("NeuralNetwork", C::PredictiveModel, "MachineLearningModel", false, {},
        "substitute: tswf:SVM");
  b.add("RandomForest", C::PredictiveModel, "MachineLearningModel", false, {},
        "substitute: tswf:SVM");

  // Evaluation measures, grouped as in the schema's four measure families
  b.add("ErrorMeasure", C::EvaluationMeasure, std::nullopt, false);
  for (const char *m : {"RMSE", "MSE", "MAE", "MdAE", "MAPE", "sMAPE", "MASE", "ME", "MPE"}) {
    b.add(m, C::EvaluationMeasure, "ErrorMeasure", true);
  }
  b.add("SimilarityMeasure", C::EvaluationMeasure, std::nullopt, false);
  b.add("DTW", C::EvaluationMeasure, "SimilarityMeasure", true);
  b.add("Euclidean", C::EvaluationMeasure, "SimilarityMeasure", true);
  b.add("EditDistance", C::EvaluationMeasure, "SimilarityMeasure", false);
  b.add("Jaccard", C::EvaluationMeasure, "SimilarityMeasure", false);
  b.add("ClassificationMeasure", C::EvaluationMeasure, std::nullopt, false);
  b.add("F1Score", C::EvaluationMeasure, "ClassificationMeasure", true, {},
        "scored on direction-of-change labels in forecast outputs");
  b.add("ConfusionMatrix", C::EvaluationMeasure, "ClassificationMeasure", true, {},
        "value is accuracy; counts reported alongside");
  b.add("ROC", C::EvaluationMeasure, "ClassificationMeasure", false);
  b.add("ClusteringMeasure", C::EvaluationMeasure, std::nullopt, false);
  for (const char *m : {"APN", "ADM", "SilhouetteW"}) {
    b.add(m, C::EvaluationMeasure, "ClusteringMeasure", false);
  }

  // Outputs
  b.add("EvaluationMeasures", C::Output, std::nullopt, false);
  b.add("ForecastAccuracy", C::Output, "EvaluationMeasures", true);

  // Properties
  for (const char *p :
       {"hasInput", "hasOutput", "hasPlot", "hasInformationAnalysis", "hasStationaryAnalysis",
        "hasPreprocessing", "hasMLAnalysis", "hasTSAnalysis", "hasTSRegression", "hasMeasures",
        "performs", "parameters", "source", "src", "fields", "frequency", "name", "description",
        "author", "dateCreated", "version", "codeRepository"}) {
    b.add(p, C::Property, std::nullopt, false);
  }

  return std::move(b.terms);
}

} // namespace

TermRegistry::TermRegistry(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto [it, inserted] = by_iri_.emplace(terms_[i].iri, i);
    if (!inserted) {
      throw std::logic_error("duplicate vocabulary term " + terms_[i].curie);
    }
  }
  for (const auto &t : terms_) {
    if (t.parent && !find(*t.parent)) {
      throw std::logic_error("dangling parent for " + t.curie);
    }
  }
}

const Term *TermRegistry::find(std::string_view name, const PrefixMap &prefixes) const {
  const auto it = by_iri_.find(expand_iri(name, prefixes));
  return it == by_iri_.end() ? nullptr : &terms_[it->second];
}

const Term *TermRegistry::find(std::string_view name) const {
  static const PrefixMap ctx = default_context();
  return find(name, ctx);
}

const Term &TermRegistry::resolve(std::string_view name, const PrefixMap &prefixes) const {
  if (const Term *t = find(name, prefixes)) {
    return *t;
  }
  throw Error(Errc::UnknownTerm, "unknown term '" + std::string(name) + "'");
}

const Term &TermRegistry::resolve(std::string_view name) const {
  static const PrefixMap ctx = default_context();
  return resolve(name, ctx);
}

bool TermRegistry::is_a(const Term &descendant, std::string_view ancestor_curie) const {
  const Term *t = &descendant;
  // Parent chains are acyclic, bounded by the registry size.
  for (std::size_t guard = 0; t && guard <= terms_.size(); ++guard) {
    if (t->curie == ancestor_curie) {
      return true;
    }
    t = t->parent ? find(*t->parent) : nullptr;
  }
  return false;
}

const TermRegistry &load_vocabulary() {
  static const TermRegistry registry(build_terms());
  return registry;
}

const std::vector<ParamSpec> &param_schema_of(const Term &term) { return term.params; }

} // namespace tsflow
