#include "tsflow/results.hpp"

#include "tsflow/error.hpp"

#include <cmath>
#include <limits>

namespace tsflow {

Json to_json(const ParamValue &v) {
  return std::visit([](const auto &x) { return Json(x); }, v);
}

Json to_json(const ParamMap &params) {
  Json out = Json::object();
  for (const auto &[k, v] : params) out[k] = to_json(v);
  return out;
}

Json to_json(const InputSpec &input) {
  Json fields = Json::array();
  for (const auto &f : input.fields) {
    fields.push_back({{"name", f.name}, {"dtype", std::string(to_string(f.dtype))}});
  }
  Json out = {{"source", input.source_kind}, {"src", input.src}, {"fields", fields}};
  out["frequency"] = input.frequency ? Json(*input.frequency) : Json(nullptr);
  return out;
}

Json to_json(const OutputSpec &output) {
  return {{"id", output.id}, {"kind", output.kind}, {"measures", output.measures}};
}

Json to_json(const ValidationReport &report) {
  Json diags = Json::array();
  std::size_t warnings = 0;
  for (const auto &d : report.diagnostics) {
    if (d.severity == Severity::Warning) ++warnings;
    diags.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                     {"path", d.path},
                     {"code", d.code},
                     {"message", d.message}});
  }
  return {{"valid", report.valid()},
          {"error_count", report.error_count()},
          {"warning_count", warnings},
          {"diagnostics", diags}};
}

Json to_json(const Forecast &f) {
  return {{"kind", "forecast"}, {"model", f.model}, {"origin", f.origin}, {"horizon", f.horizon},
          {"point", f.point}};
}

namespace {

Json test_json(const TestResult &t) {
  Json out = {{"kind", "test"},
              {"test", t.test},
              {"statistic", t.statistic},
              {"reject_at_5pct", t.reject_at_5pct},
              {"df_or_lags", t.df_or_lags}};
  if (t.p_value) out["p_value"] = *t.p_value;
  if (t.critical_values) out["critical_values"] = *t.critical_values;
  if (!t.detail.empty()) out["detail"] = t.detail;
  return out;
}

Json fit_json(const ModelFit &f) {
  Json coef = Json::object();
  for (const auto &[name, value] : f.coefficients) coef[name] = value;
  Json out = {{"kind", "model_fit"},
              {"model", f.model},
              {"coefficients", coef},
              {"training_loss", f.training_loss},
              {"converged", f.converged},
              {"iterations", f.iterations},
              {"training_size", f.training_size},
              {"fitted", f.fitted.data()},
              {"residuals", f.residuals.data()}};
  return out;
}

Json measures_json(const MeasureTable &t) {
  Json rows = Json::array();
  for (const auto &r : t.rows) {
    Json values = Json::object();
    for (const auto &m : r.values) {
      Json v = {{"value", m.value}, {"n", m.n}};
      if (!m.detail.empty()) v["detail"] = m.detail;
      values[m.measure] = v;
    }
    Json row = {{"model", r.model}, {"measures", values}};
    if (!r.errors.empty()) row["errors"] = r.errors;
    rows.push_back(row);
  }
  return {{"kind", "measures"}, {"output", t.output_id}, {"holdout", t.holdout}, {"rows", rows}};
}

Json outcome_json(const Outcome &o) {
  return std::visit(
      [](const auto &x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SeriesOut>) {
          Json out = {{"kind", "series"}, {"values", x.series.data()}, {"length", x.series.size()}};
          if (!x.flagged.empty()) out["flagged"] = x.flagged;
          if (!x.spectrum.empty()) {
            Json freq = Json::array(), power = Json::array();
            for (const auto &p : x.spectrum) {
              freq.push_back(p.frequency);
              power.push_back(p.power);
            }
            out["spectrum"] = {{"frequency", freq}, {"power", power}};
          }
          return out;
        } else if constexpr (std::is_same_v<T, AcfResult>) {
          return {{"kind", "acf"}, {"rho", x.rho}, {"n", x.n}, {"ci_halfwidth", x.ci_halfwidth}};
        } else if constexpr (std::is_same_v<T, PacfResult>) {
          return {{"kind", "pacf"}, {"phi_kk", x.phi_kk}, {"n", x.n}, {"ci_halfwidth", x.ci_halfwidth}};
        } else if constexpr (std::is_same_v<T, LagTable>) {
          Json rows = Json::array();
          for (const auto &r : x.rows) {
            rows.push_back({{"lag", r.lag}, {"rho", r.rho}, {"significant", r.significant}});
          }
          return {{"kind", "lag_study"}, {"rows", rows}, {"ci_halfwidth", x.ci_halfwidth}};
        } else if constexpr (std::is_same_v<T, TestResult>) {
          return test_json(x);
        } else if constexpr (std::is_same_v<T, Decomposition>) {
          return {{"kind", "decomposition"},
                  {"model", x.model},
                  {"period", x.period},
                  {"seasonal_strength", x.seasonal_strength},
                  {"trend", x.trend.data()},
                  {"seasonal", x.seasonal.data()},
                  {"remainder", x.remainder.data()}};
        } else if constexpr (std::is_same_v<T, ModelFit>) {
          return fit_json(x);
        } else if constexpr (std::is_same_v<T, Forecast>) {
          return to_json(x);
        } else if constexpr (std::is_same_v<T, MeasureTable>) {
          return measures_json(x);
        } else if constexpr (std::is_same_v<T, PlotArtifact>) {
          return {{"kind", "plot"}, {"plot", x.plot}, {"svg", x.svg_path}, {"data", x.data_path}};
        } else if constexpr (std::is_same_v<T, Skipped>) {
          return {{"kind", "skipped"}, {"reason", x.reason}};
        } else {
          return {{"kind", "error"}, {"code", std::string(to_string(x.code))}, {"message", x.message}};
        }
      },
      o);
}

} // namespace

Json to_json(const StepResult &step) {
  Json out = {{"stage", std::string(to_string(step.stage))},
              {"op", step.op},
              {"params", to_json(step.params_resolved)},
              {"defaulted", step.defaulted},
              {"outcome", outcome_json(step.outcome)},
              {"status", step.ok() ? "ok" : "error"},
              {"elapsed_ms", step.elapsed_ms}};
  if (!step.warnings.empty()) out["warnings"] = step.warnings;
  return out;
}

Json to_json(const RunBundle &bundle) {
  Json steps = Json::array();
  for (const auto &s : bundle.steps) steps.push_back(to_json(s));
  return {{"workflow_id", bundle.workflow_id},
          {"run_id", bundle.run_id},
          {"started", bundle.started},
          {"finished", bundle.finished},
          {"status", std::string(to_string(bundle.status))},
          {"horizon", bundle.horizon},
          {"series_length", bundle.series_length},
          {"train_size", bundle.train_size},
          {"holdout", bundle.holdout},
          {"step_count", bundle.steps.size()},
          {"warnings", bundle.warnings},
          {"steps", steps}};
}

std::string bundle_text(const RunBundle &bundle) { return to_json(bundle).dump(2) + "\n"; }

Json vocabulary_json(const TermRegistry &registry) {
  Json terms = Json::array();
  for (const auto &t : registry.terms()) {
    Json params = Json::array();
    for (const auto &p : t.params) {
      Json pj = {{"name", p.name}, {"kind", std::string(to_string(p.kind))}};
      if (p.default_value) pj["default"] = to_json(*p.default_value);
      if (!p.default_rule.empty()) pj["default_rule"] = p.default_rule;
      if (p.bounds) {
        // An open end is written as null.
        auto end = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
        pj["bounds"] = {end(p.bounds->lo), end(p.bounds->hi)};
      }
      if (p.length) pj["length"] = *p.length;
      if (!p.choices.empty()) pj["choices"] = p.choices;
      params.push_back(pj);
    }
    Json tj = {{"iri", t.iri},
               {"curie", t.curie},
               {"category", std::string(to_string(t.category))},
               {"parent", t.parent ? Json(*t.parent) : Json(nullptr)},
               {"executable", t.executable},
               {"params", params}};
    if (!t.note.empty()) tj["note"] = t.note;
    terms.push_back(tj);
  }
  return {{"@context", {{"tswf", std::string(kTswfNamespace)}}}, {"terms", terms}};
}

Json strip_volatile(Json bundle) {
  bundle.erase("run_id");
  bundle.erase("started");
  bundle.erase("finished");
  if (bundle.contains("steps")) {
    for (auto &s : bundle["steps"]) s.erase("elapsed_ms");
  }
  return bundle;
}

BestModel best_model(const Json &bundle, const std::string &metric) {
  std::optional<BestModel> best;
  for (const auto &step : bundle.value("steps", Json::array())) {
    const auto &o = step["outcome"];
    if (o.value("kind", "") != "measures") continue;
    for (const auto &row : o["rows"]) {
      const auto &m = row["measures"];
      if (!m.contains(metric)) continue;
      const double v = m[metric]["value"].get<double>();
      if (!best || v < best->value) best = BestModel{row["model"].get<std::string>(), v};
    }
  }
  if (!best) {
    throw Error(Errc::NoSuchMetric, "run has no values for " + metric);
  }
  return *best;
}

std::vector<StoredForecast> forecasts(const Json &bundle) {
  std::vector<StoredForecast> out;
  for (const auto &step : bundle.value("steps", Json::array())) {
    const auto &o = step["outcome"];
    if (o.value("kind", "") != "forecast") continue;
    out.push_back({o["model"].get<std::string>(), o["point"].get<std::vector<double>>()});
  }
  return out;
}

} // namespace tsflow
