#include "tsflow/engine.hpp"

#include "tsflow/error.hpp"
#include "tsflow/results.hpp"

#include "fsutil.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <set>

namespace tsflow {

std::string_view to_string(RunStatus s) noexcept {
  switch (s) {
  case RunStatus::Succeeded: return "succeeded";
  case RunStatus::Partial: return "partial";
  case RunStatus::Failed: return "failed";
  }
  return "failed";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

std::string generate_run_id() {
  const auto secs = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d%02d%02dT%02d%02d%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return std::string(buf) + "-" + detail::random_hex(4);
}

std::size_t holdout_size(std::size_t n, std::size_t horizon) {
  if (n < 2) {
    return 0;
  }
  const std::size_t h = std::max(horizon, static_cast<std::size_t>(std::floor(0.2 * static_cast<double>(n))));
  return std::min(h, n - 1);
}

std::size_t operations_count(const WorkflowDoc &doc) {
  return doc.preprocessing.size() + doc.plots.size() + doc.info_analyses.size() +
         doc.stationary_analyses.size() + 2 * doc.models.size() + doc.outputs.size();
}

std::filesystem::path resolve_locator(const std::string &src, const std::filesystem::path &data_root) {
  namespace fs = std::filesystem;
  std::string path = src;
  if (path.rfind("file://", 0) == 0) {
    path = path.substr(7);
  }
  std::vector<fs::path> candidates;
  const fs::path direct(path);
  if (direct.is_absolute()) candidates.push_back(direct);
  const auto stripped = path.substr(std::min(path.find_first_not_of('/'), path.size()));
  if (!stripped.empty()) {
    candidates.push_back(data_root / stripped);
    candidates.push_back(data_root / fs::path(stripped).filename());
  }
  for (const auto &c : candidates) {
    std::error_code ec;
    if (fs::is_regular_file(c, ec)) return c;
  }
  throw Error(Errc::InputError, "input '" + src + "' not found under " + data_root.string());
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t int_param(const ParamMap &p, const std::string &name, std::int64_t fallback) {
  const auto it = p.find(name);
  if (it == p.end()) return fallback;
  return as_integer(it->second).value_or(fallback);
}

double real_param(const ParamMap &p, const std::string &name, double fallback) {
  const auto it = p.find(name);
  if (it == p.end()) return fallback;
  return as_real(it->second).value_or(fallback);
}

std::string string_param(const ParamMap &p, const std::string &name, const std::string &fallback) {
  const auto it = p.find(name);
  if (it == p.end()) return fallback;
  if (const auto *s = std::get_if<std::string>(&it->second)) return *s;
  return fallback;
}

std::vector<std::int64_t> list_param(const ParamMap &p, const std::string &name) {
  const auto it = p.find(name);
  if (it == p.end()) return {};
  if (const auto *v = std::get_if<std::vector<std::int64_t>>(&it->second)) return *v;
  if (const auto *v = std::get_if<std::vector<double>>(&it->second)) {
    std::vector<std::int64_t> out;
    for (double d : *v) out.push_back(static_cast<std::int64_t>(d));
    return out;
  }
  return {};
}

std::size_t non_negative(std::int64_t v, const std::string &what) {
  if (v < 0) {
    throw Error(Errc::InvalidArgument, what + " must be non-negative");
  }
  return static_cast<std::size_t>(v);
}

class Runner {
public:
  Runner(const WorkflowDoc &doc, const ExecuteOptions &opts)
      : doc_(doc), opts_(opts), vocab_(load_vocabulary()) {}

  RunBundle run() {
    bundle_.workflow_id = doc_.id;
    bundle_.run_id = opts_.run_id.empty() ? generate_run_id() : opts_.run_id;
    bundle_.started = utc_timestamp();
    bundle_.horizon = opts_.horizon;
    if (!opts_.out_dir.empty()) {
      run_dir_ = opts_.out_dir / ("run_" + bundle_.run_id);
    }

    load_input();
    for (const auto &op : doc_.preprocessing) preprocess(op);
    for (const auto &op : doc_.plots) plot(op);
    for (const auto &op : doc_.info_analyses) analyse(op, Stage::InfoAnalyses);
    for (const auto &op : doc_.stationary_analyses) analyse(op, Stage::StationaryAnalyses);
    split();
    for (const auto &op : doc_.models) model(op);
    for (const auto &out : doc_.outputs) evaluate(out);

    bundle_.finished = utc_timestamp();
    const auto errors = static_cast<std::size_t>(
        std::count_if(bundle_.steps.begin(), bundle_.steps.end(), [](const auto &s) { return !s.ok(); }));
    if (errors == 0) bundle_.status = RunStatus::Succeeded;
    else if (errors < bundle_.steps.size()) bundle_.status = RunStatus::Partial;
    else bundle_.status = RunStatus::Failed;

    if (!run_dir_.empty()) {
      detail::write_file_atomic(run_dir_ / "bundle.json", bundle_text(bundle_));
    }
    return std::move(bundle_);
  }

private:
  void load_input() {
    if (!doc_.input) {
      throw Error(Errc::InputError, "workflow declares no input");
    }
    const auto &in = *doc_.input;
    const Term *src_term = vocab_.find(in.source_kind);
    if (!src_term || !src_term->executable) {
      throw Error(Errc::InputError, "unsupported input source " + in.source_kind + " (UnsupportedSource)");
    }
    const auto path = resolve_locator(in.src, opts_.data_root);
    try {
      auto ingested = ingest_csv(path, in);
      series_ = std::move(ingested.series);
      for (auto &w : ingested.warnings) bundle_.warnings.push_back(std::move(w));
    } catch (const Error &e) {
      throw Error(Errc::InputError, std::string(to_string(e.code())) + ": " + e.what());
    }
    bundle_.series_length = series_.size();
  }

  ResolveContext context() const { return {series_.size(), doc_.input ? doc_.input->frequency : std::nullopt}; }

  // Common step frame: resolves the term and params, times the body and
  // turns exceptions into an error outcome.
  template <class Body>
  StepResult &step(Stage stage, const OpSpec &op, Body &&body) {
    StepResult s;
    s.stage = stage;
    s.op = op.term;
    const auto start = Clock::now();
    const Term *term = vocab_.find(op.term);
    try {
      if (!term) {
        throw Error(Errc::UnknownTerm, "unknown term " + op.term);
      }
      s.params_resolved = resolve_params(op, *term, context());
      if (!term->executable) {
        std::string msg = op.term + " is not executable";
        if (!term->note.empty()) msg += "; " + term->note;
        throw Error(Errc::UnsupportedOperation, msg);
      }
      s.outcome = body(s);
    } catch (const Error &e) {
      s.outcome = StepError{e.code(), e.what()};
    } catch (const std::exception &e) {
      s.outcome = StepError{Errc::InvalidArgument, e.what()};
    }
    s.defaulted = defaulted_params(op, s.params_resolved);
    s.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    bundle_.steps.push_back(std::move(s));
    return bundle_.steps.back();
  }

  std::size_t period_of(const ParamMap &p) const {
    return non_negative(int_param(p, "period", doc_.input && doc_.input->frequency ? *doc_.input->frequency : 1),
                        "period");
  }

  void preprocess(const OpSpec &op) {
    auto &s = step(Stage::Preprocessing, op, [&](StepResult &st) -> Outcome {
      const auto &p = st.params_resolved;
      const auto local = op.term.substr(5);
      SeriesOut out;
      out.series = series_;
      if (local == "ImputeMissing") {
        out.series = impute(series_, string_param(p, "method", "linear") == "mean" ? ImputeMethod::Mean
                                                                                  : ImputeMethod::Linear);
      } else if (local == "ZScoreOutliers") {
        out.flagged = detect_outliers(series_, real_param(p, "z_threshold", 3.0));
      } else if (local == "Periodogram") {
        out.spectrum = periodogram(series_);
      } else if (local == "ScaleSeries") {
        out.series = scale(series_, string_param(p, "method", "zscore") == "minmax" ? ScaleMethod::MinMax
                                                                                    : ScaleMethod::ZScore);
      } else if (local == "OutlierReplacement") {
        out.flagged = detect_outliers(series_, real_param(p, "z_threshold", 3.0));
        std::vector<double> v = series_.data();
        for (auto i : out.flagged) v[i] = std::numeric_limits<double>::quiet_NaN();
        out.series = impute(series_.with_values(std::move(v)), ImputeMethod::Linear);
      } else if (local == "MovingAverage") {
        out.series = smooth_ma(series_, non_negative(int_param(p, "window", 3), "window"));
      } else if (local == "Differencing") {
        out.series = difference(series_, non_negative(int_param(p, "order", 1), "order"),
                                non_negative(int_param(p, "seasonal", 0), "seasonal"), period_of(p));
      } else if (local == "BoxCox") {
        out.series = transform(series_, real_param(p, "lambda", 0.0));
      } else {
        throw Error(Errc::UnsupportedOperation, op.term + " is not a preprocessing operation");
      }
      return out;
    });
    if (const auto *out = std::get_if<SeriesOut>(&s.outcome)) {
      series_ = out->series;
    }
  }

  std::string plot_stem(const std::string &term) {
    std::string stem = term.substr(term.find(':') + 1);
    const auto n = ++plot_names_[stem];
    if (n > 1) stem += "-" + std::to_string(n);
    return stem;
  }

  void plot(const OpSpec &op) {
    step(Stage::Plots, op, [&](StepResult &st) -> Outcome {
      const auto &p = st.params_resolved;
      const auto local = op.term.substr(5);
      PlotSource source;
      if (local == "PlotSTL") source = decompose(series_, period_of(p));
      else if (local == "PlotACF") source = acf(series_, non_negative(int_param(p, "lag", 1), "lag"));
      else if (local == "PlotPACF") source = pacf(series_, non_negative(int_param(p, "lag", 1), "lag"));
      else if (local == "PlotRegular") source = series_;
      else throw Error(Errc::UnsupportedOperation, op.term + " is not a plot");
      return render_plot(op.term, source, run_dir_, plot_stem(op.term));
    });
  }

  void analyse(const OpSpec &op, Stage stage) {
    step(stage, op, [&](StepResult &st) -> Outcome {
      const auto &p = st.params_resolved;
      const auto local = op.term.substr(5);
      if (local == "LagStudy") {
        const auto r = acf(series_, non_negative(int_param(p, "lag", 1), "lag"));
        LagTable t;
        t.rows = lag_study(series_, r.rho.size() - 1);
        t.ci_halfwidth = r.ci_halfwidth;
        return t;
      }
      if (local == "TrendSTL") return decompose(series_, period_of(p));
      if (local == "ACF") return acf(series_, non_negative(int_param(p, "lag", 1), "lag"));
      if (local == "PACF") return pacf(series_, non_negative(int_param(p, "lag", 1), "lag"));
      if (local == "StatisticalTest") {
        st.warnings.push_back("abstract test term");
        return Skipped{"abstract test term"};
      }
      if (local == "DickeyFuller") return adf_test(series_, non_negative(int_param(p, "lag_order", 0), "lag_order"));
      if (local == "JarqueBera") return jarque_bera(series_);
      if (local == "JungBox") return ljung_box(series_, non_negative(int_param(p, "lag", 1), "lag"));
      if (local == "RunsTest") return runs_test(series_);
      throw Error(Errc::UnsupportedOperation, op.term + " is not an analysis");
    });
  }

  void split() {
    const std::size_t n = series_.size();
    bundle_.holdout = doc_.models.empty() ? 0 : holdout_size(n, opts_.horizon);
    bundle_.train_size = n - bundle_.holdout;
    training_ = series_.slice(0, bundle_.train_size);
    actual_ = series_.slice(bundle_.train_size, n);
  }

  ModelFit fit_model(const OpSpec &op, StepResult &st) {
    auto &p = st.params_resolved;
    const auto local = op.term.substr(5);
    if (local == "AR") {
      std::optional<std::size_t> order;
      if (p.contains("order")) order = non_negative(int_param(p, "order", 0), "order");
      auto fit = fit_ar(training_, order);
      p["order"] = fit.params_resolved.at("order");
      return fit;
    }
    if (local == "ARIMA") {
      const auto o = list_param(p, "order");
      const auto so = list_param(p, "seasonal");
      if (o.size() != 3 || so.size() != 3) {
        throw Error(Errc::InvalidArgument, "order and seasonal must have three entries");
      }
      ArimaOrder order;
      order.p = non_negative(o[0], "p");
      order.d = non_negative(o[1], "d");
      order.q = non_negative(o[2], "q");
      order.P = non_negative(so[0], "P");
      order.D = non_negative(so[1], "D");
      order.Q = non_negative(so[2], "Q");
      const bool seasonal = order.P + order.D + order.Q > 0;
      const auto freq = doc_.input ? doc_.input->frequency : std::nullopt;
      order.period = freq ? static_cast<std::size_t>(*freq) : 1;
      if (seasonal && !freq) {
        st.warnings.push_back("seasonal order given but the input declares no frequency; using period 1");
      }
      if (p.contains("lambda")) order.lambda = real_param(p, "lambda", 0.0);
      auto fit = fit_arima(training_, order);
      for (auto &w : fit.warnings) st.warnings.push_back(w);
      return fit;
    }
    if (local == "ETS") {
      return fit_ets(training_, string_param(p, "variant", "simple") == "holt" ? EtsVariant::Holt
                                                                               : EtsVariant::Simple);
    }
    if (local == "SVM") {
      SvrOptions o;
      o.embedding = non_negative(int_param(p, "embedding", 5), "embedding");
      o.epsilon = real_param(p, "epsilon", 0.1);
      o.C = real_param(p, "C", 1.0);
      o.epochs = non_negative(int_param(p, "epochs", 200), "epochs");
      return fit_svr(training_, o);
    }
    throw Error(Errc::UnsupportedOperation, op.term + " is not a model");
  }

  void model(const OpSpec &op) {
    std::optional<ModelFit> fitted;
    std::optional<StepError> fit_error;
    auto &fs = step(Stage::Models, op, [&](StepResult &st) -> Outcome {
      fitted = fit_model(op, st);
      return *fitted;
    });
    if (const auto *e = std::get_if<StepError>(&fs.outcome)) fit_error = *e;

    // The forecast step carries no document params of its own.
    OpSpec fop{op.term, {}, op.slot};
    auto &fc = step(Stage::Models, fop, [&](StepResult &st) -> Outcome {
      st.params_resolved = {{"horizon", static_cast<std::int64_t>(bundle_.holdout)}};
      if (!fitted) {
        throw Error(fit_error ? fit_error->code : Errc::InvalidArgument,
                    "no fitted model to forecast from: " + (fit_error ? fit_error->message : std::string()));
      }
      if (bundle_.holdout == 0) {
        throw Error(Errc::SeriesTooShort, "series too short to hold out a forecast window");
      }
      return forecast(*fitted, bundle_.holdout);
    });
    fc.defaulted.clear();
    if (const auto *f = std::get_if<Forecast>(&fc.outcome)) {
      forecasts_.push_back(*f);
    }
  }

  void evaluate(const OutputSpec &out) {
    OpSpec op{out.kind, {}, {}};
    step(Stage::Outputs, op, [&](StepResult &) -> Outcome {
      if (forecasts_.empty()) {
        throw Error(Errc::NoSuchMetric, "no model forecasts to evaluate");
      }
      MeasureTable table;
      table.output_id = out.id;
      table.holdout = bundle_.holdout;
      std::size_t evaluated = 0;
      for (const auto &f : forecasts_) {
        ModelMeasures row;
        row.model = f.model;
        for (const auto &m : out.measures) {
          try {
            const Term *t = vocab_.find(m);
            if (!t) throw Error(Errc::UnknownTerm, "unknown measure " + m);
            if (!t->executable) throw Error(Errc::UnsupportedOperation, m + " is not executable");
            row.values.push_back(evaluate_measure(t->curie, actual_.values(), f.point, training_.values()));
            ++evaluated;
          } catch (const Error &e) {
            row.errors[m] = std::string(to_string(e.code())) + ": " + e.what();
          }
        }
        table.rows.push_back(std::move(row));
      }
      if (evaluated == 0 && !out.measures.empty()) {
        throw Error(Errc::NoSuchMetric, "none of the output's measures could be evaluated");
      }
      return table;
    });
  }

  const WorkflowDoc &doc_;
  const ExecuteOptions &opts_;
  const TermRegistry &vocab_;
  RunBundle bundle_;
  std::filesystem::path run_dir_;
  TimeSeries series_;
  TimeSeries training_;
  TimeSeries actual_;
  std::vector<Forecast> forecasts_;
  std::map<std::string, int> plot_names_;
};

} // namespace

RunBundle execute(const WorkflowDoc &doc, const ExecuteOptions &options) {
  return Runner(doc, options).run();
}

RunBundle execute(const WorkflowDoc &doc, const std::filesystem::path &data_root,
                  const std::filesystem::path &out_dir, std::size_t horizon) {
  ExecuteOptions o;
  o.data_root = data_root;
  o.out_dir = out_dir;
  o.horizon = horizon;
  return execute(doc, o);
}

BestModel best_model(const RunBundle &bundle, const std::string &metric) {
  const std::string curie = metric.find(':') == std::string::npos ? "tswf:" + metric : metric;
  std::optional<BestModel> best;
  for (const auto &s : bundle.steps) {
    const auto *t = std::get_if<MeasureTable>(&s.outcome);
    if (!t) continue;
    for (const auto &row : t->rows) {
      for (const auto &m : row.values) {
        if (m.measure == curie && (!best || m.value < best->value)) best = BestModel{row.model, m.value};
      }
    }
  }
  if (!best) {
    throw Error(Errc::NoSuchMetric, "run has no values for " + curie);
  }
  return *best;
}

} // namespace tsflow
