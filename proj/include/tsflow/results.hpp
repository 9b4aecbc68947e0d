#pragma once

#include "tsflow/document.hpp"
#include "tsflow/engine.hpp"
#include "tsflow/vocabulary.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace tsflow {

using Json = nlohmann::json;

Json to_json(const ParamValue &v);
Json to_json(const ParamMap &params);
Json to_json(const InputSpec &input);
Json to_json(const OutputSpec &output);
Json to_json(const StepResult &step);
Json to_json(const RunBundle &bundle);
Json to_json(const ValidationReport &report);
Json to_json(const Forecast &f);

// Canonical bundle.json text.
std::string bundle_text(const RunBundle &bundle);

// Vocabulary dump: every term with category, parent, executability and
// parameter schema.
Json vocabulary_json(const TermRegistry &registry);

// Drops run_id, timestamps and elapsed times so two runs can be compared.
Json strip_volatile(Json bundle);

// Queries over a stored bundle.json.
BestModel best_model(const Json &bundle, const std::string &metric);

struct StoredForecast {
  std::string model;
  std::vector<double> point;
};
std::vector<StoredForecast> forecasts(const Json &bundle);

} // namespace tsflow
