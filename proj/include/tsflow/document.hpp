#pragma once

#include "tsflow/vocabulary.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsflow {

enum class FieldType { Datetime, Integer, Real, String };

std::string_view to_string(FieldType t) noexcept;

struct Field {
  std::string name;
  FieldType dtype = FieldType::Real;
  bool operator==(const Field &) const = default;
};

struct InputSpec {
  std::string source_kind = "tswf:CSVFile";
  std::string src;
  std::vector<Field> fields;
  std::optional<int> frequency; // observations per seasonal period
  bool operator==(const InputSpec &) const = default;
};

// One operation in a stage. `term` is the compacted IRI ("tswf:ARIMA");
// `params` holds only the values written in the document.
struct OpSpec {
  std::string term;
  ParamMap params;
  // Property the op hangs off inside tswf:performs ("hasTSAnalysis", ...).
  // Empty for ops outside the model stage or listed in a bare @set.
  std::string slot;
  bool operator==(const OpSpec &) const = default;
};

struct OutputSpec {
  std::string id;
  std::string kind = "tswf:ForecastAccuracy";
  std::vector<std::string> measures;
  bool operator==(const OutputSpec &) const = default;
};

struct Cost {
  double amount = 0.0;
  std::string currency;
  bool operator==(const Cost &) const = default;
};

struct ServiceMeta {
  std::optional<Cost> cost_per_run;
  std::optional<bool> auth_required;
  bool operator==(const ServiceMeta &) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string path; // JSON pointer into the source document
  std::string code;
  std::string message;
  bool operator==(const Diagnostic &) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool valid() const;
  std::size_t error_count() const;
};

struct WorkflowDoc {
  std::string id;
  std::string name;
  std::string description;
  std::string author;
  std::string version;
  std::optional<std::string> date_created; // normalized ISO-8601 ("T" separator)
  std::optional<std::string> code_repository;
  std::optional<InputSpec> input;
  std::vector<OpSpec> preprocessing;
  std::vector<OpSpec> plots;
  std::vector<OpSpec> info_analyses;
  std::vector<OpSpec> stationary_analyses;
  std::vector<OpSpec> models;
  std::vector<OutputSpec> outputs;
  std::optional<ServiceMeta> service_meta;

  // Not part of structural equality: where each element came from, keyed by
  // logical location ("plots/2", "plots/2/params/lag", "input/fields/0", ...),
  // and reader warnings such as unrecognized keys.
  std::map<std::string, std::string> source_map;
  std::vector<Diagnostic> parse_warnings;

  // JSON pointer for a logical location, falling back to its nearest
  // recorded ancestor and finally to the document root.
  std::string path_of(std::string_view key) const;
};

bool operator==(const WorkflowDoc &a, const WorkflowDoc &b);

enum class Stage { Input, Preprocessing, Plots, InfoAnalyses, StationaryAnalyses, Models, Outputs };

std::string_view to_string(Stage s) noexcept;

// Execution order of stages. Only the fixed linear order exists.
const std::vector<Stage> &flow(const WorkflowDoc &doc);

WorkflowDoc parse_document(std::string_view text);
WorkflowDoc parse_document(std::string_view text, const TermRegistry &registry);

ValidationReport validate(const WorkflowDoc &doc, const TermRegistry &registry);

std::string serialize(const WorkflowDoc &doc);

// Normalizes "YYYY-MM-DD HH:MM:SS" and the other accepted ISO-8601 shapes
// to the "T"-separated form. Returns nullopt for unparseable input.
std::optional<std::string> normalize_datetime(std::string_view text);

// Series-dependent context used to fill in data-derived defaults.
struct ResolveContext {
  std::size_t series_length = 0;
  std::optional<int> frequency;
};

// Params with defaults injected. Data-derived defaults are filled only when
// `ctx` is provided; otherwise they stay absent.
ParamMap resolve_params(const OpSpec &op, const Term &term,
                        const std::optional<ResolveContext> &ctx = std::nullopt);

// Names of the params in `resolved` that were not written in the document.
std::vector<std::string> defaulted_params(const OpSpec &op, const ParamMap &resolved);

std::optional<double> as_real(const ParamValue &v);
std::optional<std::int64_t> as_integer(const ParamValue &v);

} // namespace tsflow
