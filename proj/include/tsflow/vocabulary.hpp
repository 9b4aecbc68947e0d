#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace tsflow {

inline constexpr std::string_view kTswfNamespace =
    "http://dicits.ugr.es/linkeddata/tswf-schema/";
inline constexpr std::string_view kDmccNamespace =
    "http://dicits.ugr.es/linkeddata/dmcc-schema/";

enum class Category {
  Metadata,
  Input,
  Plot,
  InformationAnalysis,
  StationaryAnalysis,
  Preprocessing,
  PredictiveModel,
  EvaluationMeasure,
  Output,
  Property,
};

std::string_view to_string(Category c) noexcept;

enum class ParamKind { Integer, Real, IntegerList, RealList, String, Boolean };

std::string_view to_string(ParamKind k) noexcept;

// A parameter value as written in a document. Integral JSON numbers stay
// integral so that serialization reproduces them unchanged.
using ParamValue = std::variant<bool, std::int64_t, double, std::string,
                                std::vector<std::int64_t>, std::vector<double>>;

using ParamMap = std::map<std::string, ParamValue>;

struct Bounds {
  double lo;
  double hi;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  bool operator==(const Bounds &) const = default;
};

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::Real;
  std::optional<ParamValue> default_value;
  // Bounds apply element-wise for list kinds.
  std::optional<Bounds> bounds;
  // Required length for list kinds.
  std::optional<std::size_t> length;
  // Allowed values for string kinds; empty means unrestricted.
  std::vector<std::string> choices;
  // Set when the default is derived from the data at run time.
  std::string default_rule;

  bool operator==(const ParamSpec &) const = default;
};

struct Term {
  std::string iri;
  std::string curie;
  Category category = Category::Property;
  std::optional<std::string> parent; // curie of the parent class
  std::vector<ParamSpec> params;
  bool executable = false;
  std::string note;

  std::string_view local_name() const { return std::string_view(curie).substr(5); }
  bool operator==(const Term &) const = default;
};

// Prefix → namespace IRI, as declared in a JSON-LD @context.
using PrefixMap = std::map<std::string, std::string, std::less<>>;

PrefixMap default_context();

class TermRegistry {
public:
  explicit TermRegistry(std::vector<Term> terms);

  // Accepts a compact name ("tswf:ARIMA") or an absolute IRI. Compact names
  // are expanded through `prefixes`.
  const Term &resolve(std::string_view name, const PrefixMap &prefixes) const;
  const Term &resolve(std::string_view name) const;
  const Term *find(std::string_view name, const PrefixMap &prefixes) const;
  const Term *find(std::string_view name) const;

  const std::vector<Term> &terms() const noexcept { return terms_; }

  // True when `descendant` equals `ancestor` or reaches it through parents.
  bool is_a(const Term &descendant, std::string_view ancestor_curie) const;

private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, std::size_t> by_iri_;
};

// The compiled-in tswf-schema registry. Built once; immutable afterwards.
const TermRegistry &load_vocabulary();

const std::vector<ParamSpec> &param_schema_of(const Term &term);

// Expands "prefix:local" using `prefixes`; returns the input unchanged when
// it is already absolute or the prefix is unbound.
std::string expand_iri(std::string_view name, const PrefixMap &prefixes);

// Compacts an IRI in the tswf namespace to "tswf:local"; other IRIs are
// returned unchanged.
std::string compact_iri(std::string_view iri);

} // namespace tsflow
