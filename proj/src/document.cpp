#include "tsflow/document.hpp"

#include "datetime.hpp"
#include "tsflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include <json.hpp>

namespace tsflow {

using json = nlohmann::json;
using Pointer = json::json_pointer;

std::string_view to_string(FieldType t) noexcept {
  switch (t) {
  case FieldType::Datetime: return "datetime";
  case FieldType::Integer: return "integer";
  case FieldType::Real: return "real";
  case FieldType::String: return "string";
  }
  return "string";
}

std::string_view to_string(Stage s) noexcept {
  switch (s) {
  case Stage::Input: return "input";
  case Stage::Preprocessing: return "preprocessing";
  case Stage::Plots: return "plots";
  case Stage::InfoAnalyses: return "info_analyses";
  case Stage::StationaryAnalyses: return "stationary_analyses";
  case Stage::Models: return "models";
  case Stage::Outputs: return "outputs";
  }
  return "input";
}

const std::vector<Stage> &flow(const WorkflowDoc &) {
  static const std::vector<Stage> order = {Stage::Input,        Stage::Preprocessing,
                                           Stage::Plots,        Stage::InfoAnalyses,
                                           Stage::StationaryAnalyses, Stage::Models,
                                           Stage::Outputs};
  return order;
}

bool ValidationReport::valid() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [](const Diagnostic &d) { return d.severity == Severity::Error; }));
}

std::string WorkflowDoc::path_of(std::string_view key) const {
  std::string k(key);
  while (true) {
    if (const auto it = source_map.find(k); it != source_map.end()) {
      return it->second;
    }
    const auto slash = k.rfind('/');
    if (slash == std::string::npos) {
      return "";
    }
    k.resize(slash);
  }
}

bool operator==(const WorkflowDoc &a, const WorkflowDoc &b) {
  auto tie = [](const WorkflowDoc &d) {
    return std::tie(d.id, d.name, d.description, d.author, d.version, d.date_created,
                    d.code_repository, d.input, d.preprocessing, d.plots, d.info_analyses,
                    d.stationary_analyses, d.models, d.outputs, d.service_meta);
  };
  return tie(a) == tie(b);
}

std::optional<std::string> normalize_datetime(std::string_view text) {
  if (!detail::parse_civil(text)) {
    return std::nullopt;
  }
  std::string out(text);
  if (out.size() > 10 && out[10] == ' ') {
    out[10] = 'T';
  }
  return out;
}

std::optional<double> as_real(const ParamValue &v) {
  if (const auto *i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto *d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

std::optional<std::int64_t> as_integer(const ParamValue &v) {
  if (const auto *i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto *d = std::get_if<double>(&v)) {
    if (std::isfinite(*d) && std::floor(*d) == *d && std::abs(*d) < 9e15) {
      return static_cast<std::int64_t>(*d);
    }
  }
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------- reading

class Reader {
public:
  Reader(const json &root, const TermRegistry &registry) : root_(root), registry_(registry) {}

  WorkflowDoc read();

private:
  const json &root_;
  const TermRegistry &registry_;
  PrefixMap prefixes_;
  WorkflowDoc doc_;

  [[noreturn]] void fail(const Pointer &at, const std::string &why) const {
    throw StructureError(at.to_string(), why);
  }

  void warn(const Pointer &at, std::string code, std::string message) {
    doc_.parse_warnings.push_back(
        {Severity::Warning, at.to_string(), std::move(code), std::move(message)});
  }

  void record(const std::string &key, const Pointer &at) { doc_.source_map[key] = at.to_string(); }

  // "@x" keys stay as they are; everything else is expanded and compacted to
  // tswf:/dmcc: form when it belongs to one of those namespaces.
  std::string key_of(const std::string &raw) const {
    if (raw.starts_with('@')) {
      return raw;
    }
    const auto iri = expand_iri(raw, prefixes_);
    if (iri.starts_with(kDmccNamespace)) {
      return "dmcc:" + iri.substr(kDmccNamespace.size());
    }
    return compact_iri(iri);
  }

  void read_context();
  std::string type_of(const json &obj, const Pointer &at, bool required);
  std::string string_value(const json &v, const Pointer &at);
  void check_keywords(const json &obj, const Pointer &at) const;

  void read_input(const json &v, const Pointer &at);
  void read_source(const json &v, const Pointer &at, InputSpec &in);
  void read_fields(const json &v, const Pointer &at, InputSpec &in);
  int read_frequency(const json &v, const Pointer &at);
  void read_stage(const json &v, const Pointer &at, std::vector<OpSpec> &out,
                  const std::string &stage_key, const std::string &slot);
  void read_op(const json &v, const Pointer &at, std::vector<OpSpec> &out,
               const std::string &stage_key, const std::string &slot);
  void read_params(const json &v, const Pointer &at, OpSpec &op, const std::string &op_key);
  ParamValue read_param_value(const json &v, const Pointer &at) const;
  void read_performs(const json &v, const Pointer &at);
  void read_outputs(const json &v, const Pointer &at);
  void read_output(const json &v, const Pointer &at);
  void read_service_meta(const json &v, const Pointer &at);
  bool read_nested_stage(const std::string &key, const json &v, const Pointer &at);

  // Yields the members of a list-valued property: a bare array, an object
  // carrying "@set"/"@list", or a single object.
  template <typename Fn> void each_member(const json &v, const Pointer &at, Fn &&fn);
};

void Reader::check_keywords(const json &obj, const Pointer &at) const {
  static const std::set<std::string> known = {"@context", "@id", "@type", "@value", "@set",
                                              "@list"};
  for (const auto &[k, _] : obj.items()) {
    if (k.starts_with('@') && !known.contains(k)) {
      fail(at / k, "unsupported JSON-LD keyword " + k);
    }
  }
}

template <typename Fn> void Reader::each_member(const json &v, const Pointer &at, Fn &&fn) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      fn(v[i], at / i);
    }
    return;
  }
  if (!v.is_object()) {
    fail(at, "expected an object or array");
  }
  for (const char *kw : {"@set", "@list"}) {
    if (const auto it = v.find(kw); it != v.end()) {
      if (!it->is_array()) {
        fail(at / kw, std::string(kw) + " must be an array");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        fn((*it)[i], at / kw / i);
      }
      return;
    }
  }
  fn(v, at);
}

void Reader::read_context() {
  prefixes_ = default_context();
  const auto it = root_.find("@context");
  if (it == root_.end()) {
    warn(Pointer(), "MissingContext", "no @context; default prefixes assumed");
    return;
  }
  const Pointer at = Pointer() / "@context";
  auto absorb = [&](const json &ctx, const Pointer &p) {
    if (ctx.is_string()) {
      fail(p, "remote @context references are not supported");
    }
    if (!ctx.is_object()) {
      fail(p, "@context must be an object");
    }
    for (const auto &[prefix, iri] : ctx.items()) {
      if (!iri.is_string()) {
        fail(p / prefix, "only prefix definitions are supported in @context");
      }
      prefixes_[prefix] = iri.get<std::string>();
    }
  };
  if (it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      absorb((*it)[i], at / i);
    }
  } else {
    absorb(*it, at);
  }
}

std::string Reader::type_of(const json &obj, const Pointer &at, bool required) {
  const auto it = obj.find("@type");
  if (it == obj.end()) {
    if (required) {
      fail(at, "missing @type");
    }
    return {};
  }
  if (!it->is_string()) {
    fail(at / "@type", "@type must be a string");
  }
  return key_of(it->get<std::string>());
}

std::string Reader::string_value(const json &v, const Pointer &at) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_object()) {
    check_keywords(v, at);
    const auto it = v.find("@value");
    if (it != v.end() && it->is_string()) {
      return it->get<std::string>();
    }
  }
  fail(at, "expected a string value");
}

WorkflowDoc Reader::read() {
  if (!root_.is_object()) {
    fail(Pointer(), "document root must be an object");
  }
  check_keywords(root_, Pointer());
  read_context();

  const auto id = root_.find("@id");
  if (id == root_.end()) {
    fail(Pointer(), "missing @id");
  }
  if (!id->is_string() || id->get<std::string>().empty()) {
    fail(Pointer() / "@id", "@id must be a non-empty string");
  }
  doc_.id = id->get<std::string>();
  record("id", Pointer() / "@id");

  const std::string type = type_of(root_, Pointer(), true);
  if (type != "tswf:TSAnalysis") {
    fail(Pointer() / "@type", "root @type must be tswf:TSAnalysis, found " + type);
  }

  for (const auto &[raw_key, value] : root_.items()) {
    const Pointer at = Pointer() / raw_key;
    const std::string key = key_of(raw_key);
    if (key == "@context" || key == "@id" || key == "@type") {
      continue;
    }
    if (key == "tswf:name") {
      doc_.name = string_value(value, at);
    } else if (key == "tswf:description") {
      doc_.description = string_value(value, at);
    } else if (key == "tswf:author") {
      doc_.author = string_value(value, at);
    } else if (key == "tswf:version") {
      doc_.version = string_value(value, at);
    } else if (key == "tswf:dateCreated") {
      const auto raw = string_value(value, at);
      doc_.date_created = normalize_datetime(raw).value_or(raw);
      record("dateCreated", at);
    } else if (key == "tswf:codeRepository") {
      doc_.code_repository = string_value(value, at);
      record("codeRepository", at);
    } else if (key == "tswf:hasInput") {
      read_input(value, at);
    } else if (key == "tswf:performs") {
      read_performs(value, at);
    } else if (key == "tswf:hasOutput") {
      read_outputs(value, at);
    } else if (key == "dmcc:serviceMeta") {
      read_service_meta(value, at);
    } else if (!read_nested_stage(key, value, at)) {
      warn(at, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
  return std::move(doc_);
}

bool Reader::read_nested_stage(const std::string &key, const json &v, const Pointer &at) {
  if (key == "tswf:hasPlot") {
    read_stage(v, at, doc_.plots, "plots", "");
  } else if (key == "tswf:hasInformationAnalysis") {
    read_stage(v, at, doc_.info_analyses, "info", "");
  } else if (key == "tswf:hasStationaryAnalysis") {
    read_stage(v, at, doc_.stationary_analyses, "stationary", "");
  } else if (key == "tswf:hasPreprocessing") {
    read_stage(v, at, doc_.preprocessing, "preprocessing", "");
  } else {
    return false;
  }
  return true;
}

void Reader::read_input(const json &v, const Pointer &at) {
  if (!v.is_object()) {
    fail(at, "tswf:hasInput must be an object");
  }
  check_keywords(v, at);
  record("input", at);
  InputSpec in;
  in.source_kind.clear();
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string key = key_of(raw_key);
    if (key == "@type" || key == "@id") {
      continue;
    }
    if (key == "tswf:source") {
      read_source(value, p, in);
    } else if (key == "tswf:frequency") {
      in.frequency = read_frequency(value, p);
    } else if (!read_nested_stage(key, value, p)) {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
  doc_.input = std::move(in);
}

int Reader::read_frequency(const json &v, const Pointer &at) {
  const json *num = &v;
  if (v.is_object() && v.contains("@value")) {
    num = &v["@value"];
  }
  if (!num->is_number_integer()) {
    fail(at, "tswf:frequency must be an integer");
  }
  record("input/frequency", at);
  return num->get<int>();
}

void Reader::read_source(const json &v, const Pointer &at, InputSpec &in) {
  if (!v.is_object()) {
    fail(at, "tswf:source must be an object");
  }
  check_keywords(v, at);
  record("input/source", at);
  in.source_kind = type_of(v, at, true);
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string key = key_of(raw_key);
    if (key == "@type") {
      continue;
    }
    if (key == "tswf:src") {
      in.src = string_value(value, p);
      record("input/src", p);
    } else if (key == "tswf:fields") {
      read_fields(value, p, in);
    } else if (key == "tswf:frequency") {
      in.frequency = read_frequency(value, p);
    } else {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
}

void Reader::read_fields(const json &v, const Pointer &at, InputSpec &in) {
  record("input/fields", at);
  each_member(v, at, [&](const json &f, const Pointer &p) {
    if (!f.is_object()) {
      fail(p, "field entries must be objects");
    }
    check_keywords(f, p);
    const auto name = f.find("@value");
    if (name == f.end() || !name->is_string()) {
      fail(p, "field entry needs a string @value naming the column");
    }
    const std::string dtype = type_of(f, p, true);
    Field field;
    field.name = name->get<std::string>();
    if (dtype == "tswf:datetime") {
      field.dtype = FieldType::Datetime;
    } else if (dtype == "tswf:integer") {
      field.dtype = FieldType::Integer;
    } else if (dtype == "tswf:real") {
      field.dtype = FieldType::Real;
    } else if (dtype == "tswf:string") {
      field.dtype = FieldType::String;
    } else {
      fail(p / "@type", "unknown field datatype " + dtype);
    }
    record("input/fields/" + std::to_string(in.fields.size()), p);
    in.fields.push_back(std::move(field));
  });
}

void Reader::read_stage(const json &v, const Pointer &at, std::vector<OpSpec> &out,
                        const std::string &stage_key, const std::string &slot) {
  if (v.is_object()) {
    check_keywords(v, at);
    const bool container = v.contains("@set") || v.contains("@list");
    if (container) {
      const std::string ctype = type_of(v, at, false);
      if (!ctype.empty() && !registry_.find(ctype)) {
        warn(at / "@type", "UnknownTerm", "unknown container type " + ctype);
      }
    }
  }
  each_member(v, at, [&](const json &op, const Pointer &p) {
    read_op(op, p, out, stage_key, slot);
  });
}

void Reader::read_op(const json &v, const Pointer &at, std::vector<OpSpec> &out,
                     const std::string &stage_key, const std::string &slot) {
  if (!v.is_object()) {
    fail(at, "operation entries must be objects");
  }
  check_keywords(v, at);
  OpSpec op;
  op.term = type_of(v, at, true);
  op.slot = slot;
  const std::string key = stage_key + "/" + std::to_string(out.size());
  record(key, at);
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string k = key_of(raw_key);
    if (k == "@type" || k == "@id") {
      continue;
    }
    if (k == "tswf:parameters") {
      read_params(value, p, op, key);
    } else {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
  out.push_back(std::move(op));
}

void Reader::read_params(const json &v, const Pointer &at, OpSpec &op, const std::string &op_key) {
  each_member(v, at, [&](const json &p, const Pointer &pp) {
    if (!p.is_object()) {
      fail(pp, "parameter entries must be objects");
    }
    check_keywords(p, pp);
    std::string name;
    bool has_value = false;
    ParamValue value;
    for (const auto &[raw_key, item] : p.items()) {
      const std::string k = key_of(raw_key);
      if (k == "tswf:name") {
        if (!item.is_string()) {
          fail(pp / raw_key, "parameter name must be a string");
        }
        name = item.get<std::string>();
      } else if (k == "@value") {
        value = read_param_value(item, pp / raw_key);
        has_value = true;
      } else {
        warn(pp / raw_key, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
      }
    }
    if (name.empty()) {
      fail(pp, "parameter entry needs tswf:name");
    }
    if (!has_value) {
      fail(pp, "parameter '" + name + "' needs @value");
    }
    if (op.params.contains(name)) {
      fail(pp, "parameter '" + name + "' given twice");
    }
    op.params.emplace(name, std::move(value));
    record(op_key + "/params/" + name, pp);
  });
}

ParamValue Reader::read_param_value(const json &v, const Pointer &at) const {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    bool all_int = true;
    for (const auto &e : v) {
      if (!e.is_number()) {
        fail(at, "list parameters must hold numbers only");
      }
      all_int = all_int && e.is_number_integer();
    }
    if (all_int) {
      return v.get<std::vector<std::int64_t>>();
    }
    return v.get<std::vector<double>>();
  }
  fail(at, "unsupported parameter value");
}

void Reader::read_performs(const json &v, const Pointer &at) {
  if (v.is_array()) {
    read_stage(v, at, doc_.models, "models", "");
    return;
  }
  if (!v.is_object()) {
    fail(at, "tswf:performs must be an object or array");
  }
  check_keywords(v, at);
  // Keys iterate in sorted order, which fixes the canonical model order.
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string key = key_of(raw_key);
    if (key == "@type") {
      const std::string ctype = type_of(v, at, false);
      if (!registry_.find(ctype)) {
        warn(p, "UnknownTerm", "unknown container type " + ctype);
      }
    } else if (key == "@set" || key == "@list") {
      if (!value.is_array()) {
        fail(p, key + " must be an array");
      }
      read_stage(value, p, doc_.models, "models", "");
    } else if (key.starts_with("tswf:has")) {
      read_stage(value, p, doc_.models, "models", key.substr(5));
    } else {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
}

void Reader::read_outputs(const json &v, const Pointer &at) {
  if (v.is_object() && !v.contains("@set") && !v.contains("@list") &&
      type_of(v, at, false) != "tswf:EvaluationMeasures") {
    read_output(v, at);
    return;
  }
  if (v.is_object()) {
    check_keywords(v, at);
  }
  each_member(v, at, [&](const json &o, const Pointer &p) { read_output(o, p); });
}

void Reader::read_output(const json &v, const Pointer &at) {
  if (!v.is_object()) {
    fail(at, "output entries must be objects");
  }
  check_keywords(v, at);
  OutputSpec out;
  out.kind = type_of(v, at, true);
  out.measures.clear();
  const std::string key = "outputs/" + std::to_string(doc_.outputs.size());
  record(key, at);
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string k = key_of(raw_key);
    if (k == "@type") {
      continue;
    }
    // Plain "id" is accepted as an alias of "@id" for output entries.
    if (k == "@id" || raw_key == "id") {
      if (!value.is_string()) {
        fail(p, "output id must be a string");
      }
      out.id = value.get<std::string>();
    } else if (k == "tswf:hasMeasures") {
      record(key + "/measures", p);
      each_member(value, p, [&](const json &m, const Pointer &mp) {
        std::string term;
        if (m.is_string()) {
          term = key_of(m.get<std::string>());
        } else if (m.is_object()) {
          check_keywords(m, mp);
          term = type_of(m, mp, true);
        } else {
          fail(mp, "measure entries must be objects or strings");
        }
        record(key + "/measures/" + std::to_string(out.measures.size()), mp);
        out.measures.push_back(std::move(term));
      });
    } else {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
  doc_.outputs.push_back(std::move(out));
}

void Reader::read_service_meta(const json &v, const Pointer &at) {
  if (!v.is_object()) {
    fail(at, "dmcc:serviceMeta must be an object");
  }
  record("serviceMeta", at);
  ServiceMeta meta;
  for (const auto &[raw_key, value] : v.items()) {
    const Pointer p = at / raw_key;
    const std::string k = key_of(raw_key);
    if (k == "@type") {
      continue;
    }
    if (k == "dmcc:costPerRun") {
      if (!value.is_object()) {
        fail(p, "dmcc:costPerRun must be an object");
      }
      record("serviceMeta/cost", p);
      Cost cost;
      bool have_amount = false;
      for (const auto &[ck, cv] : value.items()) {
        const std::string kk = key_of(ck);
        if (kk == "dmcc:amount") {
          if (!cv.is_number()) {
            fail(p / ck, "dmcc:amount must be a number");
          }
          cost.amount = cv.get<double>();
          have_amount = true;
        } else if (kk == "dmcc:currency") {
          if (!cv.is_string()) {
            fail(p / ck, "dmcc:currency must be a string");
          }
          cost.currency = cv.get<std::string>();
        } else {
          warn(p / ck, "UnknownKey", "unrecognized key '" + ck + "' ignored");
        }
      }
      if (!have_amount) {
        fail(p, "dmcc:costPerRun needs dmcc:amount");
      }
      meta.cost_per_run = std::move(cost);
    } else if (k == "dmcc:authRequired") {
      if (!value.is_boolean()) {
        fail(p, "dmcc:authRequired must be a boolean");
      }
      meta.auth_required = value.get<bool>();
    } else {
      warn(p, "UnknownKey", "unrecognized key '" + raw_key + "' ignored");
    }
  }
  doc_.service_meta = std::move(meta);
}

// ---------------------------------------------------------------- validation

class Validator {
public:
  Validator(const WorkflowDoc &doc, const TermRegistry &registry)
      : doc_(doc), registry_(registry) {}

  ValidationReport run();

private:
  const WorkflowDoc &doc_;
  const TermRegistry &registry_;
  ValidationReport report_;

  void error(const std::string &key, std::string code, std::string message) {
    report_.diagnostics.push_back(
        {Severity::Error, doc_.path_of(key), std::move(code), std::move(message)});
  }
  void warning(const std::string &key, std::string code, std::string message) {
    report_.diagnostics.push_back(
        {Severity::Warning, doc_.path_of(key), std::move(code), std::move(message)});
  }

  const Term *term_in(const std::string &key, const std::string &name, Category expected);
  void check_stage(const std::vector<OpSpec> &ops, const std::string &stage_key, Category cat);
  void check_param(const std::string &key, const ParamSpec &spec, const ParamValue &value);
  void check_input();
  void check_outputs();
};

const Term *Validator::term_in(const std::string &key, const std::string &name, Category expected) {
  const Term *t = registry_.find(name);
  if (!t) {
    error(key, "UnknownTerm", "'" + name + "' is not a tswf-schema term");
    return nullptr;
  }
  if (t->category != expected) {
    error(key, "WrongCategory",
          t->curie + " is a " + std::string(to_string(t->category)) + " term, expected " +
              std::string(to_string(expected)));
    return nullptr;
  }
  return t;
}

void Validator::check_param(const std::string &key, const ParamSpec &spec, const ParamValue &v) {
  auto kind_error = [&] {
    error(key, "ParamKind",
          "parameter '" + spec.name + "' must be " + std::string(to_string(spec.kind)));
  };
  auto check_bound = [&](double x) {
    if (spec.bounds && !spec.bounds->contains(x)) {
      error(key, "ParamBounds", "parameter '" + spec.name + "' value out of range");
      return false;
    }
    return true;
  };
  switch (spec.kind) {
  case ParamKind::Integer: {
    const auto i = as_integer(v);
    if (!i) return kind_error();
    check_bound(static_cast<double>(*i));
    break;
  }
  case ParamKind::Real: {
    const auto d = as_real(v);
    if (!d || !std::isfinite(*d)) return kind_error();
    check_bound(*d);
    break;
  }
  case ParamKind::IntegerList:
  case ParamKind::RealList: {
    std::vector<double> xs;
    if (const auto *iv = std::get_if<std::vector<std::int64_t>>(&v)) {
      xs.assign(iv->begin(), iv->end());
    } else if (const auto *dv = std::get_if<std::vector<double>>(&v)) {
      if (spec.kind == ParamKind::IntegerList) return kind_error();
      xs = *dv;
    } else {
      return kind_error();
    }
    if (spec.length && xs.size() != *spec.length) {
      error(key, "ParamShape",
            "parameter '" + spec.name + "' needs " + std::to_string(*spec.length) +
                " elements, got " + std::to_string(xs.size()));
      return;
    }
    for (double x : xs) {
      if (!check_bound(x)) break;
    }
    break;
  }
  case ParamKind::String: {
    const auto *s = std::get_if<std::string>(&v);
    if (!s) return kind_error();
    if (!spec.choices.empty() &&
        std::find(spec.choices.begin(), spec.choices.end(), *s) == spec.choices.end()) {
      error(key, "ParamChoice", "parameter '" + spec.name + "' has unsupported value '" + *s + "'");
    }
    break;
  }
  case ParamKind::Boolean:
    if (!std::holds_alternative<bool>(v)) return kind_error();
    break;
  }
}

void Validator::check_stage(const std::vector<OpSpec> &ops, const std::string &stage_key,
                            Category cat) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string key = stage_key + "/" + std::to_string(i);
    const Term *t = term_in(key, ops[i].term, cat);
    if (!t) {
      continue;
    }
    if (!t->executable) {
      warning(key, "NotExecutable",
              t->curie + " is a schema term without an execution backend");
    }
    for (const auto &[name, value] : ops[i].params) {
      const std::string pkey = key + "/params/" + name;
      const auto &schema = param_schema_of(*t);
      const auto spec = std::find_if(schema.begin(), schema.end(),
                                     [&](const ParamSpec &s) { return s.name == name; });
      if (spec == schema.end()) {
        error(pkey, "ParamUnknown", t->curie + " has no parameter '" + name + "'");
        continue;
      }
      check_param(pkey, *spec, value);
    }
  }
}

void Validator::check_input() {
  if (!doc_.input) {
    error("", "MissingInput", "workflow has no tswf:hasInput");
    return;
  }
  const auto &in = *doc_.input;
  if (const Term *t = term_in("input/source", in.source_kind, Category::Input)) {
    if (!registry_.is_a(*t, "tswf:DataSource") || t->curie == "tswf:DataSource") {
      error("input/source", "WrongCategory", t->curie + " is not a data source type");
    } else if (!t->executable) {
      warning("input/source", "NotExecutable", t->curie + " sources cannot be ingested yet");
    }
  }
  if (in.src.empty()) {
    error("input/source", "MissingSource", "data source has no tswf:src locator");
  }
  std::set<std::string> names;
  std::size_t datetime = 0;
  std::size_t numeric = 0;
  for (std::size_t i = 0; i < in.fields.size(); ++i) {
    const auto &f = in.fields[i];
    if (!names.insert(f.name).second) {
      error("input/fields/" + std::to_string(i), "FieldNameDuplicate",
            "field '" + f.name + "' declared twice");
    }
    datetime += f.dtype == FieldType::Datetime;
    numeric += f.dtype == FieldType::Integer || f.dtype == FieldType::Real;
  }
  if (datetime > 1) {
    error("input/fields", "InputFields", "at most one datetime field is allowed");
  }
  if (numeric == 0) {
    error("input/fields", "InputFields", "input needs at least one numeric field");
  }
  if (in.frequency && *in.frequency < 2) {
    error("input/frequency", "BadFrequency", "frequency must be at least 2 when set");
  }
}

void Validator::check_outputs() {
  bool forecast_output = false;
  for (std::size_t i = 0; i < doc_.outputs.size(); ++i) {
    const auto &o = doc_.outputs[i];
    const std::string key = "outputs/" + std::to_string(i);
    if (const Term *t = term_in(key, o.kind, Category::Output)) {
      forecast_output = forecast_output || t->curie == "tswf:ForecastAccuracy";
      if (!t->executable) {
        warning(key, "NotExecutable", t->curie + " is not an evaluable output kind");
      }
    }
    if (o.measures.empty()) {
      error(key, "EmptyMeasures", "output lists no measures");
    }
    for (std::size_t j = 0; j < o.measures.size(); ++j) {
      const std::string mkey = key + "/measures/" + std::to_string(j);
      if (const Term *m = term_in(mkey, o.measures[j], Category::EvaluationMeasure)) {
        if (!m->executable) {
          warning(mkey, "NotExecutable", m->curie + " has no execution backend");
        }
      }
    }
  }
  if (!doc_.models.empty() && !forecast_output) {
    error("models/0", "OutputModelMismatch",
          "models are declared but no tswf:ForecastAccuracy output evaluates them");
  }
  if (doc_.models.empty() && forecast_output) {
    error("outputs/0", "OutputModelMismatch",
          "a tswf:ForecastAccuracy output needs at least one model");
  }
}

ValidationReport Validator::run() {
  static const std::regex absolute_iri(R"(^[A-Za-z][A-Za-z0-9+.\-]*:\S+$)");
  if (doc_.id.empty() || !std::regex_match(doc_.id, absolute_iri)) {
    error("id", "BadIRI", "@id must be an absolute IRI");
  }
  if (doc_.date_created && !normalize_datetime(*doc_.date_created)) {
    error("dateCreated", "BadDate", "tswf:dateCreated is not an ISO-8601 date-time");
  }
  check_input();
  check_stage(doc_.preprocessing, "preprocessing", Category::Preprocessing);
  check_stage(doc_.plots, "plots", Category::Plot);
  check_stage(doc_.info_analyses, "info", Category::InformationAnalysis);
  check_stage(doc_.stationary_analyses, "stationary", Category::StationaryAnalysis);
  check_stage(doc_.models, "models", Category::PredictiveModel);
  check_outputs();
  if (doc_.service_meta && doc_.service_meta->cost_per_run) {
    const auto &c = *doc_.service_meta->cost_per_run;
    if (!(c.amount >= 0.0)) {
      error("serviceMeta/cost", "BadCost", "cost amount must be non-negative");
    }
    static const std::regex iso4217("^[A-Z]{3}$");
    if (!std::regex_match(c.currency, iso4217)) {
      error("serviceMeta/cost", "BadCurrency", "currency must be an ISO-4217 code");
    }
  }
  for (const auto &w : doc_.parse_warnings) {
    report_.diagnostics.push_back(w);
  }
  return std::move(report_);
}

// ---------------------------------------------------------------- writing

json param_to_json(const ParamValue &v) {
  return std::visit([](const auto &x) { return json(x); }, v);
}

json ops_to_json(const std::vector<OpSpec> &ops) {
  json arr = json::array();
  for (const auto &op : ops) {
    json o = {{"@type", op.term}};
    if (!op.params.empty()) {
      json set = json::array();
      for (const auto &[name, value] : op.params) {
        set.push_back({{"tswf:name", name}, {"@value", param_to_json(value)}});
      }
      o["tswf:parameters"] = {{"@set", std::move(set)}};
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

json container(const char *type, const std::vector<OpSpec> &ops) {
  return {{"@type", type}, {"@set", ops_to_json(ops)}};
}

} // namespace

WorkflowDoc parse_document(std::string_view text, const TermRegistry &registry) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw SyntaxError(e.byte, e.what());
  }
  return Reader(root, registry).read();
}

WorkflowDoc parse_document(std::string_view text) {
  return parse_document(text, load_vocabulary());
}

ValidationReport validate(const WorkflowDoc &doc, const TermRegistry &registry) {
  return Validator(doc, registry).run();
}

std::string serialize(const WorkflowDoc &doc) {
  json out;
  json ctx = {{"tswf", std::string(kTswfNamespace)}};
  if (doc.service_meta) {
    ctx["dmcc"] = std::string(kDmccNamespace);
  }
  out["@context"] = std::move(ctx);
  out["@id"] = doc.id;
  out["@type"] = "tswf:TSAnalysis";
  auto put_string = [&](const char *key, const std::string &v) {
    if (!v.empty()) {
      out[key] = v;
    }
  };
  put_string("tswf:name", doc.name);
  put_string("tswf:description", doc.description);
  put_string("tswf:author", doc.author);
  put_string("tswf:version", doc.version);
  if (doc.date_created) {
    out["tswf:dateCreated"] = *doc.date_created;
  }
  if (doc.code_repository) {
    out["tswf:codeRepository"] = {{"@type", "tswf:url"}, {"@value", *doc.code_repository}};
  }

  // Exploratory stages live under hasInput, as in the schema's skeleton.
  json *stage_host = &out;
  if (doc.input) {
    const auto &in = *doc.input;
    json fields = json::array();
    for (const auto &f : in.fields) {
      fields.push_back({{"@value", f.name}, {"@type", "tswf:" + std::string(to_string(f.dtype))}});
    }
    json source = {{"@type", in.source_kind}, {"tswf:src", in.src}};
    source["tswf:fields"] = {{"@set", std::move(fields)}};
    json input = {{"@type", "tswf:Data"}, {"tswf:source", std::move(source)}};
    if (in.frequency) {
      input["tswf:frequency"] = *in.frequency;
    }
    out["tswf:hasInput"] = std::move(input);
    stage_host = &out["tswf:hasInput"];
  }
  if (!doc.preprocessing.empty()) {
    (*stage_host)["tswf:hasPreprocessing"] = container("tswf:Preprocessing", doc.preprocessing);
  }
  if (!doc.plots.empty()) {
    (*stage_host)["tswf:hasPlot"] = container("tswf:TSPlot", doc.plots);
  }
  if (!doc.info_analyses.empty()) {
    (*stage_host)["tswf:hasInformationAnalysis"] =
        container("tswf:InformationAnalysis", doc.info_analyses);
  }
  if (!doc.stationary_analyses.empty()) {
    (*stage_host)["tswf:hasStationaryAnalysis"] =
        container("tswf:StatitionaryAnalysis", doc.stationary_analyses);
  }

  if (!doc.models.empty()) {
    json performs = {{"@type", "tswf:PredictiveModel"}};
    std::map<std::string, std::vector<OpSpec>> by_slot;
    for (const auto &m : doc.models) {
      by_slot[m.slot].push_back(m);
    }
    for (const auto &[slot, ops] : by_slot) {
      json arr = ops_to_json(ops);
      if (slot.empty()) {
        performs["@set"] = std::move(arr);
      } else if (arr.size() == 1) {
        performs["tswf:" + slot] = std::move(arr[0]);
      } else {
        performs["tswf:" + slot] = {{"@set", std::move(arr)}};
      }
    }
    out["tswf:performs"] = std::move(performs);
  }

  if (!doc.outputs.empty()) {
    json set = json::array();
    for (const auto &o : doc.outputs) {
      json entry = {{"@type", o.kind}};
      if (!o.id.empty()) {
        entry["@id"] = o.id;
      }
      json measures = json::array();
      for (const auto &m : o.measures) {
        measures.push_back({{"@type", m}});
      }
      entry["tswf:hasMeasures"] = std::move(measures);
      set.push_back(std::move(entry));
    }
    out["tswf:hasOutput"] = {{"@type", "tswf:EvaluationMeasures"}, {"@set", std::move(set)}};
  }

  if (doc.service_meta) {
    json meta = json::object();
    if (doc.service_meta->cost_per_run) {
      meta["dmcc:costPerRun"] = {{"dmcc:amount", doc.service_meta->cost_per_run->amount},
                                 {"dmcc:currency", doc.service_meta->cost_per_run->currency}};
    }
    if (doc.service_meta->auth_required) {
      meta["dmcc:authRequired"] = *doc.service_meta->auth_required;
    }
    out["dmcc:serviceMeta"] = std::move(meta);
  }
  return out.dump(2) + "\n";
}

ParamMap resolve_params(const OpSpec &op, const Term &term,
                        const std::optional<ResolveContext> &ctx) {
  ParamMap resolved = op.params;
  for (const auto &spec : param_schema_of(term)) {
    if (resolved.contains(spec.name)) {
      continue;
    }
    if (spec.default_value) {
      resolved.emplace(spec.name, *spec.default_value);
      continue;
    }
    if (!ctx || spec.default_rule.empty()) {
      continue;
    }
    const auto n = static_cast<std::int64_t>(ctx->series_length);
    if (spec.name == "period") {
      resolved.emplace(spec.name, static_cast<std::int64_t>(ctx->frequency.value_or(1)));
    } else if (spec.name == "lag_order") {
      resolved.emplace(spec.name, static_cast<std::int64_t>(
                                      std::floor(std::cbrt(static_cast<double>(std::max<std::int64_t>(n - 1, 0))))));
    } else if (spec.name == "lag" && term.curie == "tswf:JungBox") {
      resolved.emplace(spec.name, std::max<std::int64_t>(1, std::min<std::int64_t>(10, n / 5)));
    } else if (spec.name == "lag") {
      std::int64_t h = n > 0 ? static_cast<std::int64_t>(std::floor(10.0 * std::log10(static_cast<double>(n)))) : 1;
      h = std::min(h, n - 1);
      resolved.emplace(spec.name, std::max<std::int64_t>(1, h));
    }
  }
  return resolved;
}

std::vector<std::string> defaulted_params(const OpSpec &op, const ParamMap &resolved) {
  std::vector<std::string> names;
  for (const auto &[name, _] : resolved) {
    if (!op.params.contains(name)) {
      names.push_back(name);
    }
  }
  return names;
}

} // namespace tsflow
