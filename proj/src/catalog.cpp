#include "tsflow/catalog.hpp"

#include "tsflow/error.hpp"

#include "fsutil.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>

namespace tsflow {

namespace fs = std::filesystem;

namespace {

std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json meta_json(const std::string &id, const std::string &imported_at, const std::string &raw,
               const std::vector<std::string> &runs) {
  return {{"id", id}, {"imported_at", imported_at}, {"raw_hash", fnv1a_hex(raw)}, {"runs", runs}};
}

std::size_t parse_size(const std::string &s, const char *what) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(Errc::InvalidArgument, std::string(what) + " must be a non-negative integer");
  }
  return v;
}

const std::string &arg(const std::map<std::string, std::string> &args, const std::string &name) {
  const auto it = args.find(name);
  if (it == args.end() || it->second.empty()) {
    throw Error(Errc::InvalidArgument, "missing query parameter '" + name + "'");
  }
  return it->second;
}

} // namespace

std::string normalize_term(const std::string &name) {
  if (name.find("://") != std::string::npos) return compact_iri(name);
  if (name.find(':') == std::string::npos) return "tswf:" + name;
  return name;
}

ValidationReport check_document(std::string_view text, std::optional<WorkflowDoc> *doc_out) {
  ValidationReport report;
  try {
    auto doc = parse_document(text);
    report = validate(doc, load_vocabulary());
    if (doc_out) *doc_out = std::move(doc);
  } catch (const SyntaxError &e) {
    report.diagnostics.push_back({Severity::Error, "", "SyntaxError",
                                  std::string(e.what()) + " (byte " + std::to_string(e.offset()) + ")"});
  } catch (const StructureError &e) {
    report.diagnostics.push_back({Severity::Error, e.path(), "StructureError", e.what()});
  } catch (const Error &e) {
    report.diagnostics.push_back({Severity::Error, "", std::string(to_string(e.code())), e.what()});
  }
  return report;
}

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "entries", ec);
  if (ec) {
    throw Error(Errc::StorageError, "cannot create store at " + root_.string() + ": " + ec.message());
  }
  fs::remove_all(root_ / "tmp", ec);
  load();
}

void Store::load() {
  for (const auto &dirent : fs::directory_iterator(root_ / "entries")) {
    if (!dirent.is_directory()) continue;
    const auto dir = dirent.path();
    if (!fs::exists(dir / "raw.jsonld") || !fs::exists(dir / "meta.json")) continue;
    try {
      auto e = std::make_shared<Entry>();
      e->key = dir.filename().string();
      e->raw = detail::read_file(dir / "raw.jsonld");
      const auto meta = Json::parse(detail::read_file(dir / "meta.json"));
      e->imported_at = meta.at("imported_at").get<std::string>();
      e->runs = meta.value("runs", std::vector<std::string>{});
      e->doc = parse_document(e->raw);
      // Bundles written before a crash interrupted the meta update.
      std::vector<std::string> found;
      if (fs::is_directory(dir / "runs")) {
        for (const auto &r : fs::directory_iterator(dir / "runs")) {
          const auto name = r.path().filename().string();
          if (name.rfind("run_", 0) == 0 && fs::exists(r.path() / "bundle.json")) {
            const auto rid = name.substr(4);
            if (std::find(e->runs.begin(), e->runs.end(), rid) == e->runs.end()) found.push_back(rid);
          }
        }
      }
      std::sort(found.begin(), found.end());
      e->runs.insert(e->runs.end(), found.begin(), found.end());
      if (!found.empty() || meta.value("raw_hash", "") != fnv1a_hex(e->raw)) {
        write_meta(dir, *e);
      }
      for (const auto &r : e->runs) run_owner_[r] = e->doc.id;
      index_[e->doc.id] = std::move(e);
    } catch (const std::exception &ex) {
      std::cerr << "tsflow: skipping unreadable catalog entry " << dir << ": " << ex.what() << "\n";
    }
  }
}

void Store::write_meta(const fs::path &dir, const Entry &e) const {
  detail::write_file_atomic(dir / "meta.json", meta_json(e.doc.id, e.imported_at, e.raw, e.runs).dump(2) + "\n");
}

std::mutex &Store::entry_mutex(const std::string &id) {
  std::lock_guard lock(locks_mu_);
  auto &m = entry_locks_[id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

std::string Store::key_for(const std::string &id) const {
  const auto base = fnv1a_hex(id);
  std::string key = base;
  for (int i = 2;; ++i) {
    bool taken = fs::exists(root_ / "entries" / key);
    if (!taken) {
      std::shared_lock lock(index_mu_);
      taken = std::any_of(index_.begin(), index_.end(), [&](const auto &kv) { return kv.second->key == key; });
    }
    if (!taken) return key;
    key = base + "-" + std::to_string(i);
  }
}

std::shared_ptr<const Store::Entry> Store::find(const std::string &id) const {
  std::shared_lock lock(index_mu_);
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : it->second;
}

std::shared_ptr<const Store::Entry> Store::require(const std::string &id) const {
  auto e = find(id);
  if (!e) {
    throw Error(Errc::NotFound, "no workflow " + id);
  }
  return e;
}

ImportResult Store::import_document(std::string_view text, bool force) {
  ImportResult result;
  std::optional<WorkflowDoc> doc;
  result.report = check_document(text, &doc);
  if (!result.report.valid() || !doc) {
    return result;
  }
  const std::string id = doc->id;
  std::lock_guard entry_lock(entry_mutex(id));

  if (const auto existing = find(id)) {
    result.id = id;
    if (existing->raw == text || existing->doc == *doc) {
      return result;
    }
    if (!force) {
      throw Error(Errc::Conflict, id + " already exists with different content");
    }
    auto replaced = std::make_shared<Entry>(*existing);
    replaced->raw = std::string(text);
    replaced->doc = std::move(*doc);
    const auto dir = root_ / "entries" / replaced->key;
    // raw.jsonld is the commit point; meta carries the hash used to detect
    // an interrupted replace on the next load.
    detail::write_file_atomic(dir / "raw.jsonld", replaced->raw);
    write_meta(dir, *replaced);
    std::unique_lock lock(index_mu_);
    index_[id] = std::move(replaced);
    result.created = true;
    return result;
  }

  auto e = std::make_shared<Entry>();
  e->key = key_for(id);
  e->imported_at = utc_timestamp();
  e->raw = std::string(text);
  e->doc = std::move(*doc);
  const auto staging = root_ / "tmp" / detail::random_hex(8);
  detail::write_file_atomic(staging / "raw.jsonld", e->raw);
  write_meta(staging, *e);
  std::error_code ec;
  fs::rename(staging, root_ / "entries" / e->key, ec);
  if (ec) {
    fs::remove_all(staging, ec);
    throw Error(Errc::StorageError, "cannot commit entry for " + id);
  }
  detail::sync_directory(root_ / "entries");
  {
    std::unique_lock lock(index_mu_);
    index_[id] = std::move(e);
  }
  result.id = id;
  result.created = true;
  return result;
}

std::vector<EntryInfo> Store::list() const {
  std::vector<EntryInfo> out;
  {
    std::shared_lock lock(index_mu_);
    for (const auto &[id, e] : index_) out.push_back({id, e->doc.name, e->imported_at, e->runs});
  }
  std::sort(out.begin(), out.end(), [](const EntryInfo &a, const EntryInfo &b) {
    return std::tie(a.imported_at, a.id) < std::tie(b.imported_at, b.id);
  });
  return out;
}

std::optional<EntryInfo> Store::info(const std::string &id) const {
  const auto e = find(id);
  if (!e) return std::nullopt;
  return EntryInfo{id, e->doc.name, e->imported_at, e->runs};
}

std::string Store::raw(const std::string &id) const { return require(id)->raw; }

WorkflowDoc Store::document(const std::string &id) const { return require(id)->doc; }

std::string Store::run_workflow(const std::string &id, std::size_t horizon, const fs::path &data_root) {
  const auto e = require(id);
  ExecuteOptions opts;
  opts.data_root = data_root;
  opts.horizon = horizon;
  opts.out_dir = root_ / "entries" / e->key / "runs";
  {
    std::shared_lock lock(index_mu_);
    do {
      opts.run_id = generate_run_id();
    } while (run_owner_.contains(opts.run_id));
  }
  const auto bundle = execute(e->doc, opts);

  std::lock_guard entry_lock(entry_mutex(id));
  auto updated = std::make_shared<Entry>(*require(id));
  updated->runs.push_back(bundle.run_id);
  write_meta(root_ / "entries" / updated->key, *updated);
  std::unique_lock lock(index_mu_);
  index_[id] = std::move(updated);
  run_owner_[bundle.run_id] = id;
  return bundle.run_id;
}

std::string Store::run_bundle_text(const std::string &run_id) const {
  std::shared_ptr<const Entry> e;
  {
    std::shared_lock lock(index_mu_);
    const auto it = run_owner_.find(run_id);
    if (it == run_owner_.end()) {
      throw Error(Errc::NotFound, "no run " + run_id);
    }
    e = index_.at(it->second);
  }
  return detail::read_file(root_ / "entries" / e->key / "runs" / ("run_" + run_id) / "bundle.json");
}

Json Store::run_bundle(const std::string &run_id) const { return Json::parse(run_bundle_text(run_id)); }

Json Store::operations_count(const std::string &id) const {
  const auto &d = require(id)->doc;
  return {{"id", id},
          {"operations", tsflow::operations_count(d)},
          {"breakdown",
           {{"preprocessing", d.preprocessing.size()},
            {"plots", d.plots.size()},
            {"information_analyses", d.info_analyses.size()},
            {"stationary_analyses", d.stationary_analyses.size()},
            {"models", d.models.size()},
            {"forecasts", d.models.size()},
            {"outputs", d.outputs.size()}}}};
}

Json Store::services_with_ts_functions() const {
  Json ids = Json::array();
  for (const auto &info : list()) {
    const auto &d = require(info.id)->doc;
    if (!d.info_analyses.empty() || !d.stationary_analyses.empty() || !d.models.empty()) ids.push_back(info.id);
  }
  return {{"services", ids}};
}

Json Store::provides_algorithm(const std::string &id, const std::string &term) const {
  const auto &d = require(id)->doc;
  const auto curie = normalize_term(term);
  const Term *t = load_vocabulary().find(curie);
  bool provided = false;
  if (t && t->executable) {
    for (const auto *stage : {&d.preprocessing, &d.plots, &d.info_analyses, &d.stationary_analyses, &d.models}) {
      for (const auto &op : *stage) provided = provided || op.term == t->curie;
    }
  }
  return {{"id", id}, {"term", curie}, {"provided", provided}};
}

Json Store::input_of(const std::string &id) const {
  const auto &d = require(id)->doc;
  return {{"id", id}, {"input", d.input ? to_json(*d.input) : Json(nullptr)}};
}

Json Store::outputs_of(const std::string &id) const {
  const auto &d = require(id)->doc;
  Json outs = Json::array();
  for (const auto &o : d.outputs) outs.push_back(to_json(o));
  return {{"id", id}, {"outputs", outs}};
}

Json Store::cost_of(const std::string &id) const {
  const auto &d = require(id)->doc;
  Json cost = "unspecified";
  if (d.service_meta && d.service_meta->cost_per_run) {
    cost = {{"amount", d.service_meta->cost_per_run->amount}, {"currency", d.service_meta->cost_per_run->currency}};
  }
  return {{"id", id}, {"cost_per_run", cost}};
}

Json Store::auth_of(const std::string &id) const {
  const auto &d = require(id)->doc;
  Json auth = "unspecified";
  if (d.service_meta && d.service_meta->auth_required) auth = *d.service_meta->auth_required;
  return {{"id", id}, {"auth_required", auth}};
}

Json Store::parameters_of(const std::string &id, const std::string &term) const {
  const auto &d = require(id)->doc;
  const auto curie = normalize_term(term);
  const Term *t = load_vocabulary().find(curie);
  for (const auto *stage : {&d.preprocessing, &d.plots, &d.info_analyses, &d.stationary_analyses, &d.models}) {
    for (const auto &op : *stage) {
      if (op.term != curie || !t) continue;
      const auto resolved = resolve_params(op, *t);
      return {{"id", id}, {"term", curie}, {"params", to_json(resolved)}, {"defaulted", defaulted_params(op, resolved)}};
    }
  }
  throw Error(Errc::NotFound, id + " does not use " + curie);
}

Json Store::forecast_of(const std::string &run_id, std::size_t horizon) const {
  const auto bundle = run_bundle(run_id);
  Json out = Json::array();
  for (const auto &f : forecasts(bundle)) {
    if (horizon > f.point.size()) {
      throw Error(Errc::InvalidArgument, "horizon " + std::to_string(horizon) + " exceeds the stored " +
                                             std::to_string(f.point.size()) + " steps");
    }
    out.push_back({{"model", f.model},
                   {"point", std::vector<double>(f.point.begin(), f.point.begin() + static_cast<std::ptrdiff_t>(horizon))}});
  }
  return {{"run_id", run_id}, {"horizon", horizon}, {"forecasts", out}};
}

Json Store::best_model_of(const std::string &run_id, const std::string &metric) const {
  const auto curie = normalize_term(metric);
  const auto best = best_model(run_bundle(run_id), curie);
  return {{"run_id", run_id}, {"metric", curie}, {"model", best.model}, {"value", best.value}};
}

Json Store::query(std::string_view cq, const std::map<std::string, std::string> &args) const {
  std::string s(cq);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s.rfind("cq", 0) == 0) s = s.substr(2);
  int n = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) n = 0;
  switch (n) {
  case 1: return operations_count(arg(args, "id"));
  case 2: return services_with_ts_functions();
  case 3: return provides_algorithm(arg(args, "id"), arg(args, "term"));
  case 4: return input_of(arg(args, "id"));
  case 5: return outputs_of(arg(args, "id"));
  case 6: return cost_of(arg(args, "id"));
  case 7: return auth_of(arg(args, "id"));
  case 8: return parameters_of(arg(args, "id"), arg(args, "term"));
  case 9: return forecast_of(arg(args, "run"), parse_size(arg(args, "horizon"), "horizon"));
  case 10: return best_model_of(arg(args, "run"), arg(args, "metric"));
  default: throw Error(Errc::NotFound, "no competency question '" + std::string(cq) + "'");
  }
}

} // namespace tsflow
