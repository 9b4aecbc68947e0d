#pragma once

#include "tsflow/document.hpp"
#include "tsflow/engine.hpp"
#include "tsflow/results.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace tsflow {

struct EntryInfo {
  std::string id;
  std::string name;
  std::string imported_at;
  std::vector<std::string> runs;
};

struct ImportResult {
  std::optional<std::string> id; // set when the document is (or already was) stored
  ValidationReport report;
  bool created = false;
};

// Parse + validate, folding reader failures into the report.
ValidationReport check_document(std::string_view text, std::optional<WorkflowDoc> *doc_out = nullptr);

// Directory-per-entry workflow catalog:
//   <root>/entries/<key>/raw.jsonld    original text, byte for byte
//   <root>/entries/<key>/meta.json     id, import time, run list
//   <root>/entries/<key>/runs/run_<id>/bundle.json (+ plots/)
// New entries are staged under <root>/tmp and renamed into place.
class Store {
public:
  explicit Store(std::filesystem::path root);

  const std::filesystem::path &root() const noexcept { return root_; }

  // Throws Conflict when `id` exists with different content and !force.
  ImportResult import_document(std::string_view text, bool force = false);

  // Sorted by import time, then IRI.
  std::vector<EntryInfo> list() const;
  std::optional<EntryInfo> info(const std::string &id) const;
  std::string raw(const std::string &id) const;
  WorkflowDoc document(const std::string &id) const;

  // Executes the entry and records the run. Input failures throw InputError
  // and record nothing.
  std::string run_workflow(const std::string &id, std::size_t horizon,
                           const std::filesystem::path &data_root);
  std::string run_bundle_text(const std::string &run_id) const;
  Json run_bundle(const std::string &run_id) const;

  // Competency questions.
  Json operations_count(const std::string &id) const;                          // CQ01
  Json services_with_ts_functions() const;                                     // CQ02
  Json provides_algorithm(const std::string &id, const std::string &term) const; // CQ03
  Json input_of(const std::string &id) const;                                  // CQ04
  Json outputs_of(const std::string &id) const;                                // CQ05
  Json cost_of(const std::string &id) const;                                   // CQ06
  Json auth_of(const std::string &id) const;                                   // CQ07
  Json parameters_of(const std::string &id, const std::string &term) const;    // CQ08
  Json forecast_of(const std::string &run_id, std::size_t horizon) const;      // CQ09
  Json best_model_of(const std::string &run_id, const std::string &metric) const; // CQ10

  // Dispatches "01".."10" (or "cq01".."cq10") with string arguments
  // ("id", "term", "run", "horizon", "metric").
  Json query(std::string_view cq, const std::map<std::string, std::string> &args) const;

private:
  struct Entry {
    std::string key;
    std::string imported_at;
    std::string raw;
    WorkflowDoc doc;
    std::vector<std::string> runs;
  };

  void load();
  std::shared_ptr<const Entry> find(const std::string &id) const;
  std::shared_ptr<const Entry> require(const std::string &id) const;
  std::mutex &entry_mutex(const std::string &id);
  std::string key_for(const std::string &id) const;
  void write_meta(const std::filesystem::path &dir, const Entry &e) const;

  std::filesystem::path root_;
  mutable std::shared_mutex index_mu_;
  std::map<std::string, std::shared_ptr<const Entry>> index_; // IRI -> entry
  std::map<std::string, std::string> run_owner_;              // run id -> IRI
  std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> entry_locks_;
};

// Normalizes "ARIMA", "tswf:ARIMA" or the full IRI to the curie.
std::string normalize_term(const std::string &name);

} // namespace tsflow
