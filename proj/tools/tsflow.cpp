// tsflow: validate, run and publish time-series workflow documents.

#include "tsflow/catalog.hpp"
#include "tsflow/error.hpp"
#include "tsflow/results.hpp"
#include "tsflow/server.hpp"
#include "tsflow/vocabulary.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using tsflow::Json;

namespace {

enum Exit { kOk = 0, kFail = 1, kIo = 2, kPartial = 3 };

std::optional<std::string> slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_store() {
  const char *env = std::getenv("TSFLOW_STORE");
  return env && *env ? env : "./tsflow-store";
}

bool has_syntax_error(const tsflow::ValidationReport &r) {
  for (const auto &d : r.diagnostics) {
    if (d.code == "SyntaxError") return true;
  }
  return false;
}

void print_report_human(const tsflow::ValidationReport &r, const std::string &file) {
  for (const auto &d : r.diagnostics) {
    std::cout << file << ": " << (d.severity == tsflow::Severity::Error ? "error" : "warning") << " at "
              << (d.path.empty() ? "/" : d.path) << " [" << d.code << "] " << d.message << "\n";
  }
  std::cout << file << ": " << (r.valid() ? "valid" : "invalid") << " (" << r.error_count() << " errors)\n";
}

// validate ------------------------------------------------------------------

int cmd_validate(const std::string &file, bool human) {
  const auto text = slurp(file);
  if (!text) {
    std::cerr << "tsflow: cannot read " << file << "\n";
    return kIo;
  }
  const auto report = tsflow::check_document(*text);
  if (human) {
    print_report_human(report, file);
  } else {
    std::cout << tsflow::to_json(report).dump(2) << "\n";
  }
  if (has_syntax_error(report)) return kIo;
  return report.valid() ? kOk : kFail;
}

// run -----------------------------------------------------------------------

std::string step_summary(const tsflow::StepResult &s) {
  return std::visit(
      [](const auto &o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        char buf[160];
        if constexpr (std::is_same_v<T, tsflow::TestResult>) {
          std::snprintf(buf, sizeof buf, "statistic %.4g%s", o.statistic, o.reject_at_5pct ? ", rejects at 5%" : "");
          return buf;
        } else if constexpr (std::is_same_v<T, tsflow::ModelFit>) {
          std::snprintf(buf, sizeof buf, "loss %.4g, %zu iterations%s", o.training_loss, o.iterations,
                        o.converged ? "" : ", not converged");
          return buf;
        } else if constexpr (std::is_same_v<T, tsflow::Forecast>) {
          return std::to_string(o.horizon) + " steps";
        } else if constexpr (std::is_same_v<T, tsflow::PlotArtifact>) {
          return o.svg_path;
        } else if constexpr (std::is_same_v<T, tsflow::Skipped>) {
          return "skipped: " + o.reason;
        } else if constexpr (std::is_same_v<T, tsflow::StepError>) {
          return std::string(tsflow::to_string(o.code)) + ": " + o.message;
        } else {
          return "";
        }
      },
      s.outcome);
}

void print_run_summary(const tsflow::RunBundle &b, const fs::path &run_dir) {
  std::printf("run %s  workflow %s\n", b.run_id.c_str(), b.workflow_id.c_str());
  std::printf("series %zu points, train %zu, holdout %zu\n\n", b.series_length, b.train_size, b.holdout);
  std::printf("%-3s %-24s %-20s %-6s %s\n", "#", "stage", "op", "status", "result");
  for (std::size_t i = 0; i < b.steps.size(); ++i) {
    const auto &s = b.steps[i];
    std::printf("%-3zu %-24s %-20s %-6s %s\n", i + 1, std::string(tsflow::to_string(s.stage)).c_str(), s.op.c_str(),
                s.ok() ? "ok" : "error", step_summary(s).c_str());
    for (const auto &w : s.warnings) std::printf("    warning: %s\n", w.c_str());
  }

  for (const auto &s : b.steps) {
    const auto *t = std::get_if<tsflow::MeasureTable>(&s.outcome);
    if (!t || t->rows.empty()) continue;
    std::vector<std::string> measures;
    for (const auto &r : t->rows) {
      for (const auto &m : r.values) {
        if (std::find(measures.begin(), measures.end(), m.measure) == measures.end()) measures.push_back(m.measure);
      }
    }
    std::printf("\n%s (holdout %zu)\n%-14s", t->output_id.c_str(), t->holdout, "model");
    for (const auto &m : measures) std::printf(" %14s", m.c_str());
    std::printf("\n");
    for (const auto &r : t->rows) {
      std::printf("%-14s", r.model.c_str());
      for (const auto &m : measures) {
        const auto it = std::find_if(r.values.begin(), r.values.end(), [&](const auto &v) { return v.measure == m; });
        if (it == r.values.end()) {
          std::printf(" %14s", "-");
        } else {
          std::printf(" %14.6g", it->value);
        }
      }
      std::printf("\n");
    }
    for (const auto &m : measures) {
      try {
        const auto best = tsflow::best_model(b, m);
        std::printf("best by %s: %s (%.6g)\n", m.c_str(), best.model.c_str(), best.value);
      } catch (const tsflow::Error &) {
      }
    }
  }
  for (const auto &w : b.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("\n%zu steps, status %s, bundle %s\n", b.steps.size(), std::string(tsflow::to_string(b.status)).c_str(),
              (run_dir / "bundle.json").string().c_str());
}

int cmd_run(const std::string &file, std::size_t horizon, const std::string &data_root, const std::string &out,
            bool json) {
  const auto text = slurp(file);
  if (!text) {
    std::cerr << "tsflow: cannot read " << file << "\n";
    return kIo;
  }
  std::optional<tsflow::WorkflowDoc> doc;
  const auto report = tsflow::check_document(*text, &doc);
  if (!report.valid() || !doc) {
    if (json) {
      std::cout << tsflow::to_json(report).dump(2) << "\n";
    } else {
      print_report_human(report, file);
    }
    return has_syntax_error(report) ? kIo : kFail;
  }
  try {
    tsflow::ExecuteOptions opts;
    opts.data_root = data_root;
    opts.out_dir = out;
    opts.horizon = horizon;
    const auto bundle = tsflow::execute(*doc, opts);
    if (json) {
      std::cout << tsflow::bundle_text(bundle);
    } else {
      print_run_summary(bundle, fs::path(out) / ("run_" + bundle.run_id));
    }
    switch (bundle.status) {
    case tsflow::RunStatus::Succeeded: return kOk;
    case tsflow::RunStatus::Partial: return kPartial;
    case tsflow::RunStatus::Failed: return kFail;
    }
    return kFail;
  } catch (const tsflow::Error &e) {
    std::cerr << "tsflow: " << tsflow::to_string(e.code()) << ": " << e.what() << "\n";
    return kFail;
  }
}

// serve ---------------------------------------------------------------------

tsflow::CatalogServer *g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string &host, int port, const std::string &store_root, const std::string &data_root) {
  try {
    tsflow::Store store(store_root);
    tsflow::CatalogServer server(store, {host, port, data_root});
    const int bound = server.bind();
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "tsflow: serving " << store_root << " on http://" << host << ":" << bound << std::endl;
    server.listen();
    g_server = nullptr;
    return kOk;
  } catch (const tsflow::Error &e) {
    std::cerr << "tsflow: " << e.what() << "\n";
    return kIo;
  }
}

// import / query ------------------------------------------------------------

struct Remote {
  std::string url = "http://127.0.0.1:8080";
  bool offline = false;
  std::string store = default_store();
};

int exit_for_status(int status) { return status >= 200 && status < 300 ? kOk : kFail; }

void print_body(const std::string &body) {
  try {
    std::cout << Json::parse(body).dump(2) << "\n";
  } catch (const Json::exception &) {
    std::cout << body;
  }
}

int cmd_import(const std::string &file, bool force, const Remote &remote) {
  const auto text = slurp(file);
  if (!text) {
    std::cerr << "tsflow: cannot read " << file << "\n";
    return kIo;
  }
  if (remote.offline) {
    try {
      tsflow::Store store(remote.store);
      const auto r = store.import_document(*text, force);
      Json out = {{"report", tsflow::to_json(r.report)}};
      if (r.id) out["id"] = *r.id;
      std::cout << out.dump(2) << "\n";
      return r.id ? kOk : kFail;
    } catch (const tsflow::Error &e) {
      std::cerr << "tsflow: " << tsflow::to_string(e.code()) << ": " << e.what() << "\n";
      return e.code() == tsflow::Errc::StorageError ? kIo : kFail;
    }
  }
  httplib::Client cli(remote.url);
  cli.set_read_timeout(60, 0);
  const auto res = cli.Post(force ? "/workflows?force=1" : "/workflows", *text, "application/ld+json");
  if (!res) {
    std::cerr << "tsflow: cannot reach " << remote.url << ": " << httplib::to_string(res.error()) << "\n";
    return kIo;
  }
  print_body(res->body);
  return exit_for_status(res->status);
}

int cmd_query(const std::string &cq, const std::map<std::string, std::string> &args, const Remote &remote) {
  std::string num = cq;
  if (num.rfind("cq", 0) == 0 || num.rfind("CQ", 0) == 0) num = num.substr(2);
  if (num.size() == 1) num = "0" + num;
  if (remote.offline) {
    try {
      const tsflow::Store store(remote.store);
      std::cout << store.query(num, args).dump(2) << "\n";
      return kOk;
    } catch (const tsflow::Error &e) {
      std::cerr << "tsflow: " << tsflow::to_string(e.code()) << ": " << e.what() << "\n";
      return e.code() == tsflow::Errc::StorageError || e.code() == tsflow::Errc::IoError ? kIo : kFail;
    }
  }
  httplib::Client cli(remote.url);
  cli.set_read_timeout(60, 0);
  httplib::Params params(args.begin(), args.end());
  const auto res = cli.Get("/cq/" + num, params, httplib::Headers{});
  if (!res) {
    std::cerr << "tsflow: cannot reach " << remote.url << ": " << httplib::to_string(res.error()) << "\n";
    return kIo;
  }
  if (res->status >= 300) {
    std::cerr << res->body;
    return kFail;
  }
  print_body(res->body);
  return kOk;
}

int cmd_vocab(const std::string &out) {
  const auto text = tsflow::vocabulary_json(tsflow::load_vocabulary()).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "tsflow: cannot write " << out << "\n";
    return kIo;
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"tsflow: time-series workflow documents"};
  app.require_subcommand(1);
  int rc = kOk;

  std::string file;
  bool json = false;

  auto *validate = app.add_subcommand("validate", "Parse and lint a workflow document");
  validate->add_option("file", file, "JSON-LD document")->required();
  bool human = false;
  validate->add_flag("--human", human, "Print diagnostics as text instead of JSON");
  validate->callback([&] { rc = cmd_validate(file, human); });

  auto *run = app.add_subcommand("run", "Validate and execute a workflow document");
  std::size_t horizon = 10;
  std::string data_root = ".";
  std::string out = "./out";
  run->add_option("file", file, "JSON-LD document")->required();
  run->add_option("--horizon", horizon, "Forecast horizon")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--data-root", data_root, "Directory input locators are resolved against")->capture_default_str();
  run->add_option("--out", out, "Output directory")->capture_default_str();
  run->add_flag("--json", json, "Print the run bundle instead of the summary");
  run->callback([&] { rc = cmd_run(file, horizon, data_root, out, json); });

  auto *serve = app.add_subcommand("serve", "Serve a catalog over HTTP");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string store = default_store();
  serve->add_option("--port", port, "Listen port (0 picks one)")->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--store", store, "Catalog root (env TSFLOW_STORE)")->capture_default_str();
  serve->add_option("--data-root", data_root, "Directory input locators are resolved against")->capture_default_str();
  serve->callback([&] { rc = cmd_serve(host, port, store, data_root); });

  Remote remote;
  auto add_remote = [&](CLI::App *cmd) {
    cmd->add_option("--url", remote.url, "Catalog service base URL")->capture_default_str();
    cmd->add_flag("--offline", remote.offline, "Use the store directly instead of a running service");
    cmd->add_option("--store", remote.store, "Catalog root for --offline (env TSFLOW_STORE)")->capture_default_str();
  };

  auto *import = app.add_subcommand("import", "Import a document into a catalog");
  bool force = false;
  import->add_option("file", file, "JSON-LD document")->required();
  import->add_flag("--force", force, "Replace an existing entry with different content");
  add_remote(import);
  import->callback([&] { rc = cmd_import(file, force, remote); });

  auto *query = app.add_subcommand("query", "Ask a competency question (cq01..cq10)");
  std::string cq;
  std::map<std::string, std::string> qargs;
  query->add_option("cq", cq, "Question number, e.g. cq08")->required();
  for (const char *name : {"id", "term", "run", "horizon", "metric"}) {
    query->add_option_function<std::string>(std::string("--") + name,
                                            [&qargs, name](const std::string &v) { qargs[name] = v; });
  }
  add_remote(query);
  query->callback([&] { rc = cmd_query(cq, qargs, remote); });

  auto *vocab = app.add_subcommand("vocab", "Dump the term vocabulary as JSON");
  std::string vocab_out;
  vocab->add_option("-o,--out", vocab_out, "Output file (stdout when omitted)");
  vocab->callback([&] { rc = cmd_vocab(vocab_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kIo;
  }
  return rc;
}
