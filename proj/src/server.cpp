#include "tsflow/server.hpp"

#include "tsflow/error.hpp"

#include <httplib.h>

#include <charconv>

namespace tsflow {

namespace {

constexpr const char *kJson = "application/json";

int status_for(Errc code) {
  switch (code) {
  case Errc::NotFound: return 404;
  case Errc::Conflict: return 409;
  case Errc::InputError: return 422;
  case Errc::InvalidArgument:
  case Errc::NoSuchMetric: return 400;
  default: return 500;
  }
}

void send(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void send_error(httplib::Response &res, Errc code, const std::string &message) {
  send(res, status_for(code), {{"error", std::string(to_string(code))}, {"message", message}});
}

Json entry_json(const EntryInfo &e) {
  return {{"id", e.id}, {"name", e.name}, {"imported_at", e.imported_at}, {"runs", e.runs}};
}

// Every handler goes through this so library errors map to status codes.
template <typename F> httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request &req, httplib::Response &res) {
    try {
      f(req, res);
    } catch (const Error &e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception &e) {
      send(res, 500, {{"error", "InternalError"}, {"message", e.what()}});
    }
  };
}

} // namespace

struct CatalogServer::Impl {
  Store &store;
  ServeOptions opts;
  httplib::Server http;
  int port = -1;

  Impl(Store &s, ServeOptions o) : store(s), opts(std::move(o)) { routes(); }

  void routes() {
    http.Get("/health", [](const httplib::Request &, httplib::Response &res) { send(res, 200, {{"status", "ok"}}); });

    http.Post("/workflows", guarded([this](const httplib::Request &req, httplib::Response &res) {
      const bool force = req.has_param("force") && req.get_param_value("force") != "0";
      const auto result = store.import_document(req.body, force);
      if (!result.id) {
        send(res, 422, {{"report", to_json(result.report)}});
        return;
      }
      send(res, result.created ? 201 : 200, {{"id", *result.id}, {"report", to_json(result.report)}});
    }));

    http.Get("/workflows", guarded([this](const httplib::Request &, httplib::Response &res) {
      Json entries = Json::array();
      for (const auto &e : store.list()) entries.push_back(entry_json(e));
      send(res, 200, {{"workflows", entries}});
    }));

    // More specific patterns first: IRIs contain '/', so (.+) would swallow the suffix.
    http.Get(R"(/workflows/(.+)/raw)", guarded([this](const httplib::Request &req, httplib::Response &res) {
      res.status = 200;
      res.set_content(store.raw(req.matches[1]), "application/ld+json");
    }));

    http.Post(R"(/workflows/(.+)/runs)", guarded([this](const httplib::Request &req, httplib::Response &res) {
      std::size_t horizon = 10;
      if (req.has_param("horizon")) {
        const auto s = req.get_param_value("horizon");
        const auto r = std::from_chars(s.data(), s.data() + s.size(), horizon);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || horizon == 0) {
          throw Error(Errc::InvalidArgument, "horizon must be a positive integer");
        }
      }
      const auto run_id = store.run_workflow(req.matches[1], horizon, opts.data_root);
      send(res, 202, {{"run_id", run_id}});
    }));

    http.Get(R"(/workflows/(.+))", guarded([this](const httplib::Request &req, httplib::Response &res) {
      const std::string id = req.matches[1];
      const auto info = store.info(id);
      if (!info) throw Error(Errc::NotFound, "no workflow " + id);
      auto body = entry_json(*info);
      body["document"] = Json::parse(store.raw(id));
      send(res, 200, body);
    }));

    http.Get(R"(/runs/(.+))", guarded([this](const httplib::Request &req, httplib::Response &res) {
      res.status = 200;
      res.set_content(store.run_bundle_text(req.matches[1]), kJson);
    }));

    http.Get(R"(/cq/(\d\d))", guarded([this](const httplib::Request &req, httplib::Response &res) {
      std::map<std::string, std::string> args;
      for (const auto &[k, v] : req.params) args[k] = v;
      send(res, 200, store.query(std::string(req.matches[1]), args));
    }));
  }
};

CatalogServer::CatalogServer(Store &store, ServeOptions opts)
    : impl_(std::make_unique<Impl>(store, std::move(opts))) {}

CatalogServer::~CatalogServer() = default;

int CatalogServer::bind() {
  if (impl_->port >= 0) return impl_->port;
  if (impl_->opts.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(impl_->opts.host);
  } else if (impl_->http.bind_to_port(impl_->opts.host, impl_->opts.port)) {
    impl_->port = impl_->opts.port;
  }
  if (impl_->port <= 0) {
    impl_->port = -1;
    throw Error(Errc::IoError, "cannot bind " + impl_->opts.host + ":" + std::to_string(impl_->opts.port));
  }
  return impl_->port;
}

bool CatalogServer::listen() {
  bind();
  return impl_->http.listen_after_bind();
}

void CatalogServer::stop() { impl_->http.stop(); }

} // namespace tsflow
