#pragma once

#include "tsflow/catalog.hpp"

#include <filesystem>
#include <memory>
#include <string>

namespace tsflow {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080; // 0 picks a free port
  std::filesystem::path data_root = ".";
};

// HTTP front end for a Store. listen() blocks until stop() is called.
class CatalogServer {
public:
  CatalogServer(Store &store, ServeOptions opts);
  ~CatalogServer();
  CatalogServer(const CatalogServer &) = delete;
  CatalogServer &operator=(const CatalogServer &) = delete;

  // Binds and returns the bound port; throws IoError when the port is taken.
  int bind();
  // Serves on the bound socket (binds first if needed).
  bool listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace tsflow
