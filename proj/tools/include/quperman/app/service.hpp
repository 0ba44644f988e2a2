#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace quperman::app {

struct ServiceOptions {
  std::filesystem::path storePath;
  std::optional<std::filesystem::path> corpusRoot;
  std::optional<std::filesystem::path> configPath;
  std::optional<std::filesystem::path> staticDir;  ///< served at "/" when set
};

/// Local request/response service over the /api/v1 endpoints.
///
/// The benchmark store is loaded once and guarded by a reader/writer lock;
/// POST /api/v1/benchmark/entries is the only writer and persists every
/// change before releasing the lock.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves until stop(). Returns false if binding failed.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and returns it, or -1.
  int bind_ephemeral(const std::string& host);
  /// Serves on a socket bound by bind_ephemeral(). Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Splits "host:port"; a bare port binds loopback.
std::pair<std::string, int> parse_bind_address(const std::string& bind);

}  // namespace quperman::app
