#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>

#include "fusalens/graph.hpp"
#include "fusalens/store.hpp"

namespace fusalens {

struct ServerConfig {
  /// 0 binds an ephemeral port.
  int port = 8080;
  std::filesystem::path data_dir = "fusalens-data";
  /// error, warn, info or debug.
  std::string log_level = "info";
  bool seed_demo = false;
  std::string host = "0.0.0.0";

  /// Throws InvalidArgument for an out-of-range port or unknown log level.
  void validate() const;
};

/// CSV with header `type,asil,name,id`, one row per id in the given order.
/// Throws NotFoundError listing every unknown id.
std::string export_selection_csv(const GraphSnapshot& snapshot,
                                 std::span<const std::string> node_ids);

/// Commits the bundled demo projects that are not in the store yet. Returns
/// the number committed.
std::size_t seed_demo_projects(ProjectStore& store);

/// HTTP front end over a ProjectStore. Routes live under /api.
class ApiServer {
 public:
  /// Opens (or creates) the data directory and seeds demo projects when
  /// asked. Throws on an invalid config or an unusable data directory.
  explicit ApiServer(ServerConfig config);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds the listening socket and returns the bound port. Throws
  /// Error(Io) on failure.
  int bind();
  /// Serves until stop(); bind() must have succeeded.
  void listen();
  /// Stops accepting connections; requests in flight complete first.
  void stop();
  bool running() const;

  ProjectStore& store();
  const ServerConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fusalens
