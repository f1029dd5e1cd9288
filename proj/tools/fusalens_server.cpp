#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "fusalens/api.hpp"
#include "fusalens/error.hpp"

namespace {

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name); v && *v) return std::string(v);
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  fusalens::ServerConfig config;
  if (const auto port = env("FUSALENS_PORT")) {
    try {
      config.port = std::stoi(*port);
    } catch (const std::exception&) {
      std::cerr << "FUSALENS_PORT is not a number: " << *port << "\n";
      return 2;
    }
  }
  if (const auto dir = env("FUSALENS_DATA_DIR")) config.data_dir = *dir;

  CLI::App app{"FuSa workbench API server"};
  std::string data_dir = config.data_dir.string();
  app.add_option("--port", config.port, "TCP port (0 picks a free port)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  app.add_option("--data-dir", data_dir, "Project store directory")
      ->capture_default_str();
  app.add_option("--log-level", config.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
      ->capture_default_str();
  app.add_flag("--seed-demo", config.seed_demo, "Load the bundled demo projects");
  CLI11_PARSE(app, argc, argv);
  config.data_dir = data_dir;

  // Block termination signals in every thread; a dedicated thread waits.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  try {
    fusalens::ApiServer server(config);
    server.bind();
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      spdlog::info("signal {} received, shutting down", sig);
      server.stop();
    });
    server.listen();
    // listen() can also return on a socket error; wake the waiter.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  } catch (const fusalens::Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
