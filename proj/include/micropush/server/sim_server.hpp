#pragma once

#include <cstddef>
#include <memory>
#include <string>

namespace micropush::server {

struct ServerOptions {
  std::string address = "127.0.0.1";
  /// 0 picks a free port.
  unsigned short port = 8080;
  /// Wall-clock frame rate of every session; sim time per frame is the
  /// plant's dt regardless.
  double tick_hz = 24.0;
  std::size_t max_sessions = 64;
  /// Frames queued per subscriber before further frames are dropped.
  std::size_t subscriber_queue_limit = 16;
};

/// HTTP + WebSocket front end for live sessions.
///
///   POST   /sessions                 create; body {"plant":{..},"world":{..},"seed":n}
///   GET    /sessions                 list ids
///   GET    /sessions/{id}            latest frame
///   GET    /sessions/{id}/result     trial result once the auto run is done
///   DELETE /sessions/{id}
///   GET    /sessions/{id}/ws         WebSocket: client ops in, frames out
class SimServer {
 public:
  explicit SimServer(ServerOptions opts = {});
  ~SimServer();
  SimServer(const SimServer&) = delete;
  SimServer& operator=(const SimServer&) = delete;

  /// Binds and serves on a background thread; returns the bound port.
  unsigned short start();
  /// Binds and serves on the calling thread until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace micropush::server
