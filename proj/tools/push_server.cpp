// push-server: live simulation sessions over HTTP and WebSocket.

#include <iostream>

#include <CLI11.hpp>

#include "micropush/server/sim_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Live microrobot pushing sessions"};
  micropush::server::ServerOptions opts;
  app.add_option("--address", opts.address, "Listen address");
  app.add_option("--port", opts.port, "Listen port (0 = any free port)");
  app.add_option("--tick-hz", opts.tick_hz, "Frames per wall-clock second")->check(CLI::PositiveNumber);
  app.add_option("--max-sessions", opts.max_sessions, "Concurrent session limit")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    micropush::server::SimServer server(opts);
    std::cerr << "push-server listening on " << opts.address << ':' << opts.port << '\n';
    server.run();
  } catch (const std::exception& e) {
    std::cerr << "push-server: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
