#include "micropush/server/sim_server.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <iostream>
#include <map>
#include <random>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "micropush/report_io.hpp"
#include "micropush/session.hpp"

namespace micropush::server {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

class WsConnection;

struct SessionHost {
  SessionHost(Session s, asio::io_context& ioc) : session(std::move(s)), timer(ioc) {}

  Session session;
  asio::steady_timer timer;
  std::vector<std::weak_ptr<WsConnection>> subscribers;
  bool closed = false;
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, std::shared_ptr<SessionHost> host, std::uint64_t id, std::size_t queue_limit)
      : ws_(std::move(socket)), host_(std::move(host)), id_(id), queue_limit_(queue_limit) {}

  void accept(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      if (auto host = self->host_.lock(); host && !host->closed) {
        host->subscribers.push_back(self);
        self->send(host->session.latest_frame().dump(), true);
      }
      self->read();
    });
  }

  std::uint64_t id() const { return id_; }

  /// Droppable messages (frames) are discarded while the queue is full.
  void send(std::string text, bool droppable) {
    if (closing_) return;
    if (droppable && outbox_.size() >= queue_limit_) {
      ++dropped_;
      return;
    }
    outbox_.push_back(std::move(text));
    if (outbox_.size() == 1) write_next();
  }

  /// Drops the connection outright. The io_context may stop right after, so
  /// there is no waiting on a close handshake that would never finish.
  void close() {
    if (closing_) return;
    closing_ = true;
    beast::error_code ec;
    auto& sock = beast::get_lowest_layer(ws_).socket();
    sock.shutdown(tcp::socket::shutdown_both, ec);
    sock.close(ec);
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->on_message(beast::buffers_to_string(self->buffer_.data()));
      self->buffer_.consume(self->buffer_.size());
      self->read();
    });
  }

  void on_message(const std::string& text) {
    auto host = host_.lock();
    if (!host || host->closed) {
      send(error_message("unknown_session", "session no longer exists").dump(), false);
      return;
    }
    try {
      host->session.enqueue(parse_client_message(json::parse(text)), id_);
    } catch (const json::exception& e) {
      send(error_message("bad_json", e.what()).dump(), false);
    } catch (const ProtocolError& e) {
      send(error_message(e.code(), e.what()).dump(), false);
    }
  }

  void write_next() {
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->outbox_.clear();
        return;
      }
      self->outbox_.pop_front();
      if (!self->outbox_.empty()) self->write_next();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::weak_ptr<SessionHost> host_;
  std::uint64_t id_;
  std::size_t queue_limit_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  std::size_t dropped_ = 0;
  bool closing_ = false;
};

}  // namespace

struct SimServer::Impl {
  explicit Impl(ServerOptions o) : opts(std::move(o)), acceptor(ioc), id_rng(std::random_device{}()) {}

  ServerOptions opts;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  std::thread thread;
  std::map<std::string, std::shared_ptr<SessionHost>> sessions;
  std::mt19937_64 id_rng;
  std::uint64_t next_conn_id = 1;
  std::atomic<bool> running{false};

  unsigned short bind() {
    if (!(opts.tick_hz > 0.0)) throw InvalidConfig("tick rate must be positive");
    const tcp::endpoint ep{asio::ip::make_address(opts.address), opts.port};
    acceptor.open(ep.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(ep);
    acceptor.listen();
    running = true;
    do_accept();
    return acceptor.local_endpoint().port();
  }

  void shutdown() {
    beast::error_code ec;
    acceptor.close(ec);
    for (auto& [id, host] : sessions) close_host(*host);
    sessions.clear();
  }

  void do_accept() {
    acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      serve_http(std::make_shared<beast::tcp_stream>(std::move(socket)));
      do_accept();
    });
  }

  std::string new_session_id() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng()));
    return buf;
  }

  void schedule_tick(const std::shared_ptr<SessionHost>& host) {
    const auto period = std::chrono::duration_cast<asio::steady_timer::duration>(
        std::chrono::duration<double>(1.0 / opts.tick_hz));
    host->timer.expires_at(host->timer.expiry() + period);
    host->timer.async_wait([this, weak = std::weak_ptr<SessionHost>(host)](beast::error_code ec) {
      auto h = weak.lock();
      if (ec || !h || h->closed) return;
      tick(h);
      schedule_tick(h);
    });
  }

  void tick(const std::shared_ptr<SessionHost>& host) {
    TickOutput out = host->session.tick();
    const std::string frame = out.frame.dump();
    auto& subs = host->subscribers;
    std::erase_if(subs, [](const std::weak_ptr<WsConnection>& w) { return w.expired(); });
    for (const auto& weak : subs) {
      auto conn = weak.lock();
      for (const auto& [origin, err] : out.errors) {
        if (origin == conn->id()) conn->send(err.dump(), false);
      }
      conn->send(frame, true);
    }
  }

  static void close_host(SessionHost& host) {
    host.closed = true;
    host.timer.cancel();
    for (const auto& weak : host.subscribers) {
      if (auto c = weak.lock()) c->close();
    }
    host.subscribers.clear();
  }

  static WorldState world_from_json(const json& j) {
    WorldState w;
    w.robot = {150.0, 200.0};
    w.object = {170.0, 200.0};
    if (!j.is_object()) throw InvalidConfig("world must be a JSON object");
    auto point = [](const json& p) {
      if (!p.is_array() || p.size() != 2) throw InvalidConfig("positions must be [x, y]");
      return Position2{p.at(0).get<double>(), p.at(1).get<double>()};
    };
    if (j.contains("robot")) w.robot = point(j.at("robot"));
    if (j.contains("object")) w.object = point(j.at("object"));
    w.robot_radius = j.value("robot_radius", w.robot_radius);
    w.object_radius = j.value("object_radius", w.object_radius);
    w.validate();
    return w;
  }

  using Request = http::request<http::string_body>;
  using Response = http::response<http::string_body>;

  static Response reply(const Request& req, http::status status, const json& body) {
    Response res{status, req.version()};
    res.set(http::field::content_type, "application/json");
    res.set(http::field::access_control_allow_origin, "*");
    res.keep_alive(req.keep_alive());
    res.body() = body.dump();
    res.prepare_payload();
    return res;
  }

  static std::string_view target_of(const Request& req) { return {req.target().data(), req.target().size()}; }

  static std::vector<std::string> split_target(std::string_view target) {
    if (const auto q = target.find('?'); q != std::string_view::npos) target = target.substr(0, q);
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < target.size()) {
      const std::size_t j = target.find('/', i);
      const std::size_t end = j == std::string_view::npos ? target.size() : j;
      if (end > i) parts.emplace_back(target.substr(i, end - i));
      i = end + 1;
    }
    return parts;
  }

  Response handle(const Request& req) {
    const auto parts = split_target(target_of(req));
    if (parts.empty() || parts[0] != "sessions") {
      return reply(req, http::status::not_found, error_message("not_found", "unknown route"));
    }
    if (parts.size() == 1) {
      if (req.method() == http::verb::get) {
        json ids = json::array();
        for (const auto& [id, host] : sessions) ids.push_back(id);
        return reply(req, http::status::ok, json{{"sessions", ids}});
      }
      if (req.method() == http::verb::post) return create_session(req);
      return reply(req, http::status::method_not_allowed, error_message("bad_method", "use GET or POST"));
    }
    const auto it = sessions.find(parts[1]);
    if (it == sessions.end()) {
      return reply(req, http::status::not_found, error_message("unknown_session", "no session '" + parts[1] + "'"));
    }
    const auto& host = it->second;
    if (parts.size() == 2 && req.method() == http::verb::get) {
      return reply(req, http::status::ok, host->session.latest_frame());
    }
    if (parts.size() == 2 && req.method() == http::verb::delete_) {
      close_host(*host);
      sessions.erase(it);
      return reply(req, http::status::ok, json{{"deleted", parts[1]}});
    }
    if (parts.size() == 3 && parts[2] == "result" && req.method() == http::verb::get) {
      if (auto r = host->session.result()) return reply(req, http::status::ok, to_json(*r));
      return reply(req, http::status::conflict, error_message("not_completed", "automatic run has not finished"));
    }
    return reply(req, http::status::not_found, error_message("not_found", "unknown route"));
  }

  Response create_session(const Request& req) {
    if (sessions.size() >= opts.max_sessions) {
      return reply(req, http::status::service_unavailable, error_message("capacity", "session limit reached"));
    }
    try {
      const json body = req.body().empty() ? json::object() : json::parse(req.body());
      if (!body.is_object()) throw InvalidConfig("body must be a JSON object");
      const PlantConfig plant = plant_from_json(body.value("plant", json::object()));
      const WorldState world = world_from_json(body.value("world", json::object()));
      const std::uint64_t seed = body.value("seed", std::uint64_t{1});
      std::string id = new_session_id();
      while (sessions.contains(id)) id = new_session_id();
      auto host = std::make_shared<SessionHost>(Session(id, plant, world, seed), ioc);
      sessions.emplace(id, host);
      host->timer.expires_at(std::chrono::steady_clock::now());
      schedule_tick(host);
      return reply(req, http::status::created, json{{"id", id}});
    } catch (const json::exception& e) {
      return reply(req, http::status::bad_request, error_message("bad_json", e.what()));
    } catch (const Error& e) {
      return reply(req, http::status::bad_request, error_message("invalid", e.what()));
    }
  }

  void serve_http(std::shared_ptr<beast::tcp_stream> stream) {
    auto buffer = std::make_shared<beast::flat_buffer>();
    auto req = std::make_shared<Request>();
    stream->expires_after(std::chrono::seconds(30));
    http::async_read(*stream, *buffer, *req, [this, stream, buffer, req](beast::error_code ec, std::size_t) {
      if (ec) return;
      // All session state lives on the io_context thread; hop there first.
      asio::post(ioc, [this, stream, buffer, req] { dispatch(stream, buffer, req); });
    });
  }

  void dispatch(std::shared_ptr<beast::tcp_stream> stream, std::shared_ptr<beast::flat_buffer>,
                std::shared_ptr<Request> req) {
    if (websocket::is_upgrade(*req)) {
      const auto parts = split_target(target_of(*req));
      const auto it = parts.size() == 3 && parts[0] == "sessions" && parts[2] == "ws" ? sessions.find(parts[1])
                                                                                      : sessions.end();
      if (it == sessions.end()) {
        write_response(stream, std::make_shared<Response>(
                                   reply(*req, http::status::not_found, error_message("unknown_session", "no such session"))));
        return;
      }
      stream->expires_never();
      auto conn = std::make_shared<WsConnection>(stream->release_socket(), it->second, next_conn_id++,
                                                 opts.subscriber_queue_limit);
      conn->accept(std::move(*req));
      return;
    }
    write_response(stream, std::make_shared<Response>(handle(*req)));
  }

  void write_response(std::shared_ptr<beast::tcp_stream> stream, std::shared_ptr<Response> res) {
    http::async_write(*stream, *res, [this, stream, res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (res->keep_alive()) {
        serve_http(stream);
      } else {
        beast::error_code ignored;
        stream->socket().shutdown(tcp::socket::shutdown_send, ignored);
      }
    });
  }
};

SimServer::SimServer(ServerOptions opts) : impl_(std::make_unique<Impl>(std::move(opts))) {}

SimServer::~SimServer() { stop(); }

unsigned short SimServer::start() {
  const unsigned short port = impl_->bind();
  impl_->thread = std::thread([this] { impl_->ioc.run(); });
  return port;
}

void SimServer::run() {
  impl_->bind();
  asio::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
  signals.async_wait([this](beast::error_code ec, int) {
    if (ec) return;
    impl_->running = false;
    impl_->shutdown();
    impl_->ioc.stop();
  });
  impl_->ioc.run();
}

void SimServer::stop() {
  if (!impl_ || !impl_->running.exchange(false)) return;
  asio::post(impl_->ioc, [this] {
    impl_->shutdown();
    impl_->ioc.stop();
  });
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace micropush::server
