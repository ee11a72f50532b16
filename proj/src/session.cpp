#include "micropush/session.hpp"

#include <cmath>

#include "micropush/report_io.hpp"

namespace micropush {

using nlohmann::json;

namespace {

double number_field(const json& msg, const char* key) {
  if (!msg.contains(key)) throw ProtocolError("bad_request", std::string("missing field '") + key + "'");
  const json& v = msg.at(key);
  if (!v.is_number()) throw ProtocolError("bad_request", std::string("field '") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ProtocolError("bad_request", std::string("field '") + key + "' must be finite");
  return d;
}

std::optional<double> optional_positive(const json& msg, const char* key) {
  if (!msg.contains(key)) return std::nullopt;
  const double v = number_field(msg, key);
  if (!(v > 0.0)) throw ProtocolError("bad_request", std::string("field '") + key + "' must be > 0");
  return v;
}

}  // namespace

std::string_view to_string(SessionMode m) {
  switch (m) {
    case SessionMode::Idle: return "idle";
    case SessionMode::Auto: return "auto";
    case SessionMode::Manual: return "manual";
  }
  return "?";
}

json error_message(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

SessionCommand parse_client_message(const json& msg) {
  if (!msg.is_object() || !msg.contains("op") || !msg.at("op").is_string()) {
    throw ProtocolError("bad_request", "message must be an object with a string 'op'");
  }
  const std::string op = msg.at("op").get<std::string>();
  if (op == "set_path") {
    if (!msg.contains("nodes") || !msg.at("nodes").is_array()) {
      throw ProtocolError("bad_request", "set_path needs a 'nodes' array");
    }
    SetPathCmd cmd;
    for (const json& n : msg.at("nodes")) {
      if (!n.is_array() || n.size() != 2 || !n[0].is_number() || !n[1].is_number()) {
        throw ProtocolError("bad_request", "each node must be [x, y]");
      }
      cmd.nodes.push_back({n[0].get<double>(), n[1].get<double>()});
    }
    if (cmd.nodes.size() < 2) throw ProtocolError("degenerate_path", "a path needs at least 2 nodes");
    if (polyline_length(cmd.nodes) == 0.0) throw ProtocolError("degenerate_path", "path has zero length");
    return cmd;
  }
  if (op == "start_auto") return StartAutoCmd{};
  if (op == "pause") return PauseCmd{};
  if (op == "manual") {
    ManualCmd cmd;
    cmd.heading = number_field(msg, "heading");
    cmd.freq_hz = number_field(msg, "freq");
    if (cmd.freq_hz < 0.0) throw ProtocolError("bad_request", "freq must be >= 0");
    const std::string spin = msg.value("spin", std::string("none"));
    if (spin == "none") cmd.spin = SpinDirection::None;
    else if (spin == "cw") cmd.spin = SpinDirection::CW;
    else if (spin == "ccw") cmd.spin = SpinDirection::CCW;
    else throw ProtocolError("bad_request", "spin must be none, cw or ccw");
    return cmd;
  }
  if (op == "config") {
    ConfigCmd cmd;
    cmd.corridor_width = optional_positive(msg, "width");
    cmd.freq_hz = optional_positive(msg, "freq");
    cmd.spin_freq_hz = optional_positive(msg, "spin_freq");
    cmd.arrival_threshold = optional_positive(msg, "threshold");
    if (msg.contains("approach_distance")) {
      const double d = number_field(msg, "approach_distance");
      if (d < 0.0) throw ProtocolError("bad_request", "approach_distance must be >= 0");
      cmd.approach_distance = d;
    }
    if (msg.contains("plant")) cmd.plant = msg.at("plant");
    return cmd;
  }
  throw ProtocolError("unknown_op", "unknown op '" + op + "'");
}

Session::Session(std::string id, PlantConfig plant, WorldState world, std::uint64_t seed)
    : id_(std::move(id)), plant_(plant), world_(world), seed_(seed), observer_(plant.noise_std, seed) {
  plant_.validate();
  world_.validate();
  last_frame_ = make_frame();
}

void Session::enqueue(SessionCommand cmd, std::uint64_t origin) { queue_.emplace_back(std::move(cmd), origin); }

void Session::reset_run() {
  run_log_ = {};
  run_started_ = false;
  live_error_.reset();
  if (controller_) live_error_.emplace(controller_->config().waypoints);
}

void Session::apply(const SessionCommand& cmd) {
  if (const auto* c = std::get_if<SetPathCmd>(&cmd)) {
    ControllerConfig cfg = ctrl_defaults_;
    cfg.waypoints = c->nodes;
    controller_.emplace(std::move(cfg), world_);
    reset_run();
  } else if (std::holds_alternative<StartAutoCmd>(cmd)) {
    if (!controller_) throw ProtocolError("no_path", "start_auto needs a path; send set_path first");
    if (controller_->is_done()) throw ProtocolError("run_finished", "run already finished; send a new path");
    if (!run_started_) {
      // The world may have moved (manual driving) since the path arrived.
      controller_.emplace(controller_->config(), world_);
      reset_run();
      run_started_ = true;
      run_started_at_ = world_.time;
    }
    mode_ = SessionMode::Auto;
  } else if (const auto* c = std::get_if<ManualCmd>(&cmd)) {
    command_ = c->spin == SpinDirection::None ? roll_command(c->heading, c->freq_hz)
                                              : spin_command(c->spin, c->freq_hz, command_.alpha);
    mode_ = SessionMode::Manual;
  } else if (std::holds_alternative<PauseCmd>(cmd)) {
    mode_ = SessionMode::Idle;
  } else if (const auto* c = std::get_if<ConfigCmd>(&cmd)) {
    ControllerConfig next = ctrl_defaults_;
    if (c->corridor_width) next.corridor_width = *c->corridor_width;
    if (c->freq_hz) next.push_freq_hz = next.spin_freq_hz = *c->freq_hz;
    if (c->spin_freq_hz) next.spin_freq_hz = *c->spin_freq_hz;
    if (c->arrival_threshold) next.arrival_threshold = *c->arrival_threshold;
    if (c->approach_distance) next.approach_distance = *c->approach_distance;
    PlantConfig plant;
    try {
      plant = plant_from_json(c->plant, plant_);
    } catch (const json::exception& e) {
      throw ProtocolError("bad_request", e.what());
    }
    ctrl_defaults_ = next;
    plant_ = plant;
    observer_.set_noise_std(plant_.noise_std);
  }
}

TickOutput Session::tick() {
  TickOutput out;
  while (!queue_.empty()) {
    auto [cmd, origin] = std::move(queue_.front());
    queue_.pop_front();
    try {
      apply(cmd);
    } catch (const ProtocolError& e) {
      out.errors.emplace_back(origin, error_message(e.code(), e.what()));
    } catch (const Error& e) {
      out.errors.emplace_back(origin, error_message("invalid", e.what()));
    }
  }
  ++seq_;

  if (mode_ == SessionMode::Manual) {
    world_ = advance(world_, command_, plant_);
  } else if (mode_ == SessionMode::Auto && controller_) {
    WorldState seen = observer_.observe(world_);
    seen.time = world_.time;
    command_ = controller_->step(seen);
    run_log_.frames.push_back({world_.time, world_.robot, world_.object, seen.robot, seen.object,
                               controller_->state().mode, command_, controller_->state().waypoint_index});
    if (live_error_) live_error_->add(seen.object);
    if (controller_->is_done()) {
      run_log_.completed = true;
      run_log_.transitions = controller_->state().transitions;
      mode_ = SessionMode::Idle;
    } else {
      world_ = advance(world_, command_, plant_);
    }
  }
  out.frame = make_frame();
  last_frame_ = out.frame;
  return out;
}

json Session::make_frame() const {
  json f = {{"seq", seq_},
            {"t", world_.time},
            {"session_mode", to_string(mode_)},
            {"robot", to_json(world_.robot)},
            {"object", to_json(world_.object)},
            {"command", to_json(command_)},
            {"corridor", nullptr},
            {"waypoint_index", nullptr},
            {"mae", nullptr},
            {"elapsed", 0.0}};
  std::string mode(to_string(mode_));
  if (controller_) {
    const ControllerState& st = controller_->state();
    f["controller_mode"] = to_string(st.mode);
    f["waypoint_index"] = st.waypoint_index;
    f["waypoints"] = controller_->config().waypoints.size();
    f["degenerate_warning"] = st.degenerate_warning;
    if (st.corridor && st.mode != Mode::Approach && st.mode != Mode::Done) f["corridor"] = to_json(*st.corridor);
    if (mode_ == SessionMode::Auto || st.mode == Mode::Done) mode = to_string(st.mode);
    if (live_error_ && live_error_->samples() > 0) {
      const std::size_t reached = st.mode == Mode::Done ? controller_->config().waypoints.size() : st.waypoint_index;
      f["mae"] = live_error_->mae_prefix(reached);
    }
    if (run_started_) f["elapsed"] = world_.time - run_started_at_;
  }
  f["mode"] = mode;
  return {{"frame", f}};
}

std::optional<TrialResult> Session::result() const {
  if (!controller_ || !run_log_.completed) return std::nullopt;
  const ControllerConfig& c = controller_->config();
  const TrialConfigSnapshot snap{c.corridor_width, c.push_freq_hz, c.spin_freq_hz, c.arrival_threshold,
                                 c.approach_distance, plant_.noise_std, seed_, 1};
  return evaluate_trial(run_log_, Trajectory{c.waypoints, TrajectoryRole::Desired}, snap);
}

}  // namespace micropush
