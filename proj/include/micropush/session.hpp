#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "micropush/closed_loop.hpp"
#include "micropush/metrics.hpp"

namespace micropush {

enum class SessionMode { Idle, Auto, Manual };

std::string_view to_string(SessionMode m);

struct SetPathCmd {
  std::vector<Position2> nodes;
};
struct StartAutoCmd {};
struct ManualCmd {
  double heading = 0.0;
  double freq_hz = 0.0;
  SpinDirection spin = SpinDirection::None;
};
struct PauseCmd {};
/// Controller fields apply at the next set_path; plant fields immediately.
struct ConfigCmd {
  std::optional<double> corridor_width;
  std::optional<double> freq_hz;  // push and spin together
  std::optional<double> spin_freq_hz;
  std::optional<double> arrival_threshold;
  std::optional<double> approach_distance;
  nlohmann::json plant = nlohmann::json::object();
};

using SessionCommand = std::variant<SetPathCmd, StartAutoCmd, ManualCmd, PauseCmd, ConfigCmd>;

/// A rejected client message. `code` is a stable machine-readable token.
class ProtocolError : public Error {
 public:
  ProtocolError(std::string code, const std::string& message) : Error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Parses one client JSON message into a command. Throws ProtocolError.
SessionCommand parse_client_message(const nlohmann::json& msg);

nlohmann::json error_message(const std::string& code, const std::string& message);

struct TickOutput {
  nlohmann::json frame;
  /// Commands rejected at this frame boundary, tagged with their origin.
  std::vector<std::pair<std::uint64_t, nlohmann::json>> errors;
};

/// One live simulation. Commands are queued and applied only at the start of
/// the next tick, so a frame never sees a half-applied command. Not
/// thread-safe: the owner ticks and enqueues from one context.
class Session {
 public:
  Session(std::string id, PlantConfig plant, WorldState world, std::uint64_t seed = 1);

  const std::string& id() const { return id_; }
  SessionMode mode() const { return mode_; }
  const WorldState& world() const { return world_; }
  std::uint64_t frame_seq() const { return seq_; }
  bool has_controller() const { return controller_.has_value(); }
  const PushController* controller() const { return controller_ ? &*controller_ : nullptr; }

  /// `origin` identifies the sender so errors can be routed back.
  void enqueue(SessionCommand cmd, std::uint64_t origin = 0);

  /// Applies queued commands, advances one frame unless idle, and returns the
  /// frame message. The sequence number increments on every tick.
  TickOutput tick();

  /// Result of the last automatic run once it reached Done.
  std::optional<TrialResult> result() const;

  nlohmann::json latest_frame() const { return last_frame_; }

 private:
  void apply(const SessionCommand& cmd);
  void reset_run();
  nlohmann::json make_frame() const;

  std::string id_;
  PlantConfig plant_;
  WorldState world_;
  std::uint64_t seed_;
  Observer observer_;
  ControllerConfig ctrl_defaults_;
  std::optional<PushController> controller_;
  SessionMode mode_ = SessionMode::Idle;
  ActuationState command_{};
  std::uint64_t seq_ = 0;
  std::deque<std::pair<SessionCommand, std::uint64_t>> queue_;

  TrialLog run_log_;
  std::optional<RunningClosestError> live_error_;
  double run_started_at_ = 0.0;
  bool run_started_ = false;
  nlohmann::json last_frame_;
};

}  // namespace micropush
