#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "micropush/field.hpp"
#include "micropush/geometry.hpp"

namespace micropush {

struct WorldState;

/// Parameters of the pushing loop. Lengths in µm, frequencies in Hz.
struct ControllerConfig {
  double corridor_width = 5.0;
  double approach_distance = 15.0;
  /// Gates both approach arrival (e_A) and goal arrival (e_G).
  double arrival_threshold = 8.0;
  double push_freq_hz = 9.0;
  double spin_freq_hz = 9.0;
  std::vector<Position2> waypoints;

  /// Throws InvalidConfig on any violated invariant.
  void validate() const;
};

enum class Mode { Approach, Push, SpinCW, SpinCCW, Done };

std::string_view to_string(Mode m);

struct ModeTransition {
  double time = 0.0;
  Mode mode = Mode::Approach;
};

struct ControllerState {
  Mode mode = Mode::Approach;
  std::size_t waypoint_index = 0;
  Position2 approach_target;
  std::optional<CorridorGeom> corridor;
  std::vector<ModeTransition> transitions;
  /// Last issued command; re-issued when the heading is undefined.
  ActuationState last_command{};
  /// Set for the step where M coincided with the active target.
  bool degenerate_warning = false;
  /// Every waypoint was already within threshold of the object at init.
  bool satisfied_at_init = false;
};

enum class SpinDirection { None, CW, CCW };

/// Rolling command that drives the robot along screen heading `heading`.
ActuationState roll_command(double heading, double freq_hz);
/// In-place spin; `held_alpha` keeps the azimuth of the previous roll.
ActuationState spin_command(SpinDirection dir, double freq_hz, double held_alpha);

/// The pushing state machine: approach, then push with corridor-triggered
/// spin readjustment, chaining through the waypoint list.
class PushController {
 public:
  PushController(ControllerConfig cfg, const WorldState& obs);

  /// One observation in, one command out. Must not be called once done.
  ActuationState step(const WorldState& obs);

  bool is_done() const { return state_.mode == Mode::Done; }
  const ControllerState& state() const { return state_; }
  const ControllerConfig& config() const { return cfg_; }
  const Position2& current_goal() const;

 private:
  ControllerConfig cfg_;
  ControllerState state_;
};

// Free-function form mirroring the state-transducer view of the controller.
ControllerState init(const ControllerConfig& cfg, const WorldState& obs);
std::pair<ControllerState, ActuationState> step(const ControllerState& st, const ControllerConfig& cfg,
                                                const WorldState& obs);
bool is_done(const ControllerState& st);

}  // namespace micropush
