#include "micropush/controller.hpp"

#include <string>

#include "micropush/errors.hpp"
#include "micropush/plant.hpp"

namespace micropush {

namespace {

void enter(ControllerState& st, Mode m, double t) {
  if (st.transitions.empty() || st.mode != m) st.transitions.push_back({t, m});
  st.mode = m;
}

ActuationState stop_command(const ControllerState& st) {
  return {st.last_command.alpha, kGammaRoll, 0.0};
}

// Rebuilds the corridor from the robot toward the active goal. Keeps the old
// corridor and flags a warning when the robot sits on the goal.
void rebuild_corridor(ControllerState& st, const ControllerConfig& cfg, const Position2& robot) {
  try {
    st.corridor = build_corridor(robot, cfg.waypoints[st.waypoint_index], cfg.corridor_width);
  } catch (const DegenerateGeometry&) {
    st.degenerate_warning = true;
  }
}

ActuationState step_in_place(ControllerState& st, const ControllerConfig& cfg, const WorldState& obs) {
  if (st.mode == Mode::Done) throw InvalidConfig("step called on a finished controller");
  st.degenerate_warning = false;
  const Position2& robot = obs.robot;
  const Position2& object = obs.object;

  if (st.mode == Mode::Approach) {
    if (st.satisfied_at_init) {
      enter(st, Mode::Done, obs.time);
      return st.last_command = stop_command(st);
    }
    if (distance(robot, st.approach_target) >= cfg.arrival_threshold) {
      return st.last_command = roll_command(heading_to(robot, st.approach_target), cfg.push_freq_hz);
    }
    rebuild_corridor(st, cfg, robot);
  }

  while (distance(object, cfg.waypoints[st.waypoint_index]) < cfg.arrival_threshold) {
    if (st.waypoint_index + 1 == cfg.waypoints.size()) {
      enter(st, Mode::Done, obs.time);
      return st.last_command = stop_command(st);
    }
    ++st.waypoint_index;
    rebuild_corridor(st, cfg, robot);
  }

  if (!st.corridor) {
    // Only reachable when the corridor could never be built (robot on goal).
    st.degenerate_warning = true;
    return st.last_command;
  }

  switch (classify_object(*st.corridor, object)) {
    case SideClass::OutsideLeft:
      enter(st, Mode::SpinCW, obs.time);
      return st.last_command = spin_command(SpinDirection::CW, cfg.spin_freq_hz, st.last_command.alpha);
    case SideClass::OutsideRight:
      enter(st, Mode::SpinCCW, obs.time);
      return st.last_command = spin_command(SpinDirection::CCW, cfg.spin_freq_hz, st.last_command.alpha);
    case SideClass::Inside:
      break;
  }
  enter(st, Mode::Push, obs.time);
  const Position2& goal = cfg.waypoints[st.waypoint_index];
  if (robot == goal) {
    st.degenerate_warning = true;
    return st.last_command;
  }
  return st.last_command = roll_command(heading_to(robot, goal), cfg.push_freq_hz);
}

}  // namespace

void ControllerConfig::validate() const {
  if (!(corridor_width > 0.0)) throw InvalidConfig("corridor width must be > 0");
  if (!(approach_distance >= 0.0)) throw InvalidConfig("approach distance must be >= 0");
  if (!(arrival_threshold > 0.0)) throw InvalidConfig("arrival threshold must be > 0");
  if (!(push_freq_hz > 0.0) || !(spin_freq_hz > 0.0)) throw InvalidConfig("frequencies must be > 0");
  if (waypoints.empty()) throw InvalidConfig("waypoint list is empty");
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Approach: return "approach";
    case Mode::Push: return "push";
    case Mode::SpinCW: return "spin_cw";
    case Mode::SpinCCW: return "spin_ccw";
    case Mode::Done: return "done";
  }
  return "?";
}

ActuationState roll_command(double heading, double freq_hz) {
  return {wrap_angle(heading + kPi / 2.0), kGammaRoll, freq_hz};
}

ActuationState spin_command(SpinDirection dir, double freq_hz, double held_alpha) {
  switch (dir) {
    case SpinDirection::CW: return {held_alpha, kGammaSpinCw, freq_hz};
    case SpinDirection::CCW: return {held_alpha, kGammaSpinCcw, freq_hz};
    case SpinDirection::None: break;
  }
  return {held_alpha, kGammaRoll, 0.0};
}

ControllerState init(const ControllerConfig& cfg, const WorldState& obs) {
  cfg.validate();
  ControllerState st;
  st.last_command = {0.0, kGammaRoll, 0.0};
  // Waypoints the object already sits on count as reached.
  std::size_t first = 0;
  while (first < cfg.waypoints.size() && distance(obs.object, cfg.waypoints[first]) < cfg.arrival_threshold) {
    ++first;
  }
  if (first == cfg.waypoints.size()) {
    st.waypoint_index = cfg.waypoints.size() - 1;
    st.satisfied_at_init = true;
    st.approach_target = obs.robot;
  } else {
    st.waypoint_index = first;
    st.approach_target = approach_point(obs.object, cfg.waypoints[first], cfg.approach_distance);
  }
  enter(st, Mode::Approach, obs.time);
  return st;
}

std::pair<ControllerState, ActuationState> step(const ControllerState& st, const ControllerConfig& cfg,
                                                const WorldState& obs) {
  ControllerState next = st;
  ActuationState cmd = step_in_place(next, cfg, obs);
  return {std::move(next), cmd};
}

bool is_done(const ControllerState& st) { return st.mode == Mode::Done; }

PushController::PushController(ControllerConfig cfg, const WorldState& obs)
    : cfg_(std::move(cfg)), state_(init(cfg_, obs)) {}

ActuationState PushController::step(const WorldState& obs) { return step_in_place(state_, cfg_, obs); }

const Position2& PushController::current_goal() const {
  return cfg_.waypoints[state_.waypoint_index];
}

}  // namespace micropush
