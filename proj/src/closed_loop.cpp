#include "micropush/closed_loop.hpp"

#include <string>

namespace micropush {

WorldState Observer::observe(const WorldState& truth) {
  WorldState seen = truth;
  if (noise_std_ > 0.0) {
    seen.robot.x += noise_std_ * unit_(rng_);
    seen.robot.y += noise_std_ * unit_(rng_);
    seen.object.x += noise_std_ * unit_(rng_);
    seen.object.y += noise_std_ * unit_(rng_);
  }
  return seen;
}

TimeoutExceeded::TimeoutExceeded(double timeout_s, TrialLog partial)
    : Error("closed loop did not finish within " + std::to_string(timeout_s) + " s"), log_(std::move(partial)) {}

TrialLog run_closed_loop(const ControllerConfig& ctrl, const PlantConfig& plant, const WorldState& init,
                         std::uint64_t seed, double timeout_s) {
  plant.validate();
  init.validate();
  Observer observer(plant.noise_std, seed);
  TrialLog log;
  WorldState truth = init;
  // Step count, not accumulated time, decides the horizon so float drift
  // cannot add or drop a frame.
  const auto max_steps = static_cast<long long>(std::floor(timeout_s / plant.dt + 1e-9));
  if (max_steps <= 0) throw TimeoutExceeded(timeout_s, std::move(log));

  WorldState seen = observer.observe(truth);
  PushController controller(ctrl, seen);
  for (long long k = 0; k < max_steps; ++k) {
    truth.time = static_cast<double>(k) * plant.dt;
    if (k > 0) seen = observer.observe(truth);
    seen.time = truth.time;
    const ActuationState cmd = controller.step(seen);
    log.frames.push_back({truth.time, truth.robot, truth.object, seen.robot, seen.object, controller.state().mode, cmd,
                          controller.state().waypoint_index});
    if (controller.is_done()) {
      log.completed = true;
      break;
    }
    truth = advance(truth, cmd, plant);
  }
  log.transitions = controller.state().transitions;
  if (!log.completed) throw TimeoutExceeded(timeout_s, std::move(log));
  return log;
}

}  // namespace micropush
