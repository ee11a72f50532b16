#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "micropush/controller.hpp"
#include "micropush/errors.hpp"
#include "micropush/plant.hpp"

namespace micropush {

/// One control cycle as seen by the loop: truth, what the controller was
/// shown, the mode it ended the cycle in and the command it issued.
struct FrameRecord {
  double time = 0.0;
  Position2 robot;
  Position2 object;
  Position2 robot_observed;
  Position2 object_observed;
  Mode mode = Mode::Approach;
  ActuationState command;
  std::size_t waypoint_index = 0;
};

struct TrialLog {
  std::vector<FrameRecord> frames;
  std::vector<ModeTransition> transitions;
  bool completed = false;
};

/// Adds seeded i.i.d. Gaussian offsets to reported positions.
class Observer {
 public:
  Observer(double noise_std, std::uint64_t seed) : noise_std_(noise_std), rng_(seed) {}
  WorldState observe(const WorldState& truth);
  void set_noise_std(double s) { noise_std_ = s; }

 private:
  double noise_std_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

class TimeoutExceeded : public Error {
 public:
  TimeoutExceeded(double timeout_s, TrialLog partial);
  const TrialLog& log() const noexcept { return log_; }

 private:
  TrialLog log_;
};

inline constexpr double kDefaultTimeoutSeconds = 600.0;

/// Observe, step the controller, advance the plant, until done or until
/// simulated time reaches `timeout_s`. Throws TimeoutExceeded carrying the
/// partial log.
TrialLog run_closed_loop(const ControllerConfig& ctrl, const PlantConfig& plant, const WorldState& init,
                         std::uint64_t seed, double timeout_s = kDefaultTimeoutSeconds);

}  // namespace micropush
