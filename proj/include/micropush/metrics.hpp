#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "micropush/closed_loop.hpp"
#include "micropush/geometry.hpp"

namespace micropush {

enum class TrajectoryRole { Desired, ActualRaw, ActualResampled };

struct Trajectory {
  std::vector<Position2> nodes;
  TrajectoryRole role = TrajectoryRole::Desired;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
};

/// For each desired node, the nearest raw node (earliest on ties).
Trajectory resample_closest(const Trajectory& raw, const Trajectory& desired);

/// Mean Euclidean distance between corresponding nodes.
double mean_abs_error(const Trajectory& resampled, const Trajectory& desired);

/// Push-phase duration: Done time minus entry into the first push segment
/// (or minus the log start with `include_approach`). Zero when the run was
/// done without ever pushing. Throws NotCompleted for unfinished logs.
double completion_time(const TrialLog& log, bool include_approach = false);

/// Number of Push -> spin transitions.
std::size_t chatter_count(const TrialLog& log);

/// Object positions as the tracker reported them, one per frame.
Trajectory object_track(const TrialLog& log);

/// Settings a trial ran under, carried alongside its results.
struct TrialConfigSnapshot {
  double corridor_width_um = 0.0;
  double freq_hz = 0.0;
  double spin_freq_hz = 0.0;
  double arrival_threshold_um = 0.0;
  double approach_distance_um = 0.0;
  double noise_std_um = 0.0;
  std::uint64_t seed = 0;
  int trial = 0;
};

struct TrialResult {
  bool completed = false;
  double mae = 0.0;
  /// Meaningful only when completed.
  double completion_s = 0.0;
  std::size_t chatter_count = 0;
  Trajectory resampled;
  Trajectory raw;
  TrialConfigSnapshot config;
};

/// Scores a log against its desired path. Incomplete logs still get an MAE
/// over whatever was recorded.
TrialResult evaluate_trial(const TrialLog& log, const Trajectory& desired, const TrialConfigSnapshot& config,
                           bool include_approach = false);

/// Running closest-point error for live displays: keeps the best distance
/// seen so far for every desired node.
class RunningClosestError {
 public:
  explicit RunningClosestError(std::vector<Position2> desired);
  void add(const Position2& p);
  /// MAE over the first `count` desired nodes; 0 when count is 0 or no
  /// sample has been added.
  double mae_prefix(std::size_t count) const;
  std::size_t samples() const { return samples_; }

 private:
  std::vector<Position2> desired_;
  std::vector<double> best_;
  std::size_t samples_ = 0;
};

}  // namespace micropush
