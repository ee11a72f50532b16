#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "micropush/closed_loop.hpp"
#include "micropush/metrics.hpp"
#include "micropush/paths.hpp"

namespace micropush {

/// What to push along and how to place the robot before the run.
struct TrajectorySpec {
  Trajectory path;
  bool closed = true;
  double robot_standoff = 20.0;
};

/// Circle of 100 nodes, 538 µm of chords, centred in a 400 x 400 µm field.
TrajectorySpec default_circle_spec();

struct ExperimentGrid {
  std::vector<double> widths{5.0, 10.0, 15.0};
  std::vector<double> freqs{3.0, 6.0, 9.0, 12.0, 15.0};
  int trials = 4;
  TrajectorySpec trajectory = default_circle_spec();
  std::uint64_t seed_base = 1;
  double arrival_threshold = 8.0;
  double approach_distance = 15.0;
  double timeout_s = kDefaultTimeoutSeconds;
  bool include_approach = false;
  /// Worker threads; results do not depend on it.
  unsigned jobs = 1;

  void validate() const;
};

/// Grid runs use half a micrometre of tracker jitter so trials differ.
PlantConfig default_grid_plant();

/// Seed of one (width, freq, trial) cell, independent of grid order.
std::uint64_t cell_seed(std::uint64_t base, double width, double freq, int trial);

/// Runs one trial and scores it; a timeout yields an incomplete result.
TrialResult run_trial(const TrajectorySpec& traj, double width, double freq, const PlantConfig& plant,
                      std::uint64_t seed, int trial = 1, double arrival_threshold = 8.0,
                      double approach_distance = 15.0, double timeout_s = kDefaultTimeoutSeconds,
                      bool include_approach = false);

struct CellSummary {
  double width = 0.0;
  double freq = 0.0;
  int trials = 0;
  int completed = 0;
  double mae_mean = 0.0;
  double mae_std = 0.0;
  /// Over completed trials only.
  double completion_mean = 0.0;
  double completion_std = 0.0;
  double chatter_mean = 0.0;
};

struct TrendAssertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GridReport {
  std::vector<TrialResult> trials;  // sorted by (width, freq, trial)
  std::vector<CellSummary> cells;   // sorted by (width, freq)
  std::vector<TrendAssertion> assertions;

  bool all_assertions_pass() const;
};

GridReport run_grid(const ExperimentGrid& grid, const PlantConfig& plant);

/// Rebuilds cells and trend assertions from `trials`.
void aggregate(GridReport& report);

/// Sample mean and (n-1) standard deviation; std is 0 below two samples.
std::pair<double, double> mean_std(const std::vector<double>& xs);

/// Two aligned tables, path error then completion time, one row per cell.
std::string summarize(const GridReport& report);

}  // namespace micropush
