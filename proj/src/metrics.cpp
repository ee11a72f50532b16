#include "micropush/metrics.hpp"

#include <algorithm>
#include <limits>

namespace micropush {

Trajectory resample_closest(const Trajectory& raw, const Trajectory& desired) {
  if (raw.empty()) throw EmptyTrajectory("resample_closest: raw trajectory is empty");
  Trajectory out{{}, TrajectoryRole::ActualResampled};
  out.nodes.reserve(desired.size());
  for (const Position2& g : desired.nodes) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < raw.nodes.size(); ++j) {
      const double d = distance(g, raw.nodes[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out.nodes.push_back(raw.nodes[best]);
  }
  return out;
}

double mean_abs_error(const Trajectory& resampled, const Trajectory& desired) {
  if (resampled.size() != desired.size()) {
    throw LengthMismatch("mean_abs_error: " + std::to_string(resampled.size()) + " vs " +
                         std::to_string(desired.size()) + " nodes");
  }
  if (desired.empty()) throw EmptyTrajectory("mean_abs_error: no nodes");
  double sum = 0.0;
  for (std::size_t i = 0; i < desired.size(); ++i) sum += distance(resampled.nodes[i], desired.nodes[i]);
  return sum / static_cast<double>(desired.size());
}

double completion_time(const TrialLog& log, bool include_approach) {
  if (!log.completed || log.transitions.empty() || log.transitions.back().mode != Mode::Done) {
    throw NotCompleted("trial did not reach Done");
  }
  const double done = log.transitions.back().time;
  if (include_approach) {
    return done - (log.frames.empty() ? log.transitions.front().time : log.frames.front().time);
  }
  for (const ModeTransition& tr : log.transitions) {
    if (tr.mode == Mode::Push || tr.mode == Mode::SpinCW || tr.mode == Mode::SpinCCW) return done - tr.time;
  }
  return 0.0;
}

std::size_t chatter_count(const TrialLog& log) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < log.transitions.size(); ++i) {
    const Mode to = log.transitions[i].mode;
    if (log.transitions[i - 1].mode == Mode::Push && (to == Mode::SpinCW || to == Mode::SpinCCW)) ++n;
  }
  return n;
}

Trajectory object_track(const TrialLog& log) {
  Trajectory t{{}, TrajectoryRole::ActualRaw};
  t.nodes.reserve(log.frames.size());
  for (const FrameRecord& f : log.frames) t.nodes.push_back(f.object_observed);
  return t;
}

TrialResult evaluate_trial(const TrialLog& log, const Trajectory& desired, const TrialConfigSnapshot& config,
                           bool include_approach) {
  TrialResult r;
  r.config = config;
  r.raw = object_track(log);
  r.completed = log.completed;
  r.chatter_count = chatter_count(log);
  if (!r.raw.empty()) {
    r.resampled = resample_closest(r.raw, desired);
    r.mae = mean_abs_error(r.resampled, desired);
  }
  if (r.completed) r.completion_s = completion_time(log, include_approach);
  return r;
}

RunningClosestError::RunningClosestError(std::vector<Position2> desired)
    : desired_(std::move(desired)), best_(desired_.size(), std::numeric_limits<double>::infinity()) {}

void RunningClosestError::add(const Position2& p) {
  ++samples_;
  for (std::size_t i = 0; i < desired_.size(); ++i) best_[i] = std::min(best_[i], distance(p, desired_[i]));
}

double RunningClosestError::mae_prefix(std::size_t count) const {
  count = std::min(count, desired_.size());
  if (count == 0 || samples_ == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += best_[i];
  return sum / static_cast<double>(count);
}

}  // namespace micropush
