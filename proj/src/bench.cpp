#include "micropush/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

namespace micropush {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

bool cell_less(const TrialResult& a, const TrialResult& b) {
  const auto& ca = a.config;
  const auto& cb = b.config;
  if (ca.corridor_width_um != cb.corridor_width_um) return ca.corridor_width_um < cb.corridor_width_um;
  if (ca.freq_hz != cb.freq_hz) return ca.freq_hz < cb.freq_hz;
  return ca.trial < cb.trial;
}

std::string join(const std::vector<double>& xs, const char* spec) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(spec, xs[i]);
  return s;
}

void add_trend_assertions(GridReport& report) {
  std::vector<double> widths, freqs;
  for (const CellSummary& c : report.cells) {
    if (std::find(widths.begin(), widths.end(), c.width) == widths.end()) widths.push_back(c.width);
    if (std::find(freqs.begin(), freqs.end(), c.freq) == freqs.end()) freqs.push_back(c.freq);
  }
  std::sort(widths.begin(), widths.end());
  std::sort(freqs.begin(), freqs.end());
  auto find_cell = [&](double w, double f) -> const CellSummary* {
    for (const CellSummary& c : report.cells) {
      if (c.width == w && c.freq == f) return &c;
    }
    return nullptr;
  };

  if (freqs.size() >= 2) {
    for (double w : widths) {
      std::vector<double> times;
      bool ok = true;
      for (double f : freqs) {
        const CellSummary* c = find_cell(w, f);
        if (!c || c->completed == 0) {
          ok = false;
          times.push_back(NAN);
          continue;
        }
        if (!times.empty() && !(c->completion_mean < times.back())) ok = false;
        times.push_back(c->completion_mean);
      }
      report.assertions.push_back({"completion_decreases_with_freq[w=" + fmt("%g", w) + "]", ok,
                                   "mean completion s by freq: " + join(times, "%.2f")});
    }
  }

  if (widths.size() >= 2) {
    std::vector<double> maes;
    for (double w : widths) {
      std::vector<double> per;
      for (const TrialResult& t : report.trials) {
        if (t.config.corridor_width_um == w) per.push_back(t.mae);
      }
      maes.push_back(mean_std(per).first);
    }
    bool ok = std::is_sorted(maes.begin(), maes.end(), [](double a, double b) { return a <= b; });
    ok = ok && std::adjacent_find(maes.begin(), maes.end()) == maes.end();
    report.assertions.push_back({"mae_increases_with_width", ok, "mean MAE um by width: " + join(maes, "%.3f")});

    for (double f : freqs) {
      std::vector<double> chatter;
      bool okc = true;
      for (double w : widths) {
        const CellSummary* c = find_cell(w, f);
        const double v = c ? c->chatter_mean : NAN;
        if (!chatter.empty() && !(v >= chatter.back())) okc = false;
        chatter.push_back(v);
      }
      report.assertions.push_back({"chatter_nondecreasing_with_width[f=" + fmt("%g", f) + "]", okc,
                                   "mean chatter by width: " + join(chatter, "%.2f")});
    }
  }
}

}  // namespace

TrajectorySpec default_circle_spec() {
  return {gen_circle({200.0, 200.0}, kDefaultCircleLength, kDefaultPathNodes), true, 20.0};
}

void ExperimentGrid::validate() const {
  if (widths.empty() || freqs.empty()) throw InvalidConfig("grid needs at least one width and one frequency");
  if (trials < 1) throw InvalidConfig("grid needs at least one trial per cell");
  if (trajectory.path.size() < 2) throw InvalidConfig("grid trajectory needs at least 2 nodes");
}

PlantConfig default_grid_plant() {
  PlantConfig p;
  p.noise_std = 0.5;
  return p;
}

std::uint64_t cell_seed(std::uint64_t base, double width, double freq, int trial) {
  std::uint64_t h = splitmix64(std::bit_cast<std::uint64_t>(width));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(freq));
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  return splitmix64(base ^ h);
}

TrialResult run_trial(const TrajectorySpec& traj, double width, double freq, const PlantConfig& plant,
                      std::uint64_t seed, int trial, double arrival_threshold, double approach_distance,
                      double timeout_s, bool include_approach) {
  ControllerConfig ctrl;
  ctrl.corridor_width = width;
  ctrl.approach_distance = approach_distance;
  ctrl.arrival_threshold = arrival_threshold;
  ctrl.push_freq_hz = freq;
  ctrl.spin_freq_hz = freq;
  ctrl.waypoints = traj.path.nodes;
  const WorldState start = initial_placement(traj.path, traj.closed, traj.robot_standoff);
  const TrialConfigSnapshot snap{width, freq, freq, arrival_threshold, approach_distance, plant.noise_std, seed, trial};
  try {
    return evaluate_trial(run_closed_loop(ctrl, plant, start, seed, timeout_s), traj.path, snap, include_approach);
  } catch (const TimeoutExceeded& e) {
    return evaluate_trial(e.log(), traj.path, snap, include_approach);
  }
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

bool GridReport::all_assertions_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const TrendAssertion& a) { return a.pass; });
}

void aggregate(GridReport& report) {
  std::sort(report.trials.begin(), report.trials.end(), cell_less);
  report.cells.clear();
  report.assertions.clear();
  std::map<std::pair<double, double>, std::vector<const TrialResult*>> by_cell;
  for (const TrialResult& t : report.trials) by_cell[{t.config.corridor_width_um, t.config.freq_hz}].push_back(&t);
  for (const auto& [key, members] : by_cell) {
    CellSummary c;
    c.width = key.first;
    c.freq = key.second;
    c.trials = static_cast<int>(members.size());
    std::vector<double> maes, times, chatter;
    for (const TrialResult* t : members) {
      maes.push_back(t->mae);
      chatter.push_back(static_cast<double>(t->chatter_count));
      if (t->completed) times.push_back(t->completion_s);
    }
    c.completed = static_cast<int>(times.size());
    std::tie(c.mae_mean, c.mae_std) = mean_std(maes);
    std::tie(c.completion_mean, c.completion_std) = mean_std(times);
    c.chatter_mean = mean_std(chatter).first;
    report.cells.push_back(c);
  }
  add_trend_assertions(report);
}

GridReport run_grid(const ExperimentGrid& grid, const PlantConfig& plant) {
  grid.validate();
  plant.validate();
  struct Job {
    double width, freq;
    int trial;
  };
  std::vector<Job> jobs;
  for (double w : grid.widths) {
    for (double f : grid.freqs) {
      for (int k = 1; k <= grid.trials; ++k) jobs.push_back({w, f, k});
    }
  }
  GridReport report;
  report.trials.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      report.trials[i] = run_trial(grid.trajectory, j.width, j.freq, plant, cell_seed(grid.seed_base, j.width, j.freq, j.trial),
                                   j.trial, grid.arrival_threshold, grid.approach_distance, grid.timeout_s,
                                   grid.include_approach);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(grid.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  aggregate(report);
  return report;
}

std::string summarize(const GridReport& report) {
  int max_trials = 0;
  for (const CellSummary& c : report.cells) max_trials = std::max(max_trials, c.trials);
  max_trials = std::max(max_trials, 4);

  std::ostringstream out;
  auto table = [&](const char* title, auto value_of, double CellSummary::*avg) {
    out << title << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-10s %-8s", "width_um", "freq_hz");
    out << buf;
    for (int k = 1; k <= max_trials; ++k) {
      std::snprintf(buf, sizeof buf, " %9s", ("Trial " + std::to_string(k)).c_str());
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %9s %9s\n", "Averages", "Std");
    out << buf;
    for (const CellSummary& c : report.cells) {
      std::snprintf(buf, sizeof buf, "%-10g %-8g", c.width, c.freq);
      out << buf;
      for (int k = 1; k <= max_trials; ++k) {
        const TrialResult* hit = nullptr;
        for (const TrialResult& t : report.trials) {
          if (t.config.corridor_width_um == c.width && t.config.freq_hz == c.freq && t.config.trial == k) hit = &t;
        }
        out << ' ' << (hit ? value_of(*hit) : std::string(9, ' '));
      }
      const double sd = avg == &CellSummary::mae_mean ? c.mae_std : c.completion_std;
      std::snprintf(buf, sizeof buf, " %9.3f %9.3f\n", c.*avg, sd);
      out << buf;
    }
  };
  table("path error (um)", [](const TrialResult& t) { return fmt("%9.3f", t.mae); }, &CellSummary::mae_mean);
  out << '\n';
  table("completion time (s)",
        [](const TrialResult& t) { return t.completed ? fmt("%9.2f", t.completion_s) : std::string("  timeout"); },
        &CellSummary::completion_mean);
  if (!report.assertions.empty()) {
    out << '\n';
    for (const TrendAssertion& a : report.assertions) {
      out << (a.pass ? "PASS " : "FAIL ") << a.name << ": " << a.detail << '\n';
    }
  }
  return out.str();
}

}  // namespace micropush
