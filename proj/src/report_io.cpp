#include "micropush/report_io.hpp"

#include <cstdio>
#include <fstream>

#include "micropush/errors.hpp"

namespace micropush {

using nlohmann::json;

namespace {

json nodes_json(const std::vector<Position2>& nodes) {
  json a = json::array();
  for (const Position2& p : nodes) a.push_back({p.x, p.y});
  return a;
}

Trajectory nodes_from_json(const json& j, TrajectoryRole role) {
  Trajectory t{{}, role};
  for (const json& p : j) t.nodes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return t;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

}  // namespace

json to_json(const Position2& p) { return json::array({p.x, p.y}); }

json to_json(const Trajectory& t) { return nodes_json(t.nodes); }

json to_json(const ActuationState& a) { return {{"alpha", a.alpha}, {"gamma", a.gamma}, {"freq_hz", a.freq_hz}}; }

json to_json(const CorridorGeom& c) {
  return {{"l1", to_json(c.l1)}, {"l2", to_json(c.l2)}, {"r1", to_json(c.r1)}, {"r2", to_json(c.r2)},
          {"width", c.width},    {"start", to_json(c.start)}, {"goal", to_json(c.goal)}};
}

json to_json(const TrialResult& r) {
  const TrialConfigSnapshot& c = r.config;
  return {
      {"completed", r.completed},
      {"mae_um", r.mae},
      {"completion_s", r.completed ? json(r.completion_s) : json(nullptr)},
      {"chatter_count", r.chatter_count},
      {"config",
       {{"corridor_width_um", c.corridor_width_um},
        {"freq_hz", c.freq_hz},
        {"spin_freq_hz", c.spin_freq_hz},
        {"arrival_threshold_um", c.arrival_threshold_um},
        {"approach_distance_um", c.approach_distance_um},
        {"noise_std_um", c.noise_std_um},
        {"seed", c.seed},
        {"trial", c.trial}}},
      {"resampled", to_json(r.resampled)},
      {"raw", to_json(r.raw)},
  };
}

TrialResult trial_from_json(const json& j) {
  TrialResult r;
  r.completed = j.at("completed").get<bool>();
  r.mae = j.at("mae_um").get<double>();
  r.completion_s = j.at("completion_s").is_null() ? 0.0 : j.at("completion_s").get<double>();
  r.chatter_count = j.at("chatter_count").get<std::size_t>();
  const json& c = j.at("config");
  r.config.corridor_width_um = c.at("corridor_width_um").get<double>();
  r.config.freq_hz = c.at("freq_hz").get<double>();
  r.config.spin_freq_hz = c.value("spin_freq_hz", r.config.freq_hz);
  r.config.arrival_threshold_um = c.value("arrival_threshold_um", 8.0);
  r.config.approach_distance_um = c.value("approach_distance_um", 15.0);
  r.config.noise_std_um = c.value("noise_std_um", 0.0);
  r.config.seed = c.value("seed", std::uint64_t{0});
  r.config.trial = c.at("trial").get<int>();
  if (j.contains("resampled")) r.resampled = nodes_from_json(j.at("resampled"), TrajectoryRole::ActualResampled);
  if (j.contains("raw")) r.raw = nodes_from_json(j.at("raw"), TrajectoryRole::ActualRaw);
  return r;
}

json to_json(const PlantConfig& p) {
  return {{"slip_factor", p.slip_factor}, {"stepout_hz", p.stepout_hz}, {"vortex_gain", p.vortex_gain},
          {"noise_std", p.noise_std},     {"dt", p.dt},                 {"post_stepout_decay", p.post_stepout_decay},
          {"max_substep", p.max_substep}};
}

PlantConfig plant_from_json(const json& j, PlantConfig p) {
  if (!j.is_object()) throw InvalidConfig("plant config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw InvalidConfig("plant field '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "slip_factor") p.slip_factor = v;
    else if (key == "stepout_hz") p.stepout_hz = v;
    else if (key == "vortex_gain") p.vortex_gain = v;
    else if (key == "noise_std") p.noise_std = v;
    else if (key == "dt") p.dt = v;
    else if (key == "post_stepout_decay") p.post_stepout_decay = v;
    else if (key == "max_substep") p.max_substep = v;
    else throw InvalidConfig("unknown plant field '" + key + "'");
  }
  p.validate();
  return p;
}

json to_json(const GridReport& r) {
  json trials = json::array();
  for (const TrialResult& t : r.trials) trials.push_back(to_json(t));
  json cells = json::array();
  for (const CellSummary& c : r.cells) {
    cells.push_back({{"corridor_width_um", c.width},
                     {"freq_hz", c.freq},
                     {"trials", c.trials},
                     {"completed", c.completed},
                     {"mae_mean_um", c.mae_mean},
                     {"mae_std_um", c.mae_std},
                     {"completion_mean_s", c.completion_mean},
                     {"completion_std_s", c.completion_std},
                     {"chatter_mean", c.chatter_mean}});
  }
  json assertions = json::array();
  for (const TrendAssertion& a : r.assertions) {
    assertions.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  }
  return {{"trials", trials}, {"cells", cells}, {"assertions", assertions}};
}

GridReport report_from_json(const json& j) {
  GridReport r;
  for (const json& t : j.at("trials")) r.trials.push_back(trial_from_json(t));
  aggregate(r);
  return r;
}

std::string to_csv(const GridReport& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[160];
  for (const TrialResult& t : r.trials) {
    char completion[32] = "NA";
    if (t.completed) std::snprintf(completion, sizeof completion, "%.4f", t.completion_s);
    std::snprintf(buf, sizeof buf, "%g,%g,%d,%.6f,%s,%zu\n", t.config.corridor_width_um, t.config.freq_hz,
                  t.config.trial, t.mae, completion, t.chatter_count);
    out += buf;
  }
  return out;
}

void write_report_files(const GridReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", to_json(r).dump(1) + "\n");
  write_file(dir / "report.csv", to_csv(r));
  write_file(dir / "summary.txt", summarize(r));
}

}  // namespace micropush
