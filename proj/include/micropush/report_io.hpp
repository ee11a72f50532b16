#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "micropush/bench.hpp"

namespace micropush {

nlohmann::json to_json(const Position2& p);
nlohmann::json to_json(const Trajectory& t);
nlohmann::json to_json(const TrialResult& r);
nlohmann::json to_json(const GridReport& r);
nlohmann::json to_json(const PlantConfig& p);
nlohmann::json to_json(const ActuationState& a);
nlohmann::json to_json(const CorridorGeom& c);

TrialResult trial_from_json(const nlohmann::json& j);
/// Reads the trials back and recomputes cells and assertions.
GridReport report_from_json(const nlohmann::json& j);
/// Fields present in `j` override `base`; unknown keys are rejected.
PlantConfig plant_from_json(const nlohmann::json& j, PlantConfig base = {});

inline constexpr const char* kCsvHeader = "corridor_width_um,freq_hz,trial,mae_um,completion_s,chatter";

/// One row per trial; incomplete trials print NA for completion_s.
std::string to_csv(const GridReport& r);

/// Writes report.json, report.csv and summary.txt under `dir`.
void write_report_files(const GridReport& r, const std::filesystem::path& dir);

}  // namespace micropush
