#pragma once

#include <filesystem>
#include <istream>
#include <optional>

#include "micropush/metrics.hpp"
#include "micropush/plant.hpp"

namespace micropush {

inline constexpr std::size_t kDefaultPathNodes = 100;
inline constexpr double kDefaultCircleLength = 538.0;

/// `n` equally spaced nodes whose chord lengths sum to `total_length`.
/// Node 0 sits at angle 0 (screen right of centre); nodes advance
/// counterclockwise as seen on screen. Throws InvalidConfig for n < 3 or a
/// nonpositive length.
Trajectory gen_circle(const Position2& center, double total_length, std::size_t n = kDefaultPathNodes);

/// Sum of segment lengths.
double polyline_length(const std::vector<Position2>& nodes);

/// `n` nodes at uniform arc-length spacing along the polyline, endpoints kept.
std::vector<Position2> resample_arclength(const std::vector<Position2>& nodes, std::size_t n);

/// Path file: one "x y" pair (µm) per line; '#' starts a comment; blank lines
/// ignored. Needs at least two nodes. With `resample_to`, the parsed path is
/// resampled to that many uniform arc-length nodes.
Trajectory parse_path(std::istream& in, std::optional<std::size_t> resample_to = std::nullopt);
Trajectory load_path(const std::filesystem::path& file, std::optional<std::size_t> resample_to = std::nullopt);

/// Object on node 0; robot `standoff` µm away. For a closed loop the robot
/// sits on the inward normal (toward the centroid), otherwise behind node 0
/// against the initial direction of travel.
WorldState initial_placement(const Trajectory& path, bool closed, double standoff = 20.0);

}  // namespace micropush
