#include "micropush/paths.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "micropush/errors.hpp"
#include "micropush/field.hpp"

namespace micropush {

Trajectory gen_circle(const Position2& center, double total_length, std::size_t n) {
  if (n < 3) throw InvalidConfig("a circle needs at least 3 nodes");
  if (!(total_length > 0.0)) throw InvalidConfig("circle length must be positive");
  const double step = kTwoPi / static_cast<double>(n);
  const double chord = total_length / static_cast<double>(n);
  const double radius = chord / (2.0 * std::sin(step / 2.0));
  Trajectory t{{}, TrajectoryRole::Desired};
  t.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = step * static_cast<double>(i);
    t.nodes.push_back({center.x + radius * std::cos(a), center.y - radius * std::sin(a)});
  }
  return t;
}

double polyline_length(const std::vector<Position2>& nodes) {
  double len = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) len += distance(nodes[i - 1], nodes[i]);
  return len;
}

std::vector<Position2> resample_arclength(const std::vector<Position2>& nodes, std::size_t n) {
  if (nodes.size() < 2) throw InvalidConfig("resampling needs at least 2 nodes");
  if (n < 2) throw InvalidConfig("resampling target must be at least 2 nodes");
  const double total = polyline_length(nodes);
  if (total == 0.0) throw DegenerateGeometry("path has zero length");

  std::vector<Position2> out;
  out.reserve(n);
  out.push_back(nodes.front());
  std::size_t seg = 1;
  double seg_start = 0.0;  // arc length at nodes[seg - 1]
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 1 < nodes.size() && seg_start + distance(nodes[seg - 1], nodes[seg]) < target) {
      seg_start += distance(nodes[seg - 1], nodes[seg]);
      ++seg;
    }
    const double seg_len = distance(nodes[seg - 1], nodes[seg]);
    const double u = seg_len > 0.0 ? std::clamp((target - seg_start) / seg_len, 0.0, 1.0) : 0.0;
    out.push_back(nodes[seg - 1] + u * (nodes[seg] - nodes[seg - 1]));
  }
  out.push_back(nodes.back());
  return out;
}

Trajectory parse_path(std::istream& in, std::optional<std::size_t> resample_to) {
  Trajectory t{{}, TrajectoryRole::Desired};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double x = 0.0, y = 0.0;
    if (!(fields >> x)) {
      fields.clear();
      std::string rest;
      if (fields >> rest) throw ParseError("expected 'x y', got '" + rest + "'", lineno);
      continue;  // blank or comment-only
    }
    if (!(fields >> y)) throw ParseError("missing y coordinate", lineno);
    std::string extra;
    if (fields >> extra) throw ParseError("unexpected trailing token '" + extra + "'", lineno);
    if (!std::isfinite(x) || !std::isfinite(y)) throw ParseError("non-finite coordinate", lineno);
    t.nodes.push_back({x, y});
  }
  if (t.nodes.size() < 2) throw ParseError("path needs at least 2 nodes, found " + std::to_string(t.nodes.size()), 0);
  if (resample_to) t.nodes = resample_arclength(t.nodes, *resample_to);
  return t;
}

Trajectory load_path(const std::filesystem::path& file, std::optional<std::size_t> resample_to) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open path file '" + file.string() + "'", 0);
  return parse_path(in, resample_to);
}

WorldState initial_placement(const Trajectory& path, bool closed, double standoff) {
  if (path.size() < 2) throw InvalidConfig("placement needs at least 2 path nodes");
  WorldState w;
  w.object = path.nodes.front();
  Position2 dir;
  if (closed) {
    Position2 centroid;
    for (const Position2& p : path.nodes) centroid += p;
    centroid = (1.0 / static_cast<double>(path.size())) * centroid;
    dir = centroid - w.object;
  } else {
    dir = w.object - path.nodes[1];
  }
  const double len = length(dir);
  if (len == 0.0) throw DegenerateGeometry("cannot orient initial placement");
  w.robot = w.object + (standoff / len) * dir;
  return w;
}

}  // namespace micropush
