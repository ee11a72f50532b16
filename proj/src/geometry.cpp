#include "micropush/geometry.hpp"

#include "micropush/errors.hpp"
#include "micropush/field.hpp"

namespace micropush {

double distance(const Position2& a, const Position2& b) { return length(b - a); }

double heading_to(const Position2& from, const Position2& to) {
  const Position2 d = to - from;
  if (d.x == 0.0 && d.y == 0.0) throw DegenerateGeometry("heading_to: coincident points");
  return wrap_angle(std::atan2(-d.y, d.x));
}

Position2 approach_point(const Position2& object, const Position2& goal, double d) {
  const Position2 og = goal - object;
  const double len = length(og);
  if (len == 0.0) throw DegenerateGeometry("approach_point: object coincides with goal");
  return object - (d / len) * og;
}

CorridorGeom build_corridor(const Position2& m, const Position2& g, double w) {
  if (!(w > 0.0)) throw InvalidWidth("corridor width must be positive");
  const Position2 mg = g - m;
  const double len = length(mg);
  if (len == 0.0) throw DegenerateGeometry("build_corridor: start coincides with goal");
  const Position2 perp{-mg.y / len, mg.x / len};
  const Position2 half = (w / 2.0) * perp;
  // -perp is screen-left of the travel direction in y-down coordinates
  return {m - half, g - half, m + half, g + half, w, m, g};
}

double signed_area(const Position2& e1, const Position2& e2, const Position2& o) {
  return 0.5 * cross(e2 - e1, o - e1);
}

double signed_area_left(const CorridorGeom& c, const Position2& o) { return signed_area(c.l1, c.l2, o); }
double signed_area_right(const CorridorGeom& c, const Position2& o) { return signed_area(c.r1, c.r2, o); }

SideClass classify_object(const CorridorGeom& c, const Position2& o) {
  if (signed_area_left(c, o) < 0.0) return SideClass::OutsideLeft;
  if (signed_area_right(c, o) > 0.0) return SideClass::OutsideRight;
  return SideClass::Inside;
}

std::string_view to_string(SideClass s) {
  switch (s) {
    case SideClass::Inside: return "inside";
    case SideClass::OutsideLeft: return "outside_left";
    case SideClass::OutsideRight: return "outside_right";
  }
  return "?";
}

}  // namespace micropush
