#pragma once

#include <cmath>
#include <string_view>

namespace micropush {

/// Planar point or displacement in image coordinates, micrometres.
/// Origin top-left, y grows downward.
struct Position2 {
  double x = 0.0;
  double y = 0.0;

  Position2& operator+=(const Position2& o) { x += o.x; y += o.y; return *this; }
  Position2& operator-=(const Position2& o) { x -= o.x; y -= o.y; return *this; }
  bool operator==(const Position2&) const = default;
};

inline Position2 operator+(Position2 a, const Position2& b) { return a += b; }
inline Position2 operator-(Position2 a, const Position2& b) { return a -= b; }
inline Position2 operator*(double s, const Position2& p) { return {s * p.x, s * p.y}; }
inline Position2 operator*(const Position2& p, double s) { return {s * p.x, s * p.y}; }
inline double dot(const Position2& a, const Position2& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the planar cross product.
inline double cross(const Position2& a, const Position2& b) { return a.x * b.y - a.y * b.x; }
inline double length(const Position2& p) { return std::hypot(p.x, p.y); }

double distance(const Position2& a, const Position2& b);

/// Actuation heading from `from` toward `to`: atan2(-(dy), dx) in [0, 2pi).
/// The y negation maps image coordinates onto the actuation frame.
/// Throws DegenerateGeometry when the points coincide.
double heading_to(const Position2& from, const Position2& to);

/// Point a distance `d` behind `object` on the object-goal line.
Position2 approach_point(const Position2& object, const Position2& goal, double d);

/// Guiding corridor: a slab of width `width` from `start` to `goal`.
///
/// The left edge (l1 -> l2) lies on the side reached by turning the direction
/// of travel 90 degrees counterclockwise as seen on screen; the right edge
/// (r1 -> r2) on the other side.
struct CorridorGeom {
  Position2 l1, l2, r1, r2;
  double width = 0.0;
  Position2 start, goal;

  bool operator==(const CorridorGeom&) const = default;
};

/// Throws DegenerateGeometry when m == g and InvalidWidth when w <= 0.
CorridorGeom build_corridor(const Position2& m, const Position2& g, double w);

/// Half the 3x3 determinant |x1 y1 1; x2 y2 1; xo yo 1|.
double signed_area(const Position2& e1, const Position2& e2, const Position2& o);
double signed_area_left(const CorridorGeom& c, const Position2& o);
double signed_area_right(const CorridorGeom& c, const Position2& o);

enum class SideClass { Inside, OutsideLeft, OutsideRight };

/// Points exactly on an edge line count as Inside.
SideClass classify_object(const CorridorGeom& c, const Position2& o);

std::string_view to_string(SideClass s);

}  // namespace micropush
