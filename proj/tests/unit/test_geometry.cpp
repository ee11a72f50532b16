#include <doctest.h>

#include "micropush/errors.hpp"
#include "micropush/field.hpp"
#include "micropush/geometry.hpp"
#include "test_support.hpp"

using namespace micropush;

namespace {

// Independent slab test: project onto the screen-left unit normal of the
// m -> g direction and compare to half the width.
SideClass slab_oracle(const Position2& m, const Position2& g, double w, const Position2& o) {
  const double dx = g.x - m.x, dy = g.y - m.y;
  const double len = std::sqrt(dx * dx + dy * dy);
  // Turning (dx, dy) by -90 degrees in y-down coordinates points screen-left.
  const double lx = dy / len, ly = -dx / len;
  const double offset = (o.x - m.x) * lx + (o.y - m.y) * ly;
  if (offset > w / 2) return SideClass::OutsideLeft;
  if (offset < -w / 2) return SideClass::OutsideRight;
  return SideClass::Inside;
}

// Cofactor expansion of |x1 y1 1; x2 y2 1; x3 y3 1| along the first row.
double det3_half(const Position2& p1, const Position2& p2, const Position2& p3) {
  const double m11 = p2.y * 1 - 1 * p3.y;
  const double m12 = p2.x * 1 - 1 * p3.x;
  const double m13 = p2.x * p3.y - p2.y * p3.x;
  return 0.5 * (p1.x * m11 - p1.y * m12 + 1 * m13);
}

bool near(const Position2& a, const Position2& b, double tol = 1e-9) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("heading_to negates the image y axis") {
    CHECK(heading_to({0, 0}, {10, 0}) == 0.0);
    CHECK(heading_to({0, 0}, {0, 10}) == doctest::Approx(1.5 * kPi));
    CHECK(heading_to({0, 0}, {0, -10}) == doctest::Approx(0.5 * kPi));
    CHECK(heading_to({0, 0}, {-10, 0}) == doctest::Approx(kPi));
    CHECK_THROWS_AS(heading_to({5, 5}, {5, 5}), DegenerateGeometry);
  }

  TEST_CASE("approach point sits d behind the object") {
    CHECK(near(approach_point({100, 0}, {200, 0}, 15), {85, 0}));
    CHECK(near(approach_point({0, 0}, {0, -100}, 10), {0, 10}));
    CHECK(near(approach_point({3, 4}, {30, -7}, 0), {3, 4}));
    CHECK_THROWS_AS(approach_point({1, 1}, {1, 1}, 5), DegenerateGeometry);
  }

  TEST_CASE("corridor corners") {
    const CorridorGeom c = build_corridor({0, 0}, {100, 0}, 10);
    // Rightward travel: screen-up (y = -5) is left.
    CHECK(near(c.l1, {0, -5}));
    CHECK(near(c.l2, {100, -5}));
    CHECK(near(c.r1, {0, 5}));
    CHECK(near(c.r2, {100, 5}));
    CHECK(distance(c.l1, c.r1) == doctest::Approx(10));

    const CorridorGeom d = build_corridor({0, 0}, {0, 100}, 10);
    // Downward travel: perpendicular (-1, 0); left edge at x = +5.
    CHECK(near(d.l1, {5, 0}));
    CHECK(near(d.r1, {-5, 0}));
    CHECK(near(d.r2, {-5, 100}));

    CHECK_THROWS_AS(build_corridor({1, 1}, {1, 1}, 5), DegenerateGeometry);
    CHECK_THROWS_AS(build_corridor({0, 0}, {1, 1}, 0), InvalidWidth);
    CHECK_THROWS_AS(build_corridor({0, 0}, {1, 1}, -2), InvalidWidth);
  }

  TEST_CASE("corridor invariants on random inputs") {
    testing::Gen gen(3);
    for (int i = 0; i < 2000; ++i) {
      const Position2 m = gen.point(), g = gen.point();
      const double w = gen.uniform(0.1, 40);
      const CorridorGeom c = build_corridor(m, g, w);
      REQUIRE(distance(c.l1, c.r1) == doctest::Approx(w).epsilon(1e-9));
      REQUIRE(distance(c.l2, c.r2) == doctest::Approx(w).epsilon(1e-9));
      REQUIRE(near(0.5 * (c.l1 + c.r1), m, 1e-6));
      REQUIRE(near(0.5 * (c.l2 + c.r2), g, 1e-6));
      REQUIRE(std::abs(cross(c.l2 - c.l1, g - m)) < 1e-6 * length(g - m) * length(g - m));
    }
  }

  TEST_CASE("signed areas on the y = 5 edge") {
    const Position2 e1{0, 5}, e2{100, 5};
    CHECK(signed_area(e1, e2, {50, 3}) == doctest::Approx(-100));
    CHECK(signed_area(e1, e2, {50, 7}) == doctest::Approx(100));
    CHECK(signed_area(e1, e2, {50, 5}) == 0.0);
    const CorridorGeom c = build_corridor({0, 0}, {100, 0}, 10);
    CHECK(signed_area_right(c, {50, 3}) == doctest::Approx(-100));
    CHECK(signed_area_right(c, {50, 7}) == doctest::Approx(100));
    CHECK(signed_area_left(c, {50, -7}) == doctest::Approx(-100));
  }

  TEST_CASE("signed area equals half the cofactor determinant") {
    testing::Gen gen(17);
    for (int i = 0; i < 10000; ++i) {
      const Position2 a = gen.point(), b = gen.point(), o = gen.point();
      const double want = det3_half(a, b, o);
      const double scale = std::max({1.0, std::abs(want), length(b - a) * length(o - a)});
      REQUIRE(std::abs(signed_area(a, b, o) - want) <= 1e-9 * scale);
    }
  }

  TEST_CASE("classification examples") {
    const CorridorGeom c = build_corridor({0, 0}, {100, 0}, 10);
    CHECK(classify_object(c, {50, 0}) == SideClass::Inside);
    CHECK(classify_object(c, {50, -7}) == SideClass::OutsideLeft);
    CHECK(classify_object(c, {50, 7}) == SideClass::OutsideRight);
    // exactly on either edge counts as inside
    CHECK(classify_object(c, {50, 5}) == SideClass::Inside);
    CHECK(classify_object(c, {50, -5}) == SideClass::Inside);
    // interior points trigger neither spin test
    CHECK_FALSE(signed_area_left(c, {50, 3}) < 0);
    CHECK_FALSE(signed_area_right(c, {50, 3}) > 0);
  }

  TEST_CASE("classification agrees with the slab oracle") {
    testing::Gen gen(23);
    for (int i = 0; i < 10000; ++i) {
      const Position2 m = gen.point(), g = gen.point();
      const double w = gen.uniform(1, 30);
      const Position2 o = gen.point();
      const CorridorGeom c = build_corridor(m, g, w);
      REQUIRE(classify_object(c, o) == slab_oracle(m, g, w, o));
      // the two spin triggers are mutually exclusive
      REQUIRE_FALSE((signed_area_left(c, o) < 0 && signed_area_right(c, o) > 0));
    }
  }

  TEST_CASE("classification is invariant under rigid motions") {
    testing::Gen gen(29);
    for (int i = 0; i < 2000; ++i) {
      const Position2 m = gen.point(-100, 100), g = gen.point(-100, 100), o = gen.point(-100, 100);
      const double w = gen.uniform(1, 30);
      const double th = gen.uniform(0, kTwoPi);
      const Position2 shift = gen.point();
      auto move = [&](const Position2& p) {
        return Position2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y} + shift;
      };
      const CorridorGeom a = build_corridor(m, g, w);
      const CorridorGeom b = build_corridor(move(m), move(g), w);
      const double scale = std::max(1.0, length(g - m) * length(o - m));
      REQUIRE(std::abs(signed_area_left(a, o) - signed_area_left(b, move(o))) <= 1e-9 * scale);
      REQUIRE(std::abs(signed_area_right(a, o) - signed_area_right(b, move(o))) <= 1e-9 * scale);
      // Skip points within rounding distance of an edge.
      const double edge_margin = std::min(std::abs(signed_area_left(a, o)), std::abs(signed_area_right(a, o)));
      if (edge_margin > 1e-6 * scale) REQUIRE(classify_object(a, o) == classify_object(b, move(o)));
    }
  }

  TEST_CASE("distance") {
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({7.5, 7.5}, {7.5, 7.5}) == 0.0);
    CHECK(distance({0, 0}, {538, 0}) == 538.0);
  }
}
