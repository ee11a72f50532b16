#include <doctest.h>

#include <cmath>
#include <sstream>

#include "micropush/errors.hpp"
#include "micropush/paths.hpp"

using namespace micropush;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_path(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_SUITE("paths") {
  TEST_CASE("default circle") {
    const Position2 c{200, 200};
    const Trajectory t = gen_circle(c, 538.0);
    REQUIRE(t.size() == 100);
    std::vector<Position2> closed = t.nodes;
    closed.push_back(t.nodes.front());
    CHECK(polyline_length(closed) == doctest::Approx(538.0));
    for (std::size_t i = 0; i + 1 < closed.size(); ++i) {
      CHECK(distance(closed[i], closed[i + 1]) == doctest::Approx(5.38));
    }
    const double r = distance(t.nodes[0], c);
    for (const Position2& p : t.nodes) CHECK(distance(p, c) == doctest::Approx(r));
    CHECK(t.nodes[0].x == doctest::Approx(200 + r));
    // Counterclockwise on screen: the second node is above the first.
    CHECK(t.nodes[1].y < t.nodes[0].y);
  }

  TEST_CASE("four nodes form a square") {
    // Unit circumradius gives sides of sqrt(2).
    const Trajectory t = gen_circle({0, 0}, 4.0 * std::sqrt(2.0), 4);
    CHECK(t.nodes[0].x == doctest::Approx(1.0));
    CHECK(t.nodes[1].x == doctest::Approx(0.0).scale(1.0));
    CHECK(t.nodes[1].y == doctest::Approx(-1.0));
    CHECK(t.nodes[2].x == doctest::Approx(-1.0));
    CHECK(t.nodes[3].y == doctest::Approx(1.0));
    CHECK_THROWS_AS(gen_circle({0, 0}, 1.0, 2), InvalidConfig);
    CHECK_THROWS_AS(gen_circle({0, 0}, 0.0, 8), InvalidConfig);
  }

  TEST_CASE("path files") {
    std::istringstream in("# header\n1 2\n\n  3.5 -4   # trailing\n5e1 6\n");
    const Trajectory t = parse_path(in);
    REQUIRE(t.size() == 3);
    CHECK(t.nodes[1] == Position2{3.5, -4});
    CHECK(t.nodes[2] == Position2{50, 6});

    CHECK(parse_error_line("1 2\n3\n") == 2);
    CHECK(parse_error_line("1 2\n3 4\nfoo bar\n") == 3);
    CHECK(parse_error_line("1 2 3\n4 5\n") == 1);
    CHECK(parse_error_line("1 2\n") == 0);
    CHECK(parse_error_line("1 2\nnan 3\n") == 2);
    CHECK_THROWS_AS(load_path("/nonexistent/path.txt"), ParseError);
  }

  TEST_CASE("arc-length resampling") {
    const std::vector<Position2> l{{0, 0}, {10, 0}, {10, 10}};
    const auto r = resample_arclength(l, 5);
    REQUIRE(r.size() == 5);
    CHECK(r[0] == Position2{0, 0});
    CHECK(r[1].x == doctest::Approx(5));
    CHECK(r[2].x == doctest::Approx(10));
    CHECK(r[2].y == doctest::Approx(0).scale(1.0));
    CHECK(r[3].y == doctest::Approx(5));
    CHECK(r[4] == Position2{10, 10});
    CHECK_THROWS_AS(resample_arclength({{1, 1}, {1, 1}}, 4), DegenerateGeometry);
  }

  TEST_CASE("the freeform sample file") {
    const Trajectory raw = load_path(MICROPUSH_DATA_DIR "/freeform_530um.txt");
    CHECK(raw.size() == 172);
    CHECK(polyline_length(raw.nodes) == doctest::Approx(530.0).epsilon(1e-4));
    const Trajectory t = load_path(MICROPUSH_DATA_DIR "/freeform_530um.txt", 100);
    CHECK(t.size() == 100);
    CHECK(t.nodes.front() == raw.nodes.front());
    CHECK(t.nodes.back() == raw.nodes.back());
  }

  TEST_CASE("initial placement") {
    const Trajectory circle = gen_circle({200, 200}, 538.0);
    const WorldState w = initial_placement(circle, true);
    CHECK(w.object == circle.nodes[0]);
    CHECK(distance(w.robot, w.object) == doctest::Approx(20.0));
    CHECK(w.robot.x < w.object.x);
    CHECK(w.robot.y == doctest::Approx(200.0));

    const Trajectory open{{{0, 0}, {10, 0}, {20, 5}}, TrajectoryRole::Desired};
    const WorldState o = initial_placement(open, false);
    CHECK(o.robot.x == doctest::Approx(-20.0));
    CHECK(o.robot.y == doctest::Approx(0.0).scale(1.0));
  }
}
