#include <doctest.h>

#include <cmath>

#include "micropush/controller.hpp"
#include "micropush/errors.hpp"
#include "micropush/plant.hpp"
#include "test_support.hpp"

using namespace micropush;

namespace {

WorldState apart(Position2 robot, Position2 object) {
  WorldState w;
  w.robot = robot;
  w.object = object;
  return w;
}

WorldState run_for(WorldState w, const ActuationState& cmd, const PlantConfig& cfg, int steps) {
  for (int i = 0; i < steps; ++i) w = advance(w, cmd, cfg);
  return w;
}

// Screen polar angle of p about c (counterclockwise on screen is positive).
double screen_angle(const Position2& c, const Position2& p) { return std::atan2(-(p.y - c.y), p.x - c.x); }

}  // namespace

TEST_SUITE("plant") {
  TEST_CASE("rolling speed") {
    const PlantConfig cfg;
    CHECK(rolling_speed(0.0, cfg, 5.0) == 0.0);
    // The slip factor was fitted so that 15 Hz covers 538 µm in 31.85 s.
    CHECK(rolling_speed(15.0, cfg, 5.0) == doctest::Approx(538.0 / 31.85).epsilon(0.005));
    CHECK(rolling_speed(15.0, cfg, 5.0) == doctest::Approx(0.0359 * 2 * M_PI * 15 * 5));
    CHECK(rolling_speed(120.0, cfg, 5.0) == doctest::Approx(rolling_speed(60.0, cfg, 5.0) / 2));
    double prev = 0.0;
    for (double f = 0.5; f <= 60.0; f += 0.5) {
      const double v = rolling_speed(f, cfg, 5.0);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("one second of rolling at 9 Hz") {
    const PlantConfig cfg;
    const WorldState w = run_for(apart({0, 0}, {200, 200}), roll_command(0.0, 9.0), cfg, 24);
    CHECK(w.robot.x == doctest::Approx(0.0359 * 2 * M_PI * 9 * 5).epsilon(1e-9));
    CHECK(w.robot.x == doctest::Approx(10.15).epsilon(0.001));
    CHECK(std::abs(w.robot.y) < 1e-9);
    CHECK(w.object == Position2{200, 200});
    CHECK(w.time == doctest::Approx(1.0));
  }

  TEST_CASE("rolling follows the commanded screen heading") {
    testing::Gen gen(3);
    const PlantConfig cfg;
    for (int i = 0; i < 2000; ++i) {
      const Position2 m = gen.point();
      const Position2 target = gen.point();
      if (distance(m, target) < 1.0) continue;
      const WorldState w = advance(apart(m, {1e6, 1e6}), roll_command(heading_to(m, target), 9.0), cfg);
      const Position2 moved = w.robot - m;
      const Position2 want = target - m;
      REQUIRE(cross(moved, want) == doctest::Approx(0.0).scale(length(want)));
      REQUIRE(dot(moved, want) > 0.0);
      REQUIRE(distance(w.robot, target) < distance(m, target));
    }
  }

  TEST_CASE("the stop command and the spin modes do not translate the robot") {
    const PlantConfig cfg;
    const WorldState w0 = apart({0, 0}, {20, 0});
    CHECK(advance(w0, {1.0, kGammaRoll, 0.0}, cfg).robot == w0.robot);
    CHECK(advance(w0, spin_command(SpinDirection::CW, 9, 1.0), cfg).robot == w0.robot);
    CHECK(advance(w0, spin_command(SpinDirection::CCW, 9, 1.0), cfg).robot == w0.robot);
  }

  TEST_CASE("pushing moves the object and never overlaps") {
    const PlantConfig cfg;
    WorldState w = apart({0, 0}, {10.5, 0});
    w = run_for(w, roll_command(0.0, 15.0), cfg, 24);
    CHECK(w.object.x > 10.5 + 10.0);
    CHECK(w.gap() >= -1e-9);
    CHECK(w.gap() < 1e-9);

    testing::Gen gen(11);
    for (int i = 0; i < 300; ++i) {
      WorldState s = apart(gen.point(-20, 20), gen.point(-20, 20));
      if (s.gap() < 0) continue;
      for (int k = 0; k < 24; ++k) {
        const ActuationState cmd{gen.uniform(0, kTwoPi), kGammaRoll, gen.uniform(1, 15)};
        s = advance(s, cmd, cfg);
        REQUIRE(s.gap() >= -1e-9);
      }
    }
  }

  TEST_CASE("spin directions carry the object on an arc") {
    const PlantConfig cfg;
    // Object to the north-east of the robot on screen (y grows downward).
    const Position2 m{100, 100};
    const Position2 o = m + 11.0 * Position2{std::cos(M_PI / 4), -std::sin(M_PI / 4)};
    const WorldState w0 = apart(m, o);

    const WorldState cw = advance(w0, spin_command(SpinDirection::CW, 9, 0.0), cfg);
    CHECK(screen_angle(m, cw.object) < screen_angle(m, o));
    const WorldState ccw = advance(w0, spin_command(SpinDirection::CCW, 9, 0.0), cfg);
    CHECK(screen_angle(m, ccw.object) > screen_angle(m, o));

    const double omega = vortex_angular_speed(spin_command(SpinDirection::CW, 9, 0.0), cfg, 5.0, 11.0);
    CHECK(omega == doctest::Approx(0.3 * 2 * M_PI * 9 * std::pow(5.0 / 11.0, 3)));
    CHECK(screen_angle(m, o) - screen_angle(m, cw.object) == doctest::Approx(omega * cfg.dt));
  }

  TEST_CASE("spinning conserves the centre distance") {
    testing::Gen gen(5);
    const PlantConfig cfg;
    for (int i = 0; i < 500; ++i) {
      const Position2 m = gen.point();
      const double rho = gen.uniform(10, 40);
      const double a = gen.uniform(0, kTwoPi);
      WorldState w = apart(m, m + rho * Position2{std::cos(a), std::sin(a)});
      const SpinDirection dir = gen.integer(0, 1) ? SpinDirection::CW : SpinDirection::CCW;
      w = run_for(w, spin_command(dir, gen.uniform(1, 20), 0.0), cfg, 48);
      REQUIRE(distance(w.robot, w.object) == doctest::Approx(rho).epsilon(1e-9));
    }
  }

  TEST_CASE("step-out slows the robot") {
    PlantConfig cfg;
    CHECK(synchronous_frequency(30, cfg) == 30);
    CHECK(synchronous_frequency(90, cfg) == doctest::Approx(40));
    cfg.post_stepout_decay = 0;
    CHECK(synchronous_frequency(90, cfg) == doctest::Approx(60));
  }

  TEST_CASE("validation") {
    PlantConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.slip_factor = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = {};
    cfg.dt = -1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = {};
    cfg.noise_std = -0.1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    CHECK_THROWS_AS(apart({0, 0}, {5, 0}).validate(), InvalidConfig);
    CHECK_NOTHROW(apart({0, 0}, {10, 0}).validate());
  }
}
