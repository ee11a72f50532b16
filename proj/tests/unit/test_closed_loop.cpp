#include <doctest.h>

#include "micropush/closed_loop.hpp"

using namespace micropush;

namespace {

WorldState start(Position2 robot, Position2 object) {
  WorldState w;
  w.robot = robot;
  w.object = object;
  return w;
}

ControllerConfig straight() {
  ControllerConfig c;
  c.waypoints = {{200, 100}};
  return c;
}

bool same_frames(const TrialLog& a, const TrialLog& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const FrameRecord& x = a.frames[i];
    const FrameRecord& y = b.frames[i];
    if (x.time != y.time || !(x.robot == y.robot) || !(x.object == y.object) ||
        !(x.object_observed == y.object_observed) || !(x.command == y.command) || x.mode != y.mode) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("closed_loop") {
  TEST_CASE("a zero timeout throws with an empty log") {
    try {
      run_closed_loop(straight(), {}, start({80, 100}, {100, 100}), 1, 0.0);
      FAIL("expected TimeoutExceeded");
    } catch (const TimeoutExceeded& e) {
      CHECK(e.log().frames.empty());
      CHECK_FALSE(e.log().completed);
    }
  }

  TEST_CASE("a straight 100 um push finishes near the goal") {
    const TrialLog log = run_closed_loop(straight(), {}, start({80, 100}, {100, 100}), 1);
    REQUIRE(log.completed);
    const FrameRecord& last = log.frames.back();
    CHECK(last.mode == Mode::Done);
    CHECK(distance(last.object, {200, 100}) < 8.0);
    CHECK(log.transitions.front().mode == Mode::Approach);
    CHECK(log.transitions.back().mode == Mode::Done);
    for (const FrameRecord& f : log.frames) CHECK(distance(f.robot, f.object) >= 10.0 - 1e-9);
  }

  TEST_CASE("an unreachable goal times out with the partial log") {
    PlantConfig frozen;
    frozen.slip_factor = 1e-9;
    try {
      run_closed_loop(straight(), frozen, start({80, 100}, {100, 100}), 1, 2.0);
      FAIL("expected TimeoutExceeded");
    } catch (const TimeoutExceeded& e) {
      CHECK(e.log().frames.size() == 48);
    }
  }

  TEST_CASE("same seed, same log; different seed, different log") {
    PlantConfig noisy;
    noisy.noise_std = 0.5;
    const WorldState w = start({80, 100}, {100, 100});
    const TrialLog a = run_closed_loop(straight(), noisy, w, 42);
    const TrialLog b = run_closed_loop(straight(), noisy, w, 42);
    const TrialLog c = run_closed_loop(straight(), noisy, w, 43);
    CHECK(same_frames(a, b));
    CHECK_FALSE(same_frames(a, c));
  }

  TEST_CASE("observer noise") {
    Observer quiet(0.0, 9);
    const WorldState w = start({1, 2}, {30, 4});
    CHECK(quiet.observe(w).object == w.object);
    Observer loud(0.5, 9);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double e = loud.observe(w).robot.x - 1.0;
      sum += e;
      sq += e * e;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::sqrt(sq / n) == doctest::Approx(0.5).epsilon(0.03));
  }
}
