#include "micropush/plant.hpp"

#include <cmath>

#include "micropush/errors.hpp"

namespace micropush {

namespace {

// sin(pi) and cos(pi/2) are ~1e-16, not zero; the pure modes must stay pure.
double snap(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

void resolve_contact(WorldState& w, const Position2& push_dir) {
  const double contact = w.robot_radius + w.object_radius;
  Position2 d = w.object - w.robot;
  const double rho = length(d);
  if (rho >= contact) return;
  if (rho == 0.0) {
    d = push_dir;
  } else {
    d = (1.0 / rho) * d;
  }
  w.object = w.robot + contact * d;
}

}  // namespace

void WorldState::validate() const {
  if (!std::isfinite(robot.x) || !std::isfinite(robot.y) || !std::isfinite(object.x) || !std::isfinite(object.y)) {
    throw InvalidConfig("world positions must be finite");
  }
  if (!(robot_radius > 0.0) || !(object_radius > 0.0)) throw InvalidConfig("radii must be positive");
  if (gap() < -1e-6) throw InvalidConfig("robot and object overlap");
}

void PlantConfig::validate() const {
  if (!(slip_factor > 0.0 && slip_factor <= 1.0)) throw InvalidConfig("slip factor must lie in (0, 1]");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidConfig("dt must be positive");
  if (!(stepout_hz > 0.0)) throw InvalidConfig("step-out frequency must be positive");
  if (!(noise_std >= 0.0)) throw InvalidConfig("noise std must be >= 0");
  if (!(vortex_gain >= 0.0)) throw InvalidConfig("vortex gain must be >= 0");
  if (!(post_stepout_decay >= 0.0)) throw InvalidConfig("post step-out decay must be >= 0");
  if (!(max_substep > 0.0)) throw InvalidConfig("max substep must be positive");
}

double synchronous_frequency(double freq_hz, const PlantConfig& cfg) {
  if (freq_hz <= cfg.stepout_hz) return freq_hz;
  return cfg.stepout_hz * std::pow(cfg.stepout_hz / freq_hz, cfg.post_stepout_decay);
}

double rolling_speed(double freq_hz, const PlantConfig& cfg, double radius) {
  return cfg.slip_factor * kTwoPi * synchronous_frequency(freq_hz, cfg) * radius;
}

double vortex_angular_speed(const ActuationState& cmd, const PlantConfig& cfg, double robot_radius, double rho) {
  const double spin = snap(-std::cos(cmd.gamma));
  if (spin == 0.0 || rho <= 0.0) return 0.0;
  const double decay = std::pow(robot_radius / rho, 3);
  return spin * cfg.vortex_gain * kTwoPi * synchronous_frequency(cmd.freq_hz, cfg) * decay;
}

WorldState advance(const WorldState& w, const ActuationState& cmd, const PlantConfig& cfg) {
  WorldState next = w;
  next.time = w.time + cfg.dt;

  const Position2 rel = w.object - w.robot;
  const double omega = vortex_angular_speed(cmd, cfg, w.robot_radius, length(rel));
  if (omega != 0.0) {
    // Positive angle turns +x toward +y, i.e. clockwise on a y-down screen.
    const double a = omega * cfg.dt;
    const double c = std::cos(a), s = std::sin(a);
    next.object = w.robot + Position2{c * rel.x - s * rel.y, s * rel.x + c * rel.y};
  }

  const double roll = snap(std::sin(cmd.gamma));
  const double travel = roll * rolling_speed(cmd.freq_hz, cfg, w.robot_radius) * cfg.dt;
  if (travel > 0.0) {
    const double theta = cmd.alpha - kPi / 2.0;
    const Position2 dir{std::cos(theta), -std::sin(theta)};
    const int substeps = static_cast<int>(std::ceil(travel / cfg.max_substep));
    const Position2 delta = (travel / substeps) * dir;
    for (int i = 0; i < substeps; ++i) {
      next.robot += delta;
      resolve_contact(next, dir);
    }
  }
  return next;
}

}  // namespace micropush
