#pragma once

#include "micropush/field.hpp"
#include "micropush/geometry.hpp"

namespace micropush {

/// Robot and object disc centres in image coordinates (µm) plus sim time (s).
struct WorldState {
  Position2 robot;
  Position2 object;
  double robot_radius = 5.0;
  double object_radius = 5.0;
  double time = 0.0;

  /// Surface-to-surface clearance; negative means overlap.
  double gap() const { return distance(robot, object) - (robot_radius + object_radius); }
  /// Throws InvalidConfig on non-finite positions, nonpositive radii or overlap.
  void validate() const;
};

/// Slip factor calibrated from a 538 µm open-loop traverse in 31.85 s at 15 Hz.
inline constexpr double kDefaultSlipFactor = 0.0359;

struct PlantConfig {
  double slip_factor = kDefaultSlipFactor;
  double stepout_hz = 60.0;
  /// Scales the vortex angular speed imposed on the object during spins.
  double vortex_gain = 0.3;
  /// Std-dev of the Gaussian offset added to each observed coordinate, µm.
  double noise_std = 0.0;
  double dt = 1.0 / 24.0;
  double post_stepout_decay = 1.0;
  /// Upper bound on robot travel per contact-resolution substep, µm.
  double max_substep = 0.25;

  void validate() const;
};

/// Rotation rate the robot actually follows: f below step-out, decaying as
/// stepout * (stepout / f)^decay above it.
double synchronous_frequency(double freq_hz, const PlantConfig& cfg);

/// Rolling speed k * 2 pi f_sync * r, µm/s.
double rolling_speed(double freq_hz, const PlantConfig& cfg, double radius);

/// Angular speed (rad/s, positive = clockwise on screen) at which the spin
/// vortex carries a particle at centre distance `rho` around the robot.
double vortex_angular_speed(const ActuationState& cmd, const PlantConfig& cfg, double robot_radius, double rho);

/// One fixed step of the noiseless plant.
///
/// Rolling (gamma = pi/2) translates the robot along screen direction
/// alpha - pi/2 with the y axis flipped. Spinning (gamma = 0 or pi) keeps the
/// robot in place and carries the object on a circular arc about it with a
/// 1/rho^3 rate decay. Intermediate gamma blends the two by sin and cos.
/// Overlap is resolved by pushing the object out along the line of centres.
WorldState advance(const WorldState& w, const ActuationState& cmd, const PlantConfig& cfg);

}  // namespace micropush
