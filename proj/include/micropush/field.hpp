#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace micropush {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Commanded rotating-field parameters. Angles in radians.
///
/// `alpha` is the azimuth of the rotation axis, `gamma` its elevation:
/// gamma = pi/2 rolls the robot, 0 spins it counterclockwise and pi clockwise.
struct ActuationState {
  double alpha = 0.0;
  double gamma = kPi / 2.0;
  double freq_hz = 0.0;

  /// Copy with alpha wrapped into [0, 2pi). Throws InvalidConfig when gamma is
  /// outside [0, pi] or the frequency is negative or non-finite.
  ActuationState normalized() const;

  bool operator==(const ActuationState&) const = default;
};

inline constexpr double kGammaRoll = kPi / 2.0;
inline constexpr double kGammaSpinCcw = 0.0;
inline constexpr double kGammaSpinCw = kPi;

/// Unit-amplitude field direction at time `t` seconds after command issue.
struct FieldSample {
  Vec3 b{};
  double t = 0.0;
};

/// Signed duty fractions per coil axis; sign is polarity.
struct CoilDuty {
  double duty_x = 0.0;
  double duty_y = 0.0;
  double duty_z = 0.0;
};

/// Full-duty field strength of each coil pair, mT.
inline constexpr Vec3 kDefaultCoilCapsMilliTesla{3.0, 5.0, 13.0};
inline constexpr double kDefaultTargetMilliTesla = 5.0;

double wrap_angle(double radians);

/// Rotating field B(t) with phase argument -2*pi*f*t.
FieldSample field_vector(const ActuationState& cmd, double t);

/// Unit axis u with B(t) . u = 0 for all t.
Vec3 rotation_axis(const ActuationState& cmd);

/// duty_i = clamp(b_i * target / caps_i, -1, 1).
/// Throws InvalidConfig for nonpositive caps or a non-unit sample.
CoilDuty scale_to_coils(const FieldSample& s, const Vec3& caps_mT = kDefaultCoilCapsMilliTesla,
                        double target_mT = kDefaultTargetMilliTesla);

/// Tracks the field phase clock across command changes.
///
/// With `phase_continuous` off (the default) every new command restarts its
/// own clock at zero; with it on, the phase angle carries over so the field
/// direction does not jump when the frequency changes.
class FieldClock {
 public:
  explicit FieldClock(bool phase_continuous = false) : phase_continuous_(phase_continuous) {}

  void command(const ActuationState& cmd, double now);
  FieldSample sample(double now) const;
  const ActuationState& current() const { return cmd_; }

 private:
  bool phase_continuous_;
  ActuationState cmd_{};
  double issued_at_ = 0.0;
  double phase_offset_ = 0.0;  // seconds-equivalent shift, only when continuous
};

}  // namespace micropush
