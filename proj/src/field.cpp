#include "micropush/field.hpp"

#include <algorithm>
#include <string>

#include "micropush/errors.hpp"

namespace micropush {

namespace {

// Field direction for an accumulated rotation phase 2*pi*f*t.
Vec3 field_at_phase(double alpha, double gamma, double phase) {
  const double c = std::cos(-phase);
  const double s = std::sin(-phase);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  return {-cg * ca * c - sa * s, -cg * sa * c + ca * s, sg * c};
}

}  // namespace

double wrap_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to exactly 2pi
  if (a >= kTwoPi) a = 0.0;
  return a;
}

ActuationState ActuationState::normalized() const {
  if (!std::isfinite(alpha)) throw InvalidConfig("alpha must be finite");
  if (!(gamma >= 0.0 && gamma <= kPi)) throw InvalidConfig("gamma must lie in [0, pi]");
  if (!std::isfinite(freq_hz) || freq_hz < 0.0) throw InvalidConfig("frequency must be finite and >= 0");
  return {wrap_angle(alpha), gamma, freq_hz};
}

FieldSample field_vector(const ActuationState& cmd, double t) {
  return {field_at_phase(cmd.alpha, cmd.gamma, kTwoPi * cmd.freq_hz * t), t};
}

Vec3 rotation_axis(const ActuationState& cmd) {
  const double sg = std::sin(cmd.gamma);
  return {sg * std::cos(cmd.alpha), sg * std::sin(cmd.alpha), std::cos(cmd.gamma)};
}

CoilDuty scale_to_coils(const FieldSample& s, const Vec3& caps_mT, double target_mT) {
  for (double cap : caps_mT) {
    if (!(cap > 0.0)) throw InvalidConfig("coil caps must be positive");
  }
  if (!(target_mT >= 0.0)) throw InvalidConfig("target field must be nonnegative");
  if (std::abs(norm(s.b) - 1.0) > 1e-6) {
    throw InvalidConfig("field sample is not unit length (|b| = " + std::to_string(norm(s.b)) + ")");
  }
  auto duty = [&](int i) { return std::clamp(s.b[i] * target_mT / caps_mT[i], -1.0, 1.0); };
  return {duty(0), duty(1), duty(2)};
}

void FieldClock::command(const ActuationState& cmd, double now) {
  if (phase_continuous_) {
    phase_offset_ += kTwoPi * cmd_.freq_hz * (now - issued_at_);
    phase_offset_ = std::fmod(phase_offset_, kTwoPi);
  }
  cmd_ = cmd;
  issued_at_ = now;
}

FieldSample FieldClock::sample(double now) const {
  const double elapsed = now - issued_at_;
  const double phase = phase_offset_ + kTwoPi * cmd_.freq_hz * elapsed;
  return {field_at_phase(cmd_.alpha, cmd_.gamma, phase), elapsed};
}

}  // namespace micropush
