#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "micropush/field.hpp"

namespace micropush {

/// Emulates the serial link to the coil driver board.
///
/// Requests, one per line:
///   F <alpha_rad> <gamma_rad> <freq_hz>   issue a command, reply with duty at t = 0
///   T <seconds>                           reply with duty `seconds` after the last F
/// Replies:
///   D <dx> <dy> <dz>                      six decimals
///   E <message>                           malformed or invalid request
/// Blank lines produce no reply.
class CoilLink {
 public:
  explicit CoilLink(Vec3 caps_mT = kDefaultCoilCapsMilliTesla, double target_mT = kDefaultTargetMilliTesla,
                    bool phase_continuous = false);

  /// Reply to one request line, including the trailing newline; empty for
  /// blank input.
  std::string handle(std::string_view line);

  /// Processes requests until end of input.
  void run(std::istream& in, std::ostream& out);

  static std::string format_duty(const CoilDuty& d);

 private:
  Vec3 caps_;
  double target_;
  FieldClock clock_;
  double now_ = 0.0;
  double issued_at_ = 0.0;
  bool has_command_ = false;
};

}  // namespace micropush
