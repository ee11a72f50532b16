#include "micropush/coil_link.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "micropush/errors.hpp"

namespace micropush {

namespace {

// Six decimals, with tiny magnitudes printed as 0 rather than -0.
std::string six(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string error_reply(const std::string& msg) { return "E " + msg + "\n"; }

}  // namespace

CoilLink::CoilLink(Vec3 caps_mT, double target_mT, bool phase_continuous)
    : caps_(caps_mT), target_(target_mT), clock_(phase_continuous) {
  for (double c : caps_) {
    if (!(c > 0.0)) throw InvalidConfig("coil caps must be positive");
  }
}

std::string CoilLink::format_duty(const CoilDuty& d) {
  return "D " + six(d.duty_x) + " " + six(d.duty_y) + " " + six(d.duty_z) + "\n";
}

std::string CoilLink::handle(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string op;
  if (!(in >> op)) return {};
  std::string extra;
  try {
    if (op == "F") {
      ActuationState cmd;
      if (!(in >> cmd.alpha >> cmd.gamma >> cmd.freq_hz)) return error_reply("F expects <alpha> <gamma> <freq>");
      if (in >> extra) return error_reply("unexpected token '" + extra + "'");
      cmd = cmd.normalized();
      clock_.command(cmd, now_);
      issued_at_ = now_;
      has_command_ = true;
      return format_duty(scale_to_coils(clock_.sample(now_), caps_, target_));
    }
    if (op == "T") {
      double elapsed = 0.0;
      if (!(in >> elapsed) || !std::isfinite(elapsed) || elapsed < 0.0) return error_reply("T expects <seconds> >= 0");
      if (in >> extra) return error_reply("unexpected token '" + extra + "'");
      if (!has_command_) return error_reply("no field command issued");
      now_ = issued_at_ + elapsed;
      return format_duty(scale_to_coils(clock_.sample(now_), caps_, target_));
    }
  } catch (const Error& e) {
    return error_reply(e.what());
  }
  return error_reply("unknown record '" + op + "'");
}

void CoilLink::run(std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) out << handle(line);
}

}  // namespace micropush
