#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace petlock {

enum class ErrorKind {
  parameter,
  jam,
  stall,
  degenerate_profile,
  calibration_failure,
  protocol,
  not_connected,
  unreachable,
  framing,
  purpose,
  port_in_use,
  unsupported,
  statically_indeterminate,
  unknown_entity,
  schema,
};

inline std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::jam: return "jam";
    case ErrorKind::stall: return "stall";
    case ErrorKind::degenerate_profile: return "degenerate_profile";
    case ErrorKind::calibration_failure: return "calibration_failure";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::not_connected: return "not_connected";
    case ErrorKind::unreachable: return "unreachable";
    case ErrorKind::framing: return "framing";
    case ErrorKind::purpose: return "purpose";
    case ErrorKind::port_in_use: return "port_in_use";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::statically_indeterminate: return "statically_indeterminate";
    case ErrorKind::unknown_entity: return "unknown_entity";
    case ErrorKind::schema: return "schema";
  }
  return "unknown";
}

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it onto an error payload without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace petlock
