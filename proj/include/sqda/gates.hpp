#pragma once

#include <string>

namespace sqda {

enum class GateKind { Rx, Ry, SwapPow, Measure };

[[nodiscard]] std::string to_string(GateKind kind);

/// Gate payloads are carried opaquely through planning and procedures; the
/// param is theta for rx/ry and alpha for swap_pow, unused for measure.
struct GatePayload {
  GateKind kind = GateKind::Rx;
  double param = 0.0;
  friend bool operator==(const GatePayload&, const GatePayload&) = default;
};

} // namespace sqda
