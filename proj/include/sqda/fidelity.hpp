#pragma once

#include "sqda/machine.hpp"

namespace sqda {

struct FidelityParams {
  double fShuttle = 0.996;   // per shuttle operation
  double fCrosstalk = 0.905; // per crosstalk event
};

/// Crosstalk fidelity of a rotation by theta on an adjacent-column
/// spectator: cos^2(theta / 10).
double crosstalkFidelityFromAngle(double theta);

struct EventCounts {
  long shuttleOps = 0;
  long crosstalkEvents = 0;
};

/// Replays the procedure counting shuttle operations (including ejections)
/// and crosstalk events (per single-qubit gate, electrons one column away).
EventCounts countEvents(const Procedure& procedure);

struct FidelityReport {
  EventCounts counts;
  double fidelity = 1.0;
  double logFidelity = 0.0; // natural log
};

FidelityReport estimateFidelity(const Procedure& procedure, const FidelityParams& params);

/// Angle-dependent variant: each crosstalk event costs the fidelity of the
/// triggering rotation, crosstalkFidelityFromAngle(theta), instead of a
/// constant factor.
FidelityReport estimateFidelityAngleModel(const Procedure& procedure, double fShuttle);

/// Closed-form per-procedure event estimates for an n-qubit, m-two-qubit-gate
/// circuit on a sqrt(n)-scaled array, and the slope of log-fidelity in m.
struct AsymptoticEstimate {
  double shuttleOps = 0.0;
  double crosstalkEvents = 0.0;
  double logFidelity = 0.0;       // natural log
  double logFidelitySlope = 0.0;  // d(ln fidelity)/dm
};

enum class CrosstalkPolicy { Avoid, Allow };

AsymptoticEstimate asymptoticEstimate(double n, double m, const FidelityParams& params,
                                      CrosstalkPolicy policy);

} // namespace sqda
