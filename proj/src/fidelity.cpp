#include "sqda/fidelity.hpp"

#include <cmath>

namespace sqda {

double crosstalkFidelityFromAngle(double theta) {
  const double c = std::cos(theta / 10.0);
  return c * c;
}

EventCounts countEvents(const Procedure& procedure) {
  EventCounts counts;
  MachineState state = procedure.initial;
  for (const StepLabel& label : procedure.steps) {
    for (const Operation& op : label.ops) {
      if (isShuttle(op.type)) {
        ++counts.shuttleOps;
      } else if (op.type == OpType::G1) {
        const Dot pos = state.position(op.e1);
        for (const auto& [e, d] : state.placement()) {
          if (e != op.e1 && std::abs(d.col - pos.col) == 1) {
            ++counts.crosstalkEvents;
          }
        }
      }
    }
    state = applyStep(state, label);
  }
  return counts;
}

FidelityReport estimateFidelity(const Procedure& procedure, const FidelityParams& params) {
  FidelityReport report;
  report.counts = countEvents(procedure);
  report.logFidelity =
      static_cast<double>(report.counts.shuttleOps) * std::log(params.fShuttle) +
      static_cast<double>(report.counts.crosstalkEvents) * std::log(params.fCrosstalk);
  report.fidelity = std::exp(report.logFidelity);
  return report;
}

FidelityReport estimateFidelityAngleModel(const Procedure& procedure, double fShuttle) {
  FidelityReport report;
  MachineState state = procedure.initial;
  for (const StepLabel& label : procedure.steps) {
    for (const Operation& op : label.ops) {
      if (isShuttle(op.type)) {
        ++report.counts.shuttleOps;
      } else if (op.type == OpType::G1) {
        const Dot pos = state.position(op.e1);
        for (const auto& [e, d] : state.placement()) {
          if (e != op.e1 && std::abs(d.col - pos.col) == 1) {
            ++report.counts.crosstalkEvents;
            report.logFidelity += std::log(crosstalkFidelityFromAngle(op.gate.param));
          }
        }
      }
    }
    state = applyStep(state, label);
  }
  report.logFidelity += static_cast<double>(report.counts.shuttleOps) * std::log(fShuttle);
  report.fidelity = std::exp(report.logFidelity);
  return report;
}

AsymptoticEstimate asymptoticEstimate(double n, double m, const FidelityParams& params,
                                      CrosstalkPolicy policy) {
  const double sn = std::sqrt(n);
  const double s2n = std::sqrt(2.0 * n);
  AsymptoticEstimate est;
  const double perGate = policy == CrosstalkPolicy::Avoid ? 6.0 : 2.0;
  est.shuttleOps = perGate * m * sn + 1.25 * m * s2n + 1.125 * n * s2n;
  est.crosstalkEvents = policy == CrosstalkPolicy::Avoid ? 0.0 : m * sn;
  est.logFidelitySlope = (perGate * sn + 1.25 * s2n) * std::log(params.fShuttle);
  if (policy == CrosstalkPolicy::Allow) {
    est.logFidelitySlope += sn * std::log(params.fCrosstalk);
  }
  est.logFidelity = est.shuttleOps * std::log(params.fShuttle) +
                    est.crosstalkEvents * std::log(params.fCrosstalk);
  return est;
}

} // namespace sqda
