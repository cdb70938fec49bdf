#pragma once

#include "sqda/circuit.hpp"
#include "sqda/machine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqda {

/// Rule identifiers map 1:1 to the array's transition constraints; REQ22 and
/// REQ23 cover circuit-order conformance of whole procedures.
enum class Rule {
  F4,
  F5,
  F6,
  F7,
  F8,
  F9,
  F10,
  F11,
  F12,
  F13,
  F14,
  F15,
  F16,
  F17,
  F18,
  F19,
  F20,
  F21,
  REQ22,
  REQ23,
  COLLISION,
};

[[nodiscard]] std::string to_string(Rule rule);

struct Violation {
  Rule rule;
  int stepIndex = -1;
  std::vector<int> electrons;
  std::string message;
};

/// Whether crosstalk (F5) is a hard constraint or a countable event.
enum class CrosstalkRule { Enforce, Count };

struct LabelCheck {
  std::vector<Violation> violations;
  int crosstalkEvents = 0;
};

/// Checks a single label against the gate, measurement, and shuttling
/// constraints. Empty violation list iff the label is a legal transition.
LabelCheck checkLabel(const MachineState& state, const StepLabel& label,
                      CrosstalkRule crosstalkRule);

struct ProcedureReport {
  std::vector<Violation> violations;
  long crosstalkEvents = 0;
};

/// Replays the procedure, accumulating per-label violations plus the
/// circuit-order requirements: REQ22 if a DAG edge is executed out of order
/// or a DAG node never appears, REQ23 if the procedure contains a gate or
/// measurement absent from the DAG.
ProcedureReport checkProcedure(const Procedure& procedure, const CircuitDag& dag,
                               CrosstalkRule crosstalkRule);

/// Enumerates legal shuttle-only labels from a state: for every seed
/// (electron, direction), the closure of mandated co-moves, plus the
/// optional blockable-companion variants of horizontal moves. Ejection
/// labels are excluded so the electron set stays fixed.
std::vector<StepLabel> legalShuttleLabels(const MachineState& state);

enum class Verdict { Holds, Fails, Unknown };

[[nodiscard]] std::string to_string(Verdict verdict);

struct ConditionResult {
  Verdict verdict = Verdict::Unknown;
  std::string witness; // counterexample description when verdict == Fails
};

struct CertReport {
  std::map<std::string, ConditionResult> verdicts; // keys C1..C6
  std::size_t statesExplored = 0;

  [[nodiscard]] bool allHold() const;
};

/// Bounded certification of conditions C1-C6 on a small array: builds the
/// ready states for electronCount electrons, explores the induced transition
/// graph by BFS, and decides each condition over the reachable state space.
/// Exceeding the state budget turns the affected verdicts into Unknown.
CertReport certifyConditions(const ArrayConfig& config, int electronCount,
                             std::size_t stateBudget, bool parallel = true);

} // namespace sqda
