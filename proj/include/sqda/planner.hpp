#pragma once

#include "sqda/machine.hpp"

#include <utility>
#include <vector>

namespace sqda {

/// The labels realizing one gate or measurement from a ready state back to a
/// ready state. gateStep indexes the label holding the g1/g2/m operation.
struct PlanSegment {
  std::vector<StepLabel> labels;
  int gateStep = -1;
  MachineState endState;

  [[nodiscard]] int shuttleCount() const;
};

enum class Side { Left, Right, Auto };
enum class CrosstalkMode { Avoid, Allow };
enum class G2Mover { E1ToE2, E2ToE1 };

/// Single-qubit gate template. Avoid mode evacuates same-column electrons
/// two columns to the chosen side (clearing the landing column first where
/// needed) and restores them afterwards; allow mode parks them in the
/// adjacent aisle, accepting the crosstalk.
PlanSegment planG1(const MachineState& state, int target, Side side,
                   CrosstalkMode mode, const GatePayload& payload);

/// True if planG1 in avoid mode can evacuate to that side.
bool g1SideFeasible(const MachineState& state, int target, Side side);

/// Total shuttle operations planG1 (avoid mode) would emit for that side,
/// including the return stages.
int countCost(const MachineState& state, int target, Side side);

struct G2Outcome {
  int mover = -1;
  Dot seatOfE1{};
  Dot seatOfE2{};
  int shuttleCount = 0;
  MachineState endState;
};

/// Two-qubit gate template: the mover travels aisle -> bus row -> meeting
/// aisle, the stayer joins it vertically adjacent, and both return to the
/// nearest empty seats afterwards (ties broken smallest row, then column).
std::pair<PlanSegment, G2Outcome> planG2(const MachineState& state, int e1, int e2,
                                         G2Mover mover, const GatePayload& payload);

/// All end placements reachable by varying the mover choice and the
/// tied-nearest return seats, in deterministic order (mover e1 first, seats
/// row-then-column).
std::vector<std::pair<PlanSegment, G2Outcome>>
enumerateG2Outcomes(const MachineState& state, int e1, int e2,
                    const GatePayload& payload);

/// Measurement template: travel to the rightmost column via the right aisle
/// and the bus row, measure, eject. The electron leaves the array.
PlanSegment planMeasure(const MachineState& state, int target);

} // namespace sqda
