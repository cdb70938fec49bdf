#pragma once

#include "sqda/array.hpp"
#include "sqda/gates.hpp"

#include <map>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

namespace sqda {

enum class OpType { G1, G2, Measure, ShuttleUp, ShuttleDown, ShuttleLeft, ShuttleRight };

[[nodiscard]] std::string to_string(OpType type);
[[nodiscard]] bool isShuttle(OpType type);

/// One operation inside a step label: a gate, a measurement, or a shuttle.
struct Operation {
  OpType type = OpType::G1;
  int e1 = -1;
  int e2 = -1; // only for G2
  GatePayload gate{};

  static Operation g1(int e, GatePayload payload) { return {OpType::G1, e, -1, payload}; }
  static Operation g2(int a, int b, GatePayload payload) { return {OpType::G2, a, b, payload}; }
  static Operation measure(int e) {
    return {OpType::Measure, e, -1, GatePayload{GateKind::Measure, 0.0}};
  }
  static Operation shuttle(OpType dir, int e) { return {dir, e, -1, {}}; }

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A set of simultaneous operations forming one transition label.
struct StepLabel {
  std::vector<Operation> ops;

  [[nodiscard]] bool contains(OpType type, int e) const;
  /// Unordered g2 membership.
  [[nodiscard]] bool containsG2(int a, int b) const;
};

/// An injective electron -> dot placement over a shared ArrayConfig.
/// Immutable snapshot; applyStep returns a new state.
class MachineState {
public:
  MachineState(std::shared_ptr<const ArrayConfig> config, std::map<int, Dot> placement);

  [[nodiscard]] const ArrayConfig& config() const { return *config_; }
  [[nodiscard]] const std::shared_ptr<const ArrayConfig>& configPtr() const { return config_; }
  [[nodiscard]] const std::map<int, Dot>& placement() const { return placement_; }

  [[nodiscard]] bool hasElectron(int e) const { return placement_.contains(e); }
  [[nodiscard]] Dot position(int e) const;
  [[nodiscard]] bool occupied(Dot d) const {
    return occupiedDots_.contains(config_->dotIndex(d));
  }
  [[nodiscard]] std::optional<int> electronAt(Dot d) const;
  [[nodiscard]] std::size_t electronCount() const { return placement_.size(); }

private:
  std::shared_ptr<const ArrayConfig> config_;
  std::map<int, Dot> placement_;
  std::unordered_set<int> occupiedDots_;
};

/// Initial placement plus the ordered sequence of step labels.
struct Procedure {
  MachineState initial;
  std::vector<StepLabel> steps;
};

/// Applies one label: shuttles move one dot (all simultaneously), gates and
/// measurements leave the placement unchanged, and sh-r from the rightmost
/// column ejects the electron. Destination conflicts, moves onto occupied
/// dots, and off-grid moves (other than ejection) throw SqdaError with code
/// "collision", "off-grid", or "unknown-electron".
MachineState applyStep(const MachineState& state, const StepLabel& label);

/// True iff every occupied dot is a seat dot.
bool isReadyState(const MachineState& state);

/// Position predicates of two placed electrons. adjHor additionally needs a
/// channel; adjVer needs a channel and row-shared gates on both dots.
struct AdjacencyFlags {
  bool sameCol = false;
  bool sameRow = false;
  bool adjHor = false;
  bool adjVer = false;
};
AdjacencyFlags adjacencyPredicates(const MachineState& state, int e1, int e2);

/// Block-control predicate for a horizontal move src -> dst: true iff
/// exactly one of the two dots is in a row-shared column and dst is empty.
bool blockControl(const MachineState& state, Dot src, Dot dst);

enum class ReachResult { Yes, No, BudgetExceeded };

/// Explicit-state BFS over legal shuttle labels; small instances only.
ReachResult reachable(const MachineState& from, const MachineState& to,
                      std::size_t stateBudget);

} // namespace sqda
