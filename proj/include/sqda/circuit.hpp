#pragma once

#include "sqda/gates.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace sqda {

/// A native gate: rx/ry (one operand, theta), swap_pow (two operands,
/// alpha), or measure (one operand).
struct Gate {
  int id = -1;
  GateKind kind = GateKind::Rx;
  double param = 0.0;
  int q1 = -1;
  int q2 = -1; // only for swap_pow

  [[nodiscard]] bool isTwoQubit() const { return kind == GateKind::SwapPow; }
  [[nodiscard]] GatePayload payload() const { return GatePayload{kind, param}; }
};

/// Dependency DAG of a native-gate circuit. Edges follow the per-qubit
/// last-writer rule: g1 -> g2 iff they share a qubit and g1 is the latest
/// earlier gate on that qubit.
class CircuitDag {
public:
  CircuitDag(int qubitCount, std::vector<Gate> gates);

  [[nodiscard]] int qubitCount() const { return qubitCount_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const Gate& gate(int id) const { return gates_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] const std::vector<int>& predecessors(int id) const {
    return pred_.at(static_cast<std::size_t>(id));
  }
  [[nodiscard]] const std::vector<int>& successors(int id) const {
    return succ_.at(static_cast<std::size_t>(id));
  }

  /// All edges (from, to), sorted.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;

  /// Gates whose predecessors are all executed, excluding executed gates,
  /// sorted by id. Throws if executed is not downward-closed.
  [[nodiscard]] std::vector<int> frontLayer(const std::set<int>& executed) const;

  [[nodiscard]] int gateCount(GateKind kind) const;

private:
  int qubitCount_;
  std::vector<Gate> gates_;
  std::vector<std::vector<int>> pred_;
  std::vector<std::vector<int>> succ_;
};

CircuitDag parseCircuit(const std::string& text);
std::string serializeCircuit(const CircuitDag& dag);

/// Uniform random circuit over {rx, ry, swap_pow}; theta in [0, 2pi),
/// alpha in (0, 1], operands uniform distinct. With measureAll, one
/// measurement per qubit is appended. Deterministic for a fixed seed.
CircuitDag randomCircuit(int qubits, int gates, std::uint64_t seed, bool measureAll);

} // namespace sqda
