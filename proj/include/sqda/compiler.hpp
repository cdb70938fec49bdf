#pragma once

#include "sqda/circuit.hpp"
#include "sqda/planner.hpp"

#include <memory>
#include <set>

namespace sqda {

enum class CompileMode { Naive, Heuristic };

struct CompileOptions {
  CompileMode mode = CompileMode::Heuristic;
  CrosstalkMode crosstalk = CrosstalkMode::Avoid;
  int lookaheadDepth = 5;
  double lookaheadDecay = 0.5;
};

struct CompileStats {
  long shuttleOps = 0;
  long gateOps = 0;
  long measureOps = 0;
  long steps = 0;
  double wallTimeMs = 0.0;
};

struct CompileResult {
  Procedure procedure;
  CompileStats stats;
};

/// Greedy interaction-weighted placement: qubits in decreasing weighted
/// degree order each take the free seat minimizing interaction distance to
/// already-placed partners plus a measurement-order pull toward the right
/// edge (weighted 1/qubit_count).
MachineState initialPlacement(std::shared_ptr<const ArrayConfig> config,
                              const CircuitDag& dag);

/// Lookahead score of a placement: minus the decay-weighted Manhattan
/// distances of the two-qubit gates in the next `depth` front layers.
/// Higher is better.
double evalPlacement(const MachineState& state, const CircuitDag& dag,
                     const std::set<int>& executed, int depth, double decay);

/// Translates the circuit into a verified-constraint shuttling procedure,
/// executing one front-layer gate per iteration in ascending id order.
CompileResult compileCircuit(std::shared_ptr<const ArrayConfig> config,
                             const CircuitDag& dag, const CompileOptions& options);

} // namespace sqda
