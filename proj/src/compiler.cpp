#include "sqda/compiler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

namespace sqda {

namespace {

int manhattan(Dot a, Dot b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

} // namespace

MachineState initialPlacement(std::shared_ptr<const ArrayConfig> config,
                              const CircuitDag& dag) {
  const int n = dag.qubitCount();
  const std::vector<Dot> seats = seatDots(*config);
  if (static_cast<std::size_t>(n) > seats.size()) {
    throw SqdaError("too-many-qubits", "circuit needs " + std::to_string(n) +
                                           " qubits but the array has " +
                                           std::to_string(seats.size()) + " seats");
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<double> measureWeight(n, 0.0);
  int measureSeen = 0;
  const int measureTotal = dag.gateCount(GateKind::Measure);
  for (const Gate& g : dag.gates()) {
    if (g.kind == GateKind::SwapPow) {
      w[g.q1][g.q2] += 1.0;
      w[g.q2][g.q1] += 1.0;
    } else if (g.kind == GateKind::Measure) {
      measureWeight[g.q1] = static_cast<double>(measureTotal - measureSeen);
      ++measureSeen;
    }
  }
  std::vector<int> order(n);
  for (int q = 0; q < n; ++q) {
    order[q] = q;
  }
  std::vector<double> degree(n, 0.0);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      degree[q] += w[q][p];
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degree[a] > degree[b]; });
  const double mu = 1.0 / static_cast<double>(n);
  std::map<int, Dot> placement;
  std::vector<bool> taken(seats.size(), false);
  for (int q : order) {
    int best = -1;
    double bestCost = 0.0;
    for (std::size_t i = 0; i < seats.size(); ++i) {
      if (taken[i]) {
        continue;
      }
      double cost = mu * measureWeight[q] *
                    static_cast<double>(config->cols() - seats[i].col);
      for (const auto& [p, d] : placement) {
        cost += w[q][p] * manhattan(seats[i], d);
      }
      if (best < 0 || cost < bestCost) {
        best = static_cast<int>(i);
        bestCost = cost;
      }
    }
    taken[static_cast<std::size_t>(best)] = true;
    placement.emplace(q, seats[static_cast<std::size_t>(best)]);
  }
  return MachineState(std::move(config), std::move(placement));
}

double evalPlacement(const MachineState& state, const CircuitDag& dag,
                     const std::set<int>& executed, int depth, double decay) {
  std::set<int> done = executed;
  double score = 0.0;
  double weight = 1.0;
  for (int layer = 0; layer < depth; ++layer) {
    const std::vector<int> front = dag.frontLayer(done);
    if (front.empty()) {
      break;
    }
    for (int id : front) {
      const Gate& g = dag.gate(id);
      if (g.isTwoQubit() && state.hasElectron(g.q1) && state.hasElectron(g.q2)) {
        score -= weight * manhattan(state.position(g.q1), state.position(g.q2));
      }
      done.insert(id);
    }
    weight *= decay;
  }
  return score;
}

namespace {

Side chooseG1Side(const MachineState& state, const Gate& g, CompileMode mode) {
  if (mode == CompileMode::Naive) {
    return g1SideFeasible(state, g.q1, Side::Left) ? Side::Left : Side::Right;
  }
  const int c = state.position(g.q1).col;
  const int cols = state.config().cols();
  if (c >= cols - 2) {
    return Side::Left;
  }
  if (c <= 3) {
    return Side::Right;
  }
  return countCost(state, g.q1, Side::Left) > countCost(state, g.q1, Side::Right)
             ? Side::Right
             : Side::Left;
}

} // namespace

CompileResult compileCircuit(std::shared_ptr<const ArrayConfig> config,
                             const CircuitDag& dag, const CompileOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  MachineState state = initialPlacement(config, dag);
  Procedure procedure{state, {}};
  CompileStats stats;
  std::set<int> executed;
  while (true) {
    const std::vector<int> front = dag.frontLayer(executed);
    if (front.empty()) {
      break;
    }
    const int id = front.front();
    const Gate& g = dag.gate(id);
    PlanSegment segment = [&]() -> PlanSegment {
      if (g.isTwoQubit()) {
        auto outcomes = enumerateG2Outcomes(state, g.q1, g.q2, g.payload());
        std::size_t pick = 0;
        if (options.mode == CompileMode::Heuristic) {
          std::set<int> after = executed;
          after.insert(id);
          double bestScore = 0.0;
          for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const double score =
                evalPlacement(outcomes[i].second.endState, dag, after,
                              options.lookaheadDepth, options.lookaheadDecay);
            if (i == 0 || score > bestScore) {
              bestScore = score;
              pick = i;
            }
          }
        }
        ++stats.gateOps;
        return std::move(outcomes[pick].first);
      }
      if (g.kind == GateKind::Measure) {
        ++stats.measureOps;
        return planMeasure(state, g.q1);
      }
      const Side side = chooseG1Side(state, g, options.mode);
      ++stats.gateOps;
      return planG1(state, g.q1, side, options.crosstalk, g.payload());
    }();
    stats.shuttleOps += segment.shuttleCount();
    stats.steps += static_cast<long>(segment.labels.size());
    for (StepLabel& label : segment.labels) {
      procedure.steps.push_back(std::move(label));
    }
    state = std::move(segment.endState);
    executed.insert(id);
  }
  stats.wallTimeMs = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return CompileResult{std::move(procedure), stats};
}

} // namespace sqda
