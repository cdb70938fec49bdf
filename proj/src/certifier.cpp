#include "sqda/constraints.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqda {

namespace {

// A state is the tuple of dot indices of electrons 0..n-1, packed into a
// u64 byte per electron (certifier scale: <= 8 electrons, <= 254 dots).
using StateKey = std::uint64_t;

StateKey packState(const std::vector<std::uint8_t>& pos) {
  StateKey key = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    key |= static_cast<StateKey>(pos[i]) << (8 * i);
  }
  return key;
}

std::vector<std::uint8_t> unpackState(StateKey key, int n) {
  std::vector<std::uint8_t> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pos[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(key >> (8 * i));
  }
  return pos;
}

MachineState toMachineState(const std::shared_ptr<const ArrayConfig>& config,
                            StateKey key, int n) {
  std::map<int, Dot> placement;
  const auto pos = unpackState(key, n);
  for (int i = 0; i < n; ++i) {
    placement[i] = config->dotAt(pos[static_cast<std::size_t>(i)]);
  }
  return MachineState(config, std::move(placement));
}

std::string describeState(const ArrayConfig& config, StateKey key, int n) {
  std::ostringstream os;
  const auto pos = unpackState(key, n);
  for (int i = 0; i < n; ++i) {
    const Dot d = config.dotAt(pos[static_cast<std::size_t>(i)]);
    os << (i ? " " : "") << "b" << i << "@(" << d.row << "," << d.col << ")";
  }
  return os.str();
}

struct StateFacts {
  std::vector<StateKey> successors;
  std::uint32_t g1Mask = 0;  // bit e: {(g1,e)} alone is legal
  std::uint32_t mMask = 0;   // bit e: {(m,e)} alone is legal
  std::uint64_t g2Mask = 0;  // bit pairIndex(a,b): {(g2,a,b)} alone is legal
};

int pairIndex(int a, int b, int n) {
  if (a > b) {
    std::swap(a, b);
  }
  // index of (a,b), a < b, in lexicographic pair order
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

StateFacts expandState(const std::shared_ptr<const ArrayConfig>& config,
                       StateKey key, int n) {
  StateFacts facts;
  const MachineState state = toMachineState(config, key, n);
  for (const StepLabel& label : legalShuttleLabels(state)) {
    const MachineState next = applyStep(state, label);
    std::vector<std::uint8_t> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pos[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(config->dotIndex(next.position(i)));
    }
    facts.successors.push_back(packState(pos));
  }
  const auto singletonLegal = [&](const Operation& op) {
    StepLabel label;
    label.ops.push_back(op);
    return checkLabel(state, label, CrosstalkRule::Enforce).violations.empty();
  };
  const GatePayload g1Payload{GateKind::Rx, 0.0};
  const GatePayload g2Payload{GateKind::SwapPow, 1.0};
  for (int e = 0; e < n; ++e) {
    if (singletonLegal(Operation::g1(e, g1Payload))) {
      facts.g1Mask |= 1U << e;
    }
    if (singletonLegal(Operation::measure(e))) {
      facts.mMask |= 1U << e;
    }
    for (int f = e + 1; f < n; ++f) {
      if (singletonLegal(Operation::g2(e, f, g2Payload))) {
        facts.g2Mask |= 1ULL << pairIndex(e, f, n);
      }
    }
  }
  return facts;
}

} // namespace

CertReport certifyConditions(const ArrayConfig& configIn, int electronCount,
                             std::size_t stateBudget, bool parallel) {
  CertReport report;
  auto config = std::make_shared<const ArrayConfig>(configIn);
  const int n = electronCount;
  if (n < 0 || n > 8 || config->dotCount() > 254) {
    throw SqdaError("budget-exceeded",
                    "certifier supports at most 8 electrons on at most 254 dots");
  }
  const std::vector<Dot> seats = seatDots(*config);
  if (static_cast<std::size_t>(n) > seats.size()) {
    throw SqdaError("too-many-qubits", "more electrons than seat dots");
  }

  // Ready states: every ordered placement of the n electrons on seat dots.
  std::vector<StateKey> readyStates;
  {
    std::vector<std::uint8_t> pos;
    std::vector<bool> used(seats.size(), false);
    const auto recurse = [&](auto&& self, int depth) -> void {
      if (depth == n) {
        readyStates.push_back(packState(pos));
        return;
      }
      for (std::size_t i = 0; i < seats.size(); ++i) {
        if (used[i]) {
          continue;
        }
        used[i] = true;
        pos.push_back(static_cast<std::uint8_t>(config->dotIndex(seats[i])));
        self(self, depth + 1);
        pos.pop_back();
        used[i] = false;
      }
    };
    recurse(recurse, 0);
  }

  // Multi-source BFS over the shuttle transition graph.
  std::unordered_map<StateKey, int> stateId;
  std::vector<StateKey> states;
  std::vector<std::vector<int>> adjacency;
  std::vector<StateFacts> allFacts;
  bool budgetExceeded = false;

  const auto intern = [&](StateKey key) {
    const auto [it, inserted] = stateId.try_emplace(key, static_cast<int>(states.size()));
    if (inserted) {
      states.push_back(key);
    }
    return it->second;
  };
  std::vector<int> frontier;
  for (StateKey rs : readyStates) {
    frontier.push_back(intern(rs));
  }
  std::size_t expanded = 0;
  while (!frontier.empty() && !budgetExceeded) {
    std::vector<StateFacts> frontierFacts(frontier.size());
    const auto expandAt = [&](std::size_t i) {
      frontierFacts[i] = expandState(config, states[static_cast<std::size_t>(frontier[i])], n);
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        expandAt(i);
      }
    } else {
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        expandAt(i);
      }
    }
#else
    (void)parallel;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      expandAt(i);
    }
#endif
    expanded += frontier.size();
    std::vector<int> nextFrontier;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int id = frontier[i];
      if (static_cast<std::size_t>(id) >= adjacency.size()) {
        adjacency.resize(static_cast<std::size_t>(id) + 1);
        allFacts.resize(static_cast<std::size_t>(id) + 1);
      }
      allFacts[static_cast<std::size_t>(id)] = frontierFacts[i];
      for (StateKey succ : frontierFacts[i].successors) {
        const std::size_t before = states.size();
        const int succId = intern(succ);
        adjacency[static_cast<std::size_t>(id)].push_back(succId);
        if (states.size() > before) {
          nextFrontier.push_back(succId);
        }
      }
      if (states.size() > stateBudget) {
        budgetExceeded = true;
        break;
      }
    }
    frontier = std::move(nextFrontier);
  }
  report.statesExplored = expanded;

  const auto setAll = [&](Verdict v, const std::string& witness = "") {
    for (const char* c : {"C1", "C2", "C3", "C4", "C5", "C6"}) {
      report.verdicts[c] = {v, witness};
    }
  };
  if (budgetExceeded) {
    setAll(Verdict::Unknown, "state budget exceeded");
    report.verdicts["C5"] = {readyStates.empty() ? Verdict::Fails : Verdict::Holds, ""};
    return report;
  }

  const std::size_t total = states.size();
  adjacency.resize(total);
  allFacts.resize(total);

  std::vector<bool> isOs(total, false);
  for (std::size_t i = 0; i < total; ++i) {
    const StateFacts& f = allFacts[i];
    isOs[i] = f.g1Mask != 0 || f.mMask != 0 || f.g2Mask != 0;
  }
  const std::uint32_t allElectrons = n == 0 ? 0 : (1U << n) - 1;
  const int pairCount = n * (n - 1) / 2;
  const std::uint64_t allPairs = pairCount == 0 ? 0 : (1ULL << pairCount) - 1;

  report.verdicts["C5"] = {readyStates.empty() && n > 0 ? Verdict::Fails : Verdict::Holds, ""};

  // Tarjan SCC (iterative), then C4/C6 over the condensation. Tarjan pops
  // an SCC only after all its successors, so cross edges point to
  // lower-numbered SCCs.
  std::vector<int> sccOf(total, -1);
  int sccCount = 0;
  {
    std::vector<int> low(total, 0);
    std::vector<int> disc(total, -1);
    std::vector<bool> onStack(total, false);
    std::vector<int> stack;
    int timer = 0;
    struct Frame {
      int v;
      std::size_t edge;
    };
    for (std::size_t root = 0; root < total; ++root) {
      if (disc[root] != -1) {
        continue;
      }
      std::vector<Frame> call{{static_cast<int>(root), 0}};
      while (!call.empty()) {
        Frame& fr = call.back();
        const auto v = static_cast<std::size_t>(fr.v);
        if (fr.edge == 0) {
          disc[v] = low[v] = timer++;
          stack.push_back(fr.v);
          onStack[v] = true;
        }
        if (fr.edge < adjacency[v].size()) {
          const int w = adjacency[v][fr.edge++];
          if (disc[static_cast<std::size_t>(w)] == -1) {
            call.push_back({w, 0});
          } else if (onStack[static_cast<std::size_t>(w)]) {
            low[v] = std::min(low[v], disc[static_cast<std::size_t>(w)]);
          }
        } else {
          if (low[v] == disc[v]) {
            while (true) {
              const int w = stack.back();
              stack.pop_back();
              onStack[static_cast<std::size_t>(w)] = false;
              sccOf[static_cast<std::size_t>(w)] = sccCount;
              if (w == fr.v) {
                break;
              }
            }
            ++sccCount;
          }
          const int child = fr.v;
          call.pop_back();
          if (!call.empty()) {
            const auto p = static_cast<std::size_t>(call.back().v);
            low[p] = std::min(low[p], low[static_cast<std::size_t>(child)]);
          }
        }
      }
    }
  }
  std::vector<bool> sccHasRs(static_cast<std::size_t>(sccCount), false);
  std::vector<bool> sccHasOs(static_cast<std::size_t>(sccCount), false);
  std::vector<int> rsRepresentative(static_cast<std::size_t>(sccCount), -1);
  for (StateKey rs : readyStates) {
    const int id = stateId.at(rs);
    const auto scc = static_cast<std::size_t>(sccOf[static_cast<std::size_t>(id)]);
    sccHasRs[scc] = true;
    if (rsRepresentative[scc] == -1) {
      rsRepresentative[scc] = id;
    }
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (isOs[i]) {
      sccHasOs[static_cast<std::size_t>(sccOf[i])] = true;
    }
  }
  std::vector<std::vector<int>> sccAdj(static_cast<std::size_t>(sccCount));
  for (std::size_t v = 0; v < total; ++v) {
    for (int w : adjacency[v]) {
      const int a = sccOf[v];
      const int b = sccOf[static_cast<std::size_t>(w)];
      if (a != b) {
        sccAdj[static_cast<std::size_t>(a)].push_back(b);
      }
    }
  }
  for (auto& v : sccAdj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  // C1-C3: from every reachable state, every electron (pair) must still be
  // able to reach a state admitting its independent g1 / g2 / measurement.
  // Per-SCC masks of ops admitted anywhere in the SCC's downset; cross
  // edges point to lower SCC ids, so one ascending pass closes them.
  std::vector<std::uint32_t> downG1(static_cast<std::size_t>(sccCount), 0);
  std::vector<std::uint32_t> downM(static_cast<std::size_t>(sccCount), 0);
  std::vector<std::uint64_t> downG2(static_cast<std::size_t>(sccCount), 0);
  for (std::size_t i = 0; i < total; ++i) {
    const auto scc = static_cast<std::size_t>(sccOf[i]);
    downG1[scc] |= allFacts[i].g1Mask;
    downM[scc] |= allFacts[i].mMask;
    downG2[scc] |= allFacts[i].g2Mask;
  }
  for (int scc = 0; scc < sccCount; ++scc) {
    for (int w : sccAdj[static_cast<std::size_t>(scc)]) {
      downG1[static_cast<std::size_t>(scc)] |= downG1[static_cast<std::size_t>(w)];
      downM[static_cast<std::size_t>(scc)] |= downM[static_cast<std::size_t>(w)];
      downG2[static_cast<std::size_t>(scc)] |= downG2[static_cast<std::size_t>(w)];
    }
  }
  const auto anyStateIn = [&](int scc) {
    for (std::size_t i = 0; i < total; ++i) {
      if (sccOf[i] == scc) {
        return describeState(*config, states[i], n);
      }
    }
    return std::string{};
  };
  report.verdicts["C1"] = {Verdict::Holds, ""};
  report.verdicts["C2"] = {Verdict::Holds, ""};
  report.verdicts["C3"] = {Verdict::Holds, ""};
  for (int scc = 0; scc < sccCount; ++scc) {
    if (report.verdicts["C1"].verdict == Verdict::Holds &&
        downG1[static_cast<std::size_t>(scc)] != allElectrons) {
      for (int e = 0; e < n; ++e) {
        if (!(downG1[static_cast<std::size_t>(scc)] & (1U << e))) {
          report.verdicts["C1"] = {Verdict::Fails,
                                   "from " + anyStateIn(scc) +
                                       " no reachable state admits an independent g1 on b" +
                                       std::to_string(e)};
          break;
        }
      }
    }
    if (report.verdicts["C2"].verdict == Verdict::Holds &&
        downG2[static_cast<std::size_t>(scc)] != allPairs) {
      for (int e = 0; e < n && report.verdicts["C2"].verdict == Verdict::Holds; ++e) {
        for (int f = e + 1; f < n; ++f) {
          if (!(downG2[static_cast<std::size_t>(scc)] & (1ULL << pairIndex(e, f, n)))) {
            report.verdicts["C2"] = {Verdict::Fails,
                                     "from " + anyStateIn(scc) +
                                         " no reachable state admits an independent g2 on b" +
                                         std::to_string(e) + ",b" + std::to_string(f)};
            break;
          }
        }
      }
    }
    if (report.verdicts["C3"].verdict == Verdict::Holds &&
        downM[static_cast<std::size_t>(scc)] != allElectrons) {
      for (int e = 0; e < n; ++e) {
        if (!(downM[static_cast<std::size_t>(scc)] & (1U << e))) {
          report.verdicts["C3"] = {
              Verdict::Fails,
              "from " + anyStateIn(scc) +
                  " no reachable state admits an independent measurement on b" +
                  std::to_string(e)};
          break;
        }
      }
    }
  }

  // C4: every OS scc reachable from every RS scc.
  report.verdicts["C4"] = {Verdict::Holds, ""};
  const int osSccCount = static_cast<int>(
      std::count(sccHasOs.begin(), sccHasOs.end(), true));
  for (int scc = 0; scc < sccCount && report.verdicts["C4"].verdict == Verdict::Holds;
       ++scc) {
    if (!sccHasRs[static_cast<std::size_t>(scc)]) {
      continue;
    }
    std::vector<bool> visited(static_cast<std::size_t>(sccCount), false);
    std::vector<int> stack{scc};
    visited[static_cast<std::size_t>(scc)] = true;
    int osReached = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (sccHasOs[static_cast<std::size_t>(v)]) {
        ++osReached;
      }
      for (int w : sccAdj[static_cast<std::size_t>(v)]) {
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    if (osReached != osSccCount) {
      for (std::size_t i = 0; i < total; ++i) {
        if (isOs[i] && !visited[static_cast<std::size_t>(sccOf[i])]) {
          report.verdicts["C4"] = {
              Verdict::Fails,
              "operation state " + describeState(*config, states[i], n) +
                  " unreachable from ready state " +
                  describeState(*config,
                                states[static_cast<std::size_t>(
                                    rsRepresentative[static_cast<std::size_t>(scc)])],
                                n)};
          break;
        }
      }
    }
  }

  // C6: every reachable state can return to some ready state. Cross edges
  // point to lower SCC ids, so one ascending pass suffices.
  std::vector<bool> canReachRs(static_cast<std::size_t>(sccCount), false);
  for (int scc = 0; scc < sccCount; ++scc) {
    bool reach = sccHasRs[static_cast<std::size_t>(scc)];
    for (int w : sccAdj[static_cast<std::size_t>(scc)]) {
      reach = reach || canReachRs[static_cast<std::size_t>(w)];
    }
    canReachRs[static_cast<std::size_t>(scc)] = reach;
  }
  report.verdicts["C6"] = {Verdict::Holds, ""};
  for (std::size_t i = 0; i < total; ++i) {
    if (!canReachRs[static_cast<std::size_t>(sccOf[i])]) {
      report.verdicts["C6"] = {Verdict::Fails,
                               "state " + describeState(*config, states[i], n) +
                                   " cannot return to any ready state"};
      break;
    }
  }
  return report;
}

} // namespace sqda
