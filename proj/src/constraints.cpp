#include "sqda/constraints.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sqda {

std::string to_string(Rule rule) {
  switch (rule) {
  case Rule::F4:
    return "F4";
  case Rule::F5:
    return "F5";
  case Rule::F6:
    return "F6";
  case Rule::F7:
    return "F7";
  case Rule::F8:
    return "F8";
  case Rule::F9:
    return "F9";
  case Rule::F10:
    return "F10";
  case Rule::F11:
    return "F11";
  case Rule::F12:
    return "F12";
  case Rule::F13:
    return "F13";
  case Rule::F14:
    return "F14";
  case Rule::F15:
    return "F15";
  case Rule::F16:
    return "F16";
  case Rule::F17:
    return "F17";
  case Rule::F18:
    return "F18";
  case Rule::F19:
    return "F19";
  case Rule::F20:
    return "F20";
  case Rule::F21:
    return "F21";
  case Rule::REQ22:
    return "REQ22";
  case Rule::REQ23:
    return "REQ23";
  case Rule::COLLISION:
    return "COLLISION";
  }
  return "?";
}

namespace {

struct ShuttleInfo {
  int dRow;
  int dCol;
  bool vertical;
  Rule rule; // the matching shuttle precondition rule
};

ShuttleInfo shuttleInfo(OpType type) {
  switch (type) {
  case OpType::ShuttleUp:
    return {-1, 0, true, Rule::F13};
  case OpType::ShuttleDown:
    return {1, 0, true, Rule::F14};
  case OpType::ShuttleLeft:
    return {0, -1, false, Rule::F15};
  default:
    return {0, 1, false, Rule::F16};
  }
}

Dot shuttleDest(Dot src, OpType type) {
  const ShuttleInfo info = shuttleInfo(type);
  return Dot{src.row + info.dRow, src.col + info.dCol};
}

std::string dotStr(Dot d) {
  return "(" + std::to_string(d.row) + "," + std::to_string(d.col) + ")";
}

} // namespace

LabelCheck checkLabel(const MachineState& state, const StepLabel& label,
                      CrosstalkRule crosstalkRule) {
  LabelCheck result;
  const ArrayConfig& config = state.config();
  const auto addViolation = [&](Rule rule, std::vector<int> electrons,
                                std::string message) {
    result.violations.push_back(
        {rule, -1, std::move(electrons), std::move(message)});
  };

  // F21: at most one operation per electron.
  std::map<int, int> opsPerElectron;
  for (const Operation& op : label.ops) {
    if (!state.hasElectron(op.e1) ||
        (op.type == OpType::G2 && !state.hasElectron(op.e2))) {
      throw SqdaError("unknown-electron", "label references an absent electron");
    }
    ++opsPerElectron[op.e1];
    if (op.type == OpType::G2) {
      ++opsPerElectron[op.e2];
    }
  }
  for (const auto& [e, n] : opsPerElectron) {
    if (n > 1) {
      addViolation(Rule::F21, {e},
                   "electron " + std::to_string(e) + " has " + std::to_string(n) +
                       " simultaneous operations");
    }
  }

  std::unordered_set<int> claimedDests;
  for (const Operation& op : label.ops) {
    switch (op.type) {
    case OpType::G1: {
      const Dot pos = state.position(op.e1);
      for (const auto& [k, kPos] : state.placement()) {
        if (k == op.e1) {
          continue;
        }
        if (kPos.col == pos.col && !label.contains(OpType::G1, k)) {
          addViolation(Rule::F4, {op.e1, k},
                       "g1 on " + std::to_string(op.e1) +
                           " is co-executed on same-column electron " +
                           std::to_string(k) + " missing from the label");
        }
        if (std::abs(kPos.col - pos.col) == 1) {
          if (crosstalkRule == CrosstalkRule::Enforce) {
            addViolation(Rule::F5, {op.e1, k},
                         "electron " + std::to_string(k) +
                             " in an adjacent column suffers crosstalk from g1 on " +
                             std::to_string(op.e1));
          } else {
            ++result.crosstalkEvents;
          }
        }
      }
      break;
    }
    case OpType::G2: {
      const AdjacencyFlags adj = adjacencyPredicates(state, op.e1, op.e2);
      if (!adj.adjHor && !adj.adjVer) {
        addViolation(Rule::F6, {op.e1, op.e2},
                     "g2 operands are not channel-adjacent");
        break;
      }
      const Dot p1 = state.position(op.e1);
      const Dot p2 = state.position(op.e2);
      // Co-executed pairs (F7/F8) over all other electron pairs.
      for (const auto& [k1, k1Pos] : state.placement()) {
        for (const auto& [k2, k2Pos] : state.placement()) {
          if (k1 >= k2) {
            continue;
          }
          if ((k1 == op.e1 && k2 == op.e2) || (k1 == op.e2 && k2 == op.e1)) {
            continue;
          }
          const AdjacencyFlags kAdj = adjacencyPredicates(state, k1, k2);
          if (adj.adjHor && kAdj.adjHor) {
            const bool colsMatch = (k1Pos.col == p1.col && k2Pos.col == p2.col) ||
                                   (k1Pos.col == p2.col && k2Pos.col == p1.col);
            if (colsMatch && !label.containsG2(k1, k2)) {
              addViolation(Rule::F7, {k1, k2},
                           "horizontal g2 is co-executed on electrons " +
                               std::to_string(k1) + "," + std::to_string(k2) +
                               " missing from the label");
            }
          }
          if (adj.adjVer && kAdj.adjVer) {
            const bool rowsMatch = (k1Pos.row == p1.row && k2Pos.row == p2.row) ||
                                   (k1Pos.row == p2.row && k2Pos.row == p1.row);
            if (rowsMatch && !label.containsG2(k1, k2)) {
              addViolation(Rule::F8, {k1, k2},
                           "vertical g2 is co-executed on electrons " +
                               std::to_string(k1) + "," + std::to_string(k2) +
                               " missing from the label");
            }
          }
        }
      }
      // Affected dot pairs (F9/F10): channel-connected pairs in the target
      // columns (rows) must be both empty or both occupied.
      if (adj.adjHor) {
        for (int r = 1; r <= config.rows(); ++r) {
          if (r == p1.row) {
            continue;
          }
          const Dot a{r, p1.col};
          const Dot b{r, p2.col};
          if (config.hasChannel(a, b) &&
              state.occupied(a) != state.occupied(b)) {
            addViolation(Rule::F9, {op.e1, op.e2},
                         "horizontal g2 affects the lone electron on " +
                             dotStr(state.occupied(a) ? a : b));
          }
        }
      }
      if (adj.adjVer) {
        for (int c = 1; c <= config.cols(); ++c) {
          if (c == p1.col) {
            continue;
          }
          const Dot a{p1.row, c};
          const Dot b{p2.row, c};
          if (config.hasChannel(a, b) &&
              state.occupied(a) != state.occupied(b)) {
            addViolation(Rule::F10, {op.e1, op.e2},
                         "vertical g2 affects the lone electron on " +
                             dotStr(state.occupied(a) ? a : b));
          }
        }
      }
      break;
    }
    case OpType::Measure: {
      const Dot pos = state.position(op.e1);
      if (pos.col != config.cols()) {
        addViolation(Rule::F11, {op.e1},
                     "measurement outside the rightmost column at " + dotStr(pos));
      }
      for (const auto& [k, kPos] : state.placement()) {
        if (k != op.e1 && kPos.col == pos.col &&
            !label.contains(OpType::Measure, k)) {
          addViolation(Rule::F12, {op.e1, k},
                       "measurement is co-executed on same-column electron " +
                           std::to_string(k) + " missing from the label");
        }
      }
      break;
    }
    default: {
      const ShuttleInfo info = shuttleInfo(op.type);
      const Dot src = state.position(op.e1);
      const Dot dst = shuttleDest(src, op.type);
      if (op.type == OpType::ShuttleRight && src.col == config.cols()) {
        // Ejection to the reservoir; no destination dot to validate.
        break;
      }
      bool moveOk = true;
      if (!config.inBounds(dst)) {
        addViolation(info.rule, {op.e1}, "shuttle leaves the array from " + dotStr(src));
        moveOk = false;
      }
      if (info.vertical && !config.isR(src)) {
        addViolation(info.rule, {op.e1},
                     "vertical shuttle from a column without row-shared gates at " +
                         dotStr(src));
        moveOk = false;
      }
      if (moveOk && !config.hasChannel(src, dst)) {
        addViolation(info.rule, {op.e1},
                     "no channel from " + dotStr(src) + " to " + dotStr(dst));
        moveOk = false;
      }
      if (moveOk && state.occupied(dst)) {
        addViolation(info.rule, {op.e1}, "destination " + dotStr(dst) + " is occupied");
      }
      if (moveOk && !claimedDests.insert(config.dotIndex(dst)).second) {
        addViolation(Rule::COLLISION, {op.e1},
                     "two electrons move into " + dotStr(dst) + " simultaneously");
      }
      // Mandated co-moves.
      if (!info.vertical) {
        const Rule coRule = op.type == OpType::ShuttleLeft ? Rule::F17 : Rule::F18;
        for (const auto& [k, kPos] : state.placement()) {
          if (k == op.e1 || kPos.col != src.col) {
            continue;
          }
          const Dot kDst = shuttleDest(kPos, op.type);
          if (config.hasChannel(kPos, kDst) && !blockControl(state, kPos, kDst) &&
              !label.contains(op.type, k)) {
            addViolation(coRule, {op.e1, k},
                         "unblockable same-column electron " + std::to_string(k) +
                             " must shuttle together with " + std::to_string(op.e1));
          }
        }
      } else {
        const Rule coRule = op.type == OpType::ShuttleUp ? Rule::F19 : Rule::F20;
        for (const auto& [k, kPos] : state.placement()) {
          if (k == op.e1 || kPos.row != src.row) {
            continue;
          }
          const Dot kDst = shuttleDest(kPos, op.type);
          if (config.isR(kPos) && config.hasChannel(kPos, kDst) &&
              !label.contains(op.type, k)) {
            addViolation(coRule, {op.e1, k},
                         "row-shared same-row electron " + std::to_string(k) +
                             " is shuttled together with " + std::to_string(op.e1) +
                             " but missing from the label");
          }
        }
      }
      break;
    }
    }
  }
  return result;
}

namespace {

// Canonical ordering so checking and DAG matching are deterministic.
std::vector<Operation> sortedOps(const StepLabel& label) {
  std::vector<Operation> ops = label.ops;
  std::sort(ops.begin(), ops.end(), [](const Operation& a, const Operation& b) {
    return std::tie(a.type, a.e1, a.e2) < std::tie(b.type, b.e1, b.e2);
  });
  return ops;
}

struct MatchKey {
  GateKind kind;
  int a;
  int b;
  auto operator<=>(const MatchKey&) const = default;
};

std::optional<MatchKey> matchKey(const Operation& op) {
  switch (op.type) {
  case OpType::G1:
    return MatchKey{op.gate.kind, op.e1, -1};
  case OpType::G2:
    return MatchKey{GateKind::SwapPow, std::min(op.e1, op.e2), std::max(op.e1, op.e2)};
  case OpType::Measure:
    return MatchKey{GateKind::Measure, op.e1, -1};
  default:
    return std::nullopt;
  }
}

MatchKey gateKey(const Gate& g) {
  if (g.kind == GateKind::SwapPow) {
    return MatchKey{GateKind::SwapPow, std::min(g.q1, g.q2), std::max(g.q1, g.q2)};
  }
  return MatchKey{g.kind, g.q1, -1};
}

} // namespace

ProcedureReport checkProcedure(const Procedure& procedure, const CircuitDag& dag,
                               CrosstalkRule crosstalkRule) {
  ProcedureReport report;
  std::map<MatchKey, std::deque<int>> pending;
  for (const Gate& g : dag.gates()) {
    pending[gateKey(g)].push_back(g.id);
  }
  std::vector<int> execStep(dag.gates().size(), -1);

  MachineState state = procedure.initial;
  for (std::size_t step = 0; step < procedure.steps.size(); ++step) {
    const StepLabel& label = procedure.steps[step];
    LabelCheck check = checkLabel(state, label, crosstalkRule);
    for (Violation& v : check.violations) {
      v.stepIndex = static_cast<int>(step);
      report.violations.push_back(std::move(v));
    }
    report.crosstalkEvents += check.crosstalkEvents;
    for (const Operation& op : sortedOps(label)) {
      const auto key = matchKey(op);
      if (!key) {
        continue;
      }
      auto it = pending.find(*key);
      if (it == pending.end() || it->second.empty()) {
        report.violations.push_back(
            {Rule::REQ23, static_cast<int>(step), {op.e1},
             to_string(op.type) + " operation at step " + std::to_string(step) +
                 " has no matching circuit gate"});
        continue;
      }
      execStep[static_cast<std::size_t>(it->second.front())] = static_cast<int>(step);
      it->second.pop_front();
    }
    try {
      state = applyStep(state, label);
    } catch (const SqdaError& e) {
      report.violations.push_back({Rule::COLLISION, static_cast<int>(step), {},
                                   std::string("replay failed: ") + e.what()});
      return report;
    }
  }

  for (const Gate& g : dag.gates()) {
    if (execStep[static_cast<std::size_t>(g.id)] == -1) {
      report.violations.push_back(
          {Rule::REQ22, -1, {g.q1},
           "circuit gate " + std::to_string(g.id) + " (" + to_string(g.kind) +
               ") never appears in the procedure"});
    }
  }
  for (const auto& [from, to] : dag.edges()) {
    const int a = execStep[static_cast<std::size_t>(from)];
    const int b = execStep[static_cast<std::size_t>(to)];
    if (a != -1 && b != -1 && a >= b) {
      report.violations.push_back(
          {Rule::REQ22, b, {},
           "gate " + std::to_string(to) + " executed at step " + std::to_string(b) +
               " not after its predecessor " + std::to_string(from) + " (step " +
               std::to_string(a) + ")"});
    }
  }
  return report;
}

std::vector<StepLabel> legalShuttleLabels(const MachineState& state) {
  const ArrayConfig& config = state.config();
  std::vector<StepLabel> labels;
  std::set<std::pair<OpType, std::vector<int>>> seen;

  const auto tryEmit = [&](OpType dir, std::vector<int> movers) {
    std::sort(movers.begin(), movers.end());
    movers.erase(std::unique(movers.begin(), movers.end()), movers.end());
    if (!seen.insert({dir, movers}).second) {
      return;
    }
    StepLabel label;
    for (int e : movers) {
      label.ops.push_back(Operation::shuttle(dir, e));
    }
    const LabelCheck check = checkLabel(state, label, CrosstalkRule::Enforce);
    if (check.violations.empty()) {
      labels.push_back(std::move(label));
    }
  };

  for (const auto& [seed, seedPos] : state.placement()) {
    for (OpType dir : {OpType::ShuttleUp, OpType::ShuttleDown, OpType::ShuttleLeft,
                       OpType::ShuttleRight}) {
      const ShuttleInfo info = shuttleInfo(dir);
      const Dot dst = shuttleDest(seedPos, dir);
      if (!config.inBounds(dst)) {
        continue; // no ejection transitions here
      }
      std::vector<int> movers{seed};
      std::vector<int> optional;
      for (const auto& [k, kPos] : state.placement()) {
        if (k == seed) {
          continue;
        }
        const Dot kDst = shuttleDest(kPos, dir);
        if (!info.vertical && kPos.col == seedPos.col &&
            config.hasChannel(kPos, kDst)) {
          if (blockControl(state, kPos, kDst)) {
            optional.push_back(k);
          } else {
            movers.push_back(k);
          }
        }
        if (info.vertical && kPos.row == seedPos.row && config.isR(kPos) &&
            config.hasChannel(kPos, kDst)) {
          movers.push_back(k);
        }
      }
      if (optional.size() > 12) {
        optional.clear(); // subset blowup guard; forced closure still emitted
      }
      for (std::size_t mask = 0; mask < (1ULL << optional.size()); ++mask) {
        std::vector<int> candidate = movers;
        for (std::size_t i = 0; i < optional.size(); ++i) {
          if (mask & (1ULL << i)) {
            candidate.push_back(optional[i]);
          }
        }
        tryEmit(dir, std::move(candidate));
      }
    }
  }
  return labels;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::Holds:
    return "holds";
  case Verdict::Fails:
    return "fails";
  case Verdict::Unknown:
    return "unknown";
  }
  return "?";
}

bool CertReport::allHold() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& entry) {
    return entry.second.verdict == Verdict::Holds;
  });
}

} // namespace sqda
