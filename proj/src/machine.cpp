#include "sqda/machine.hpp"

#include "sqda/constraints.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace sqda {

std::string to_string(OpType type) {
  switch (type) {
  case OpType::G1:
    return "g1";
  case OpType::G2:
    return "g2";
  case OpType::Measure:
    return "m";
  case OpType::ShuttleUp:
    return "sh-u";
  case OpType::ShuttleDown:
    return "sh-d";
  case OpType::ShuttleLeft:
    return "sh-l";
  case OpType::ShuttleRight:
    return "sh-r";
  }
  return "?";
}

bool isShuttle(OpType type) {
  return type == OpType::ShuttleUp || type == OpType::ShuttleDown ||
         type == OpType::ShuttleLeft || type == OpType::ShuttleRight;
}

bool StepLabel::contains(OpType type, int e) const {
  return std::any_of(ops.begin(), ops.end(), [&](const Operation& op) {
    return op.type == type && op.e1 == e;
  });
}

bool StepLabel::containsG2(int a, int b) const {
  return std::any_of(ops.begin(), ops.end(), [&](const Operation& op) {
    return op.type == OpType::G2 &&
           ((op.e1 == a && op.e2 == b) || (op.e1 == b && op.e2 == a));
  });
}

MachineState::MachineState(std::shared_ptr<const ArrayConfig> config,
                           std::map<int, Dot> placement)
    : config_(std::move(config)), placement_(std::move(placement)) {
  for (const auto& [e, d] : placement_) {
    if (!config_->inBounds(d)) {
      throw SqdaError("invalid-placement",
                      "electron " + std::to_string(e) + " out of bounds");
    }
    if (!occupiedDots_.insert(config_->dotIndex(d)).second) {
      throw SqdaError("collision",
                      "two electrons share dot (" + std::to_string(d.row) + "," +
                          std::to_string(d.col) + ")");
    }
  }
}

Dot MachineState::position(int e) const {
  const auto it = placement_.find(e);
  if (it == placement_.end()) {
    throw SqdaError("unknown-electron", "electron " + std::to_string(e) + " not placed");
  }
  return it->second;
}

std::optional<int> MachineState::electronAt(Dot d) const {
  for (const auto& [e, pos] : placement_) {
    if (pos == d) {
      return e;
    }
  }
  return std::nullopt;
}

namespace {

Dot shifted(Dot d, OpType dir) {
  switch (dir) {
  case OpType::ShuttleUp:
    return Dot{d.row - 1, d.col};
  case OpType::ShuttleDown:
    return Dot{d.row + 1, d.col};
  case OpType::ShuttleLeft:
    return Dot{d.row, d.col - 1};
  case OpType::ShuttleRight:
    return Dot{d.row, d.col + 1};
  default:
    return d;
  }
}

} // namespace

MachineState applyStep(const MachineState& state, const StepLabel& label) {
  const ArrayConfig& config = state.config();
  std::map<int, Dot> next = state.placement();
  std::unordered_map<int, int> opsPerElectron;
  std::vector<std::pair<int, Dot>> moves;
  std::vector<int> ejected;
  for (const Operation& op : label.ops) {
    if (!state.hasElectron(op.e1) ||
        (op.type == OpType::G2 && !state.hasElectron(op.e2))) {
      throw SqdaError("unknown-electron", "label references an absent electron");
    }
    ++opsPerElectron[op.e1];
    if (op.type == OpType::G2) {
      ++opsPerElectron[op.e2];
    }
    if (!isShuttle(op.type)) {
      continue;
    }
    const Dot src = state.position(op.e1);
    const Dot dst = shifted(src, op.type);
    if (op.type == OpType::ShuttleRight && src.col == config.cols()) {
      ejected.push_back(op.e1); // ejection to the reservoir
      continue;
    }
    if (!config.inBounds(dst)) {
      throw SqdaError("off-grid", "shuttle moves electron " + std::to_string(op.e1) +
                                      " off the array");
    }
    moves.emplace_back(op.e1, dst);
  }
  for (const auto& [e, n] : opsPerElectron) {
    if (n > 1) {
      throw SqdaError("collision", "electron " + std::to_string(e) +
                                       " referenced by multiple operations");
    }
  }
  // Synchronous update: a destination may be neither claimed twice nor
  // occupied in the pre-move placement.
  std::unordered_set<int> claimed;
  for (const auto& [e, dst] : moves) {
    if (state.occupied(dst) || !claimed.insert(config.dotIndex(dst)).second) {
      throw SqdaError("collision", "electron " + std::to_string(e) +
                                       " moves into an occupied dot");
    }
  }
  for (const auto& [e, dst] : moves) {
    next[e] = dst;
  }
  for (int e : ejected) {
    next.erase(e);
  }
  return MachineState(state.configPtr(), std::move(next));
}

bool isReadyState(const MachineState& state) {
  return std::all_of(state.placement().begin(), state.placement().end(),
                     [&](const auto& entry) {
                       return isSeat(state.config(), entry.second);
                     });
}

AdjacencyFlags adjacencyPredicates(const MachineState& state, int e1, int e2) {
  const Dot a = state.position(e1);
  const Dot b = state.position(e2);
  AdjacencyFlags flags;
  flags.sameCol = a.col == b.col;
  flags.sameRow = a.row == b.row;
  flags.adjHor = flags.sameRow && std::abs(a.col - b.col) == 1 &&
                 state.config().hasChannel(a, b);
  flags.adjVer = flags.sameCol && std::abs(a.row - b.row) == 1 &&
                 state.config().hasChannel(a, b) && state.config().isR(a) &&
                 state.config().isR(b);
  return flags;
}

bool blockControl(const MachineState& state, Dot src, Dot dst) {
  if (src.row != dst.row || std::abs(src.col - dst.col) != 1) {
    throw SqdaError("not-adjacent", "block control needs horizontally adjacent dots");
  }
  return (state.config().isR(src) != state.config().isR(dst)) && !state.occupied(dst);
}

ReachResult reachable(const MachineState& from, const MachineState& to,
                      std::size_t stateBudget) {
  if (from.placement() == to.placement()) {
    return ReachResult::Yes;
  }
  const auto key = [](const MachineState& s) {
    std::ostringstream os;
    for (const auto& [e, d] : s.placement()) {
      os << e << ':' << d.row << ',' << d.col << ';';
    }
    return os.str();
  };
  const std::string target = key(to);
  std::unordered_set<std::string> seen{key(from)};
  std::deque<MachineState> frontier{from};
  while (!frontier.empty()) {
    const MachineState cur = std::move(frontier.front());
    frontier.pop_front();
    for (const StepLabel& label : legalShuttleLabels(cur)) {
      MachineState next = applyStep(cur, label);
      const std::string k = key(next);
      if (k == target) {
        return ReachResult::Yes;
      }
      if (seen.contains(k)) {
        continue;
      }
      if (seen.size() >= stateBudget) {
        return ReachResult::BudgetExceeded;
      }
      seen.insert(k);
      frontier.push_back(std::move(next));
    }
  }
  return ReachResult::No;
}

} // namespace sqda
