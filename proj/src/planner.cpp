#include "sqda/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace sqda {

int PlanSegment::shuttleCount() const {
  int count = 0;
  for (const StepLabel& label : labels) {
    for (const Operation& op : label.ops) {
      if (isShuttle(op.type)) {
        ++count;
      }
    }
  }
  return count;
}

namespace {

void requireReady(const MachineState& state) {
  if (!isReadyState(state)) {
    throw SqdaError("not-ready-state", "planning requires every electron on a seat dot");
  }
}

OpType verticalDir(int from, int to) {
  return to < from ? OpType::ShuttleUp : OpType::ShuttleDown;
}

OpType horizontalDir(int from, int to) {
  return to < from ? OpType::ShuttleLeft : OpType::ShuttleRight;
}

/// Accumulates labels while tracking the resulting state.
struct Builder {
  std::vector<StepLabel> labels;
  MachineState state;

  explicit Builder(MachineState s) : state(std::move(s)) {}

  void step(StepLabel label) {
    state = applyStep(state, label);
    labels.push_back(std::move(label));
  }

  /// One shuttle op per label, `count` labels.
  void walk(int e, OpType dir, int count) {
    for (int i = 0; i < count; ++i) {
      step(StepLabel{{Operation::shuttle(dir, e)}});
    }
  }

  void walkVertical(int e, int toRow) {
    const int from = state.position(e).row;
    walk(e, verticalDir(from, toRow), std::abs(toRow - from));
  }

  void walkHorizontal(int e, int toCol) {
    const int from = state.position(e).col;
    walk(e, horizontalDir(from, toCol), std::abs(toCol - from));
  }

  PlanSegment finish(int gateStep) && {
    return PlanSegment{std::move(labels), gateStep, std::move(state)};
  }
};

std::vector<int> sameColumnCompanions(const MachineState& state, int target) {
  const int col = state.position(target).col;
  std::vector<std::pair<int, int>> byRow; // (row, electron)
  for (const auto& [e, d] : state.placement()) {
    if (e != target && d.col == col) {
      byRow.emplace_back(d.row, e);
    }
  }
  std::sort(byRow.begin(), byRow.end());
  std::vector<int> out;
  out.reserve(byRow.size());
  for (const auto& [row, e] : byRow) {
    out.push_back(e);
  }
  return out;
}

bool avoidFeasible(const MachineState& state, int target, Side side) {
  if (sameColumnCompanions(state, target).empty()) {
    return true;
  }
  const int c = state.position(target).col;
  const int landing = side == Side::Left ? c - 3 : c + 3;
  return landing >= 1 && landing <= state.config().cols();
}

Side resolveAvoidSide(const MachineState& state, int target, Side side) {
  if (side != Side::Auto) {
    if (!avoidFeasible(state, target, side)) {
      throw SqdaError("no-feasible-side", "cannot evacuate column toward the requested side");
    }
    return side;
  }
  if (avoidFeasible(state, target, Side::Left)) {
    return Side::Left;
  }
  if (avoidFeasible(state, target, Side::Right)) {
    return Side::Right;
  }
  throw SqdaError("no-feasible-side", "cannot evacuate column toward either side");
}

PlanSegment planG1Avoid(const MachineState& state, int target, Side side,
                        const GatePayload& payload) {
  side = resolveAvoidSide(state, target, side);
  const int sgn = side == Side::Left ? -1 : 1;
  const OpType out = side == Side::Left ? OpType::ShuttleLeft : OpType::ShuttleRight;
  const OpType back = side == Side::Left ? OpType::ShuttleRight : OpType::ShuttleLeft;
  const int c = state.position(target).col;
  const std::vector<int> companions = sameColumnCompanions(state, target);
  // Electrons two columns over in a companion's row would collide with the
  // evacuation; they step one further into the next aisle first.
  std::vector<int> clearers;
  for (int e : companions) {
    const Dot landing{state.position(e).row, c + 2 * sgn};
    if (auto blocker = state.electronAt(landing)) {
      clearers.push_back(*blocker);
    }
  }
  Builder b(state);
  const auto group = [&](const std::vector<int>& electrons, OpType dir) {
    if (electrons.empty()) {
      return;
    }
    StepLabel label;
    for (int e : electrons) {
      label.ops.push_back(Operation::shuttle(dir, e));
    }
    b.step(std::move(label));
  };
  group(clearers, out);
  group(companions, out);
  group(companions, out);
  const int gateStep = static_cast<int>(b.labels.size());
  b.step(StepLabel{{Operation::g1(target, payload)}});
  group(companions, back);
  group(companions, back);
  group(clearers, back);
  return std::move(b).finish(gateStep);
}

PlanSegment planG1Allow(const MachineState& state, int target, Side side,
                        const GatePayload& payload) {
  const int c = state.position(target).col;
  if (side == Side::Auto) {
    side = c == 1 ? Side::Right : Side::Left;
  }
  const int aisle = side == Side::Left ? c - 1 : c + 1;
  if (aisle < 1 || aisle > state.config().cols()) {
    throw SqdaError("no-feasible-side", "no aisle on the requested side");
  }
  const OpType out = side == Side::Left ? OpType::ShuttleLeft : OpType::ShuttleRight;
  const OpType back = side == Side::Left ? OpType::ShuttleRight : OpType::ShuttleLeft;
  const std::vector<int> companions = sameColumnCompanions(state, target);
  Builder b(state);
  const auto group = [&](OpType dir) {
    if (companions.empty()) {
      return;
    }
    StepLabel label;
    for (int e : companions) {
      label.ops.push_back(Operation::shuttle(dir, e));
    }
    b.step(std::move(label));
  };
  group(out);
  const int gateStep = static_cast<int>(b.labels.size());
  b.step(StepLabel{{Operation::g1(target, payload)}});
  group(back);
  return std::move(b).finish(gateStep);
}

} // namespace

PlanSegment planG1(const MachineState& state, int target, Side side,
                   CrosstalkMode mode, const GatePayload& payload) {
  requireReady(state);
  return mode == CrosstalkMode::Avoid ? planG1Avoid(state, target, side, payload)
                                      : planG1Allow(state, target, side, payload);
}

bool g1SideFeasible(const MachineState& state, int target, Side side) {
  requireReady(state);
  return avoidFeasible(state, target, side);
}

int countCost(const MachineState& state, int target, Side side) {
  requireReady(state);
  if (sameColumnCompanions(state, target).empty()) {
    return 0;
  }
  return planG1(state, target, side, CrosstalkMode::Avoid, GatePayload{}).shuttleCount();
}

PlanSegment planMeasure(const MachineState& state, int target) {
  requireReady(state);
  const int cols = state.config().cols();
  const Dot pos = state.position(target);
  Builder b(state);
  b.walk(target, OpType::ShuttleRight, 1); // into the aisle to the right
  if (pos.col != cols - 1) {
    b.walkVertical(target, state.config().busRow());
    b.walkHorizontal(target, cols);
  }
  const int gateStep = static_cast<int>(b.labels.size());
  b.step(StepLabel{{Operation::measure(target)}});
  b.walk(target, OpType::ShuttleRight, 1); // ejection
  return std::move(b).finish(gateStep);
}

namespace {

struct G2Geometry {
  int mover = -1;
  int stayer = -1;
  int meeting = 0;  // aisle column where the gate happens
  int stayerRow = 0; // row adjacent to the bus on the stayer's side
};

/// Labels up to and including the gate: the mover exits toward the meeting
/// aisle, rides the bus row to it, and the stayer joins vertically adjacent.
std::pair<Builder, G2Geometry> g2ToGate(const MachineState& state, int e1, int e2,
                                        G2Mover moverChoice, const GatePayload& payload) {
  G2Geometry geo;
  geo.mover = moverChoice == G2Mover::E1ToE2 ? e1 : e2;
  geo.stayer = moverChoice == G2Mover::E1ToE2 ? e2 : e1;
  const Dot mPos = state.position(geo.mover);
  const Dot sPos = state.position(geo.stayer);
  const int bus = state.config().busRow();
  geo.meeting = mPos.col == sPos.col ? sPos.col + 1
                                     : (sPos.col > mPos.col ? sPos.col - 1 : sPos.col + 1);
  geo.stayerRow = sPos.row < bus ? bus - 1 : bus + 1;
  Builder b(state);
  const int exit = mPos.col + (geo.meeting > mPos.col ? 1 : -1);
  b.walkHorizontal(geo.mover, exit);
  b.walkVertical(geo.mover, bus);
  b.walkHorizontal(geo.mover, geo.meeting);
  b.walkHorizontal(geo.stayer, geo.meeting);
  b.walkVertical(geo.stayer, geo.stayerRow);
  b.step(StepLabel{{Operation::g2(e1, e2, payload)}});
  return {std::move(b), geo};
}

/// Nearest seats for the stayer after the gate: columns adjacent to the
/// meeting aisle, rows on its own side of the bus, empty, minimum distance.
std::vector<Dot> stayerSeatTies(const MachineState& gateState, const G2Geometry& geo) {
  const ArrayConfig& config = gateState.config();
  const int bus = config.busRow();
  std::vector<Dot> best;
  int bestDist = -1;
  for (int row = 1; row <= config.rows(); ++row) {
    if (row == bus || (geo.stayerRow < bus) != (row < bus)) {
      continue;
    }
    for (int col : {geo.meeting - 1, geo.meeting + 1}) {
      const Dot d{row, col};
      if (!config.inBounds(d) || !isSeat(config, d) || gateState.occupied(d)) {
        continue;
      }
      const int dist = std::abs(geo.stayerRow - row) + 1;
      if (bestDist < 0 || dist < bestDist) {
        bestDist = dist;
        best = {d};
      } else if (dist == bestDist) {
        best.push_back(d);
      }
    }
  }
  std::sort(best.begin(), best.end());
  if (best.empty()) {
    throw SqdaError("no-return-seat", "no empty seat next to the meeting aisle");
  }
  return best;
}

void stayerReturn(Builder& b, const G2Geometry& geo, Dot seat) {
  b.walkVertical(geo.stayer, seat.row);
  b.walkHorizontal(geo.stayer, seat.col);
}

/// Nearest empty seats for the mover, measured from its post-gate dot on the
/// bus row.
std::vector<Dot> moverSeatTies(const MachineState& state, const G2Geometry& geo) {
  const ArrayConfig& config = state.config();
  const int bus = config.busRow();
  std::vector<Dot> best;
  int bestDist = -1;
  for (const Dot& d : seatDots(config)) {
    if (state.occupied(d)) {
      continue;
    }
    const int dist = std::abs(bus - d.row) + std::abs(geo.meeting - d.col);
    if (bestDist < 0 || dist < bestDist) {
      bestDist = dist;
      best = {d};
    } else if (dist == bestDist) {
      best.push_back(d);
    }
  }
  if (best.empty()) {
    throw SqdaError("no-return-seat", "no empty seat for the mover");
  }
  return best; // seatDots order is already row-then-column
}

void moverReturn(Builder& b, const G2Geometry& geo, Dot seat) {
  const int aisle = seat.col < geo.meeting ? seat.col + 1 : seat.col - 1;
  b.walkHorizontal(geo.mover, aisle);
  b.walkVertical(geo.mover, seat.row);
  b.walkHorizontal(geo.mover, seat.col);
}

std::pair<PlanSegment, G2Outcome> assemble(Builder b, const G2Geometry& geo,
                                           int gateStep, int e1, Dot stayerSeat,
                                           Dot moverSeat) {
  stayerReturn(b, geo, stayerSeat);
  moverReturn(b, geo, moverSeat);
  PlanSegment segment = std::move(b).finish(gateStep);
  G2Outcome outcome{geo.mover,
                    geo.mover == e1 ? moverSeat : stayerSeat,
                    geo.mover == e1 ? stayerSeat : moverSeat,
                    segment.shuttleCount(), segment.endState};
  return {std::move(segment), std::move(outcome)};
}

} // namespace

std::pair<PlanSegment, G2Outcome> planG2(const MachineState& state, int e1, int e2,
                                         G2Mover mover, const GatePayload& payload) {
  requireReady(state);
  auto [b, geo] = g2ToGate(state, e1, e2, mover, payload);
  const int gateStep = static_cast<int>(b.labels.size()) - 1;
  const Dot stayerSeat = stayerSeatTies(b.state, geo).front();
  Builder withStayer = b;
  stayerReturn(withStayer, geo, stayerSeat);
  const Dot moverSeat = moverSeatTies(withStayer.state, geo).front();
  return assemble(std::move(b), geo, gateStep, e1, stayerSeat, moverSeat);
}

std::vector<std::pair<PlanSegment, G2Outcome>>
enumerateG2Outcomes(const MachineState& state, int e1, int e2,
                    const GatePayload& payload) {
  requireReady(state);
  std::vector<std::pair<PlanSegment, G2Outcome>> out;
  for (G2Mover mover : {G2Mover::E1ToE2, G2Mover::E2ToE1}) {
    auto [b, geo] = g2ToGate(state, e1, e2, mover, payload);
    const int gateStep = static_cast<int>(b.labels.size()) - 1;
    for (const Dot stayerSeat : stayerSeatTies(b.state, geo)) {
      Builder withStayer = b;
      stayerReturn(withStayer, geo, stayerSeat);
      for (const Dot moverSeat : moverSeatTies(withStayer.state, geo)) {
        out.push_back(assemble(b, geo, gateStep, e1, stayerSeat, moverSeat));
      }
    }
  }
  return out;
}

} // namespace sqda
