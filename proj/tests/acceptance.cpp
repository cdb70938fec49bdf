// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Shares one grid of compiled circuits across the statistical
// criteria to keep the total runtime low.

#include "sqda/compiler.hpp"
#include "sqda/constraints.hpp"
#include "sqda/fidelity.hpp"
#include "sqda/json_io.hpp"
#include "sqda/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace sqda;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s - %s\n", criterion, ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) {
    ++failures;
  }
}

std::shared_ptr<const ArrayConfig> standardArray() {
  static auto config = std::make_shared<const ArrayConfig>(buildStandardArray(8, 16, 4));
  return config;
}

struct GridPoint {
  long shuttleAvoid = 0;
  long crosstalkAvoid = 0;
  long violations = 0;
  long uncovered = 0;
  double wallMsAvoid = 0.0;
  long shuttleAllow = 0;
  long crosstalkAllow = 0;
  double logFAvoid = 0.0; // f_sh = 0.996, f_ct = 0.905
  double logFAllow = 0.0;
};

constexpr int kGridCircuits = 20;
const std::vector<int> kGridN{10, 30, 50};
const std::vector<int> kGridM{10, 50, 100, 300};

// per (n, m): one entry per circuit
std::map<std::pair<int, int>, std::vector<GridPoint>> buildGrid() {
  std::map<std::pair<int, int>, std::vector<GridPoint>> grid;
  const FidelityParams params{0.996, 0.905};
  auto config = standardArray();
  for (int n : kGridN) {
    for (int m : kGridM) {
      auto& cell = grid[{n, m}];
      for (int c = 0; c < kGridCircuits; ++c) {
        const std::uint64_t seed =
            1000003ULL * static_cast<std::uint64_t>(n) + 257ULL * static_cast<std::uint64_t>(m) +
            static_cast<std::uint64_t>(c);
        const CircuitDag dag = randomCircuit(n, m, seed, true);
        GridPoint point;

        CompileOptions avoid;
        const CompileResult ra = compileCircuit(config, dag, avoid);
        const ProcedureReport checkA =
            checkProcedure(ra.procedure, dag, CrosstalkRule::Enforce);
        point.violations = static_cast<long>(checkA.violations.size());
        point.crosstalkAvoid = checkA.crosstalkEvents;
        point.shuttleAvoid = ra.stats.shuttleOps;
        point.wallMsAvoid = ra.stats.wallTimeMs;
        // coverage of the circuit DAG is part of the clean-verify contract:
        // a missing or out-of-order gate surfaces as a REQ violation above
        point.uncovered = static_cast<long>(std::count_if(
            checkA.violations.begin(), checkA.violations.end(),
            [](const Violation& v) { return v.rule == Rule::REQ22 || v.rule == Rule::REQ23; }));
        point.logFAvoid = estimateFidelity(ra.procedure, params).logFidelity;

        CompileOptions allow;
        allow.crosstalk = CrosstalkMode::Allow;
        const CompileResult rl = compileCircuit(config, dag, allow);
        const ProcedureReport checkL =
            checkProcedure(rl.procedure, dag, CrosstalkRule::Count);
        point.violations += static_cast<long>(checkL.violations.size());
        point.crosstalkAllow = checkL.crosstalkEvents;
        point.shuttleAllow = rl.stats.shuttleOps;
        point.logFAllow = estimateFidelity(rl.procedure, params).logFidelity;

        cell.push_back(point);
      }
    }
  }
  return grid;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double below = 0.0;
      double equal = 0.0;
      for (const double x : v) {
        below += x < v[i] ? 1.0 : 0.0;
        equal += x == v[i] ? 1.0 : 0.0;
      }
      r[i] = below + (equal + 1.0) / 2.0; // fractional ranks on ties
    }
    return r;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double num = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

double leastSquaresSlope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean(x);
  const double my = mean(y);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

void criterion1() {
  const auto seats = seatDots(*standardArray());
  report(1, seats.size() == 56,
         "standard 16x8 array capacity: " + std::to_string(seats.size()) + " seats");
}

void criterion2(const std::map<std::pair<int, int>, std::vector<GridPoint>>& grid) {
  long violations = 0;
  long crosstalk = 0;
  long uncovered = 0;
  for (const auto& [key, cell] : grid) {
    for (const GridPoint& p : cell) {
      violations += p.violations;
      crosstalk += p.crosstalkAvoid;
      uncovered += p.uncovered;
    }
  }
  report(2, violations == 0 && crosstalk == 0 && uncovered == 0,
         "grid of 240 circuits compiles and verifies clean (violations=" +
             std::to_string(violations) + ", avoid-mode crosstalk=" +
             std::to_string(crosstalk) + ")");
}

void criterion3(const std::map<std::pair<int, int>, std::vector<GridPoint>>& grid) {
  bool ok = true;
  std::string detail;
  for (int n : kGridN) {
    std::vector<double> ms;
    std::vector<double> times;
    for (int m : kGridM) {
      const auto& cell = grid.at({n, m});
      std::vector<double> t;
      for (const GridPoint& p : cell) {
        t.push_back(p.wallMsAvoid);
      }
      ms.push_back(static_cast<double>(m));
      times.push_back(mean(t));
    }
    const double rho = spearman(ms, times);
    ok = ok && rho > 0.9;
    detail += "rho(n=" + std::to_string(n) + ")=" + std::to_string(rho) + " ";
  }
  const auto meanTime = [&](int n, int m) {
    std::vector<double> t;
    for (const GridPoint& p : grid.at({n, m})) {
      t.push_back(p.wallMsAvoid);
    }
    return mean(t);
  };
  const double ratio = meanTime(50, 300) / meanTime(10, 300);
  ok = ok && ratio < 3.0;
  report(3, ok, "compile-time scaling: " + detail + "n50/n10 at m=300 = " +
                    std::to_string(ratio));
}

void criterion4() {
  auto config = standardArray();
  double heuristicOps = 0.0;
  double naiveOps = 0.0;
  const int circuits = 100;
  for (int c = 0; c < circuits; ++c) {
    const CircuitDag dag = randomCircuit(30, 100, 777000ULL + static_cast<std::uint64_t>(c), true);
    CompileOptions h;
    CompileOptions nv;
    nv.mode = CompileMode::Naive;
    const CompileStats sh = compileCircuit(config, dag, h).stats;
    const CompileStats sn = compileCircuit(config, dag, nv).stats;
    heuristicOps += static_cast<double>(sh.shuttleOps + sh.gateOps + sh.measureOps);
    naiveOps += static_cast<double>(sn.shuttleOps + sn.gateOps + sn.measureOps);
  }
  const double ratio = heuristicOps / naiveOps;
  report(4, ratio <= 1.02,
         "heuristic/naive mean operation count over 100 circuits = " + std::to_string(ratio));
}

void criterion5(const std::map<std::pair<int, int>, std::vector<GridPoint>>& grid) {
  bool ordering = true;
  for (const auto& [key, cell] : grid) {
    for (const GridPoint& p : cell) {
      if (p.logFAvoid < p.logFAllow) {
        ordering = false;
      }
      if (p.crosstalkAllow >= 1 && !(p.logFAvoid > p.logFAllow)) {
        ordering = false;
      }
    }
  }
  bool slopes = true;
  std::string detail;
  for (int n : kGridN) {
    std::vector<double> ms;
    std::vector<double> avoidF;
    std::vector<double> allowF;
    for (int m : kGridM) {
      for (const GridPoint& p : grid.at({n, m})) {
        ms.push_back(static_cast<double>(m));
        avoidF.push_back(p.logFAvoid);
        allowF.push_back(p.logFAllow);
      }
    }
    const double ratio =
        leastSquaresSlope(ms, allowF) / leastSquaresSlope(ms, avoidF);
    slopes = slopes && ratio >= 3.0 && ratio <= 4.5;
    detail += "slope-ratio(n=" + std::to_string(n) + ")=" + std::to_string(ratio) + " ";
  }
  report(5, ordering && slopes,
         "fidelity ordering " + std::string(ordering ? "holds" : "broken") + "; " + detail);
}

void criterion6(const std::map<std::pair<int, int>, std::vector<GridPoint>>& grid) {
  const double fSh = 0.996;
  const double fCt = std::pow(fSh, 4);
  const FidelityParams knife{fSh, fCt};
  const AsymptoticEstimate avoid = asymptoticEstimate(30, 100, knife, CrosstalkPolicy::Avoid);
  const AsymptoticEstimate allow = asymptoticEstimate(30, 100, knife, CrosstalkPolicy::Allow);
  const bool slopesEqual =
      std::abs(allow.logFidelitySlope - avoid.logFidelitySlope) < 1e-12;
  // re-price the measured n=30, m=100 procedures at the knife-edge point
  double logAvoid = 0.0;
  double logAllow = 0.0;
  const auto& cell = grid.at({30, 100});
  for (const GridPoint& p : cell) {
    logAvoid += static_cast<double>(p.shuttleAvoid) * std::log(fSh);
    logAllow += static_cast<double>(p.shuttleAllow) * std::log(fSh) +
                static_cast<double>(p.crosstalkAllow) * std::log(fCt);
  }
  logAvoid /= static_cast<double>(cell.size());
  logAllow /= static_cast<double>(cell.size());
  const double gap = std::abs(logAllow - logAvoid) / std::abs(logAvoid);
  report(6, slopesEqual && gap < 0.25,
         "knife-edge f_ct=f_sh^4: slopes equal=" + std::string(slopesEqual ? "yes" : "no") +
             ", measured relative gap=" + std::to_string(gap));
}

void criterion7() {
  auto config = standardArray();
  const auto seats = seatDots(*config);
  std::mt19937_64 rng(424242);
  const GatePayload rx{GateKind::Rx, 0.4};
  long tried = 0;
  long caught = 0;
  const auto flag = [&](const MachineState& state, const StepLabel& label) {
    ++tried;
    if (!checkLabel(state, label, CrosstalkRule::Enforce).violations.empty()) {
      ++caught;
    }
  };
  const auto randomReady = [&](int n) {
    std::vector<Dot> pool = seats;
    std::map<int, Dot> placement;
    for (int e = 0; e < n; ++e) {
      const std::size_t i = rng() % pool.size();
      placement[e] = pool[i];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return MachineState(config, std::move(placement));
  };
  while (tried < 10000) {
    switch (rng() % 4) {
    case 0: {
      // shuttle into an occupied dot (directional shuttle preconditions)
      MachineState state = randomReady(2 + static_cast<int>(rng() % 8));
      const int n = static_cast<int>(state.electronCount());
      const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
      if (b >= a) {
        ++b;
      }
      // re-place b directly beside a, then shuttle a onto b's dot; seat
      // columns are never the rightmost column, so this is never an ejection
      const Dot pa = state.position(a);
      const Dot beside{pa.row, pa.col + 1};
      if (state.occupied(beside)) {
        continue;
      }
      std::map<int, Dot> placement = state.placement();
      placement[b] = beside;
      flag(MachineState(config, std::move(placement)),
           StepLabel{{Operation::shuttle(OpType::ShuttleRight, a)}});
      break;
    }
    case 1: {
      // second operation on a busy electron
      const MachineState state = randomReady(1 + static_cast<int>(rng() % 6));
      const int a = static_cast<int>(rng() % state.electronCount());
      flag(state, StepLabel{{Operation::g1(a, rx), Operation::shuttle(OpType::ShuttleRight, a)}});
      break;
    }
    case 2: {
      // omit a co-executed g1 on a same-column companion
      std::map<int, Dot> placement;
      const int col = 1 + 2 * static_cast<int>(rng() % 8);
      const int r1 = 1 + static_cast<int>(rng() % 8);
      int r2 = 1 + static_cast<int>(rng() % 7);
      if (r2 >= r1) {
        ++r2;
      }
      if (r1 == 4 || r2 == 4) {
        continue; // seats avoid the bus row
      }
      placement[0] = Dot{r1, col};
      placement[1] = Dot{r2, col};
      flag(MachineState(config, std::move(placement)),
           StepLabel{{Operation::g1(0, rx)}});
      break;
    }
    default: {
      // drop a mandated co-move: vertical pair on the bus row, or a
      // horizontal companion whose block control fails
      if (rng() % 2 == 0) {
        std::map<int, Dot> placement;
        const int c1 = 2 * (1 + static_cast<int>(rng() % 8));
        int c2 = 2 * (1 + static_cast<int>(rng() % 7));
        if (c2 >= c1) {
          c2 += 2;
        }
        placement[0] = Dot{4, c1};
        placement[1] = Dot{4, c2};
        const OpType dir = rng() % 2 == 0 ? OpType::ShuttleUp : OpType::ShuttleDown;
        flag(MachineState(config, std::move(placement)),
             StepLabel{{Operation::shuttle(dir, 0)}});
      } else {
        std::map<int, Dot> placement;
        const int col = 3 + 2 * static_cast<int>(rng() % 6);
        const int r1 = 1 + static_cast<int>(rng() % 8);
        int r2 = 1 + static_cast<int>(rng() % 7);
        if (r2 >= r1) {
          ++r2;
        }
        if (r1 == 4 || r2 == 4) {
          continue;
        }
        placement[0] = Dot{r1, col};
        placement[1] = Dot{r2, col};       // companion
        placement[2] = Dot{r2, col + 1};   // blocks the companion's block control
        const OpType dir = rng() % 2 == 0 ? OpType::ShuttleRight : OpType::ShuttleLeft;
        if (dir == OpType::ShuttleRight) {
          flag(MachineState(config, std::move(placement)),
               StepLabel{{Operation::shuttle(dir, 0)}});
        } else {
          placement[2] = Dot{r2, col - 1};
          flag(MachineState(config, std::move(placement)),
               StepLabel{{Operation::shuttle(dir, 0)}});
        }
      }
      break;
    }
    }
  }
  report(7, tried == 10000 && caught == tried,
         "fuzzed illegal labels: " + std::to_string(caught) + "/" + std::to_string(tried) +
             " caught");
}

void criterion8() {
  bool ok = true;
  std::string detail;
  const ArrayConfig small = buildStandardArray(5, 6, 3);
  for (int electrons = 1; electrons <= 3; ++electrons) {
    const CertReport cert = certifyConditions(small, electrons, 2000000);
    if (!cert.allHold()) {
      ok = false;
      detail += "standard(5,6,3) e=" + std::to_string(electrons) + " failed; ";
    }
  }
  std::vector<std::pair<Dot, Dot>> channels;
  for (int c = 1; c < 4; ++c) {
    channels.push_back({Dot{1, c}, Dot{1, c + 1}});
    channels.push_back({Dot{2, c}, Dot{2, c + 1}});
  }
  const ArrayConfig corridor(2, 4, 2, {}, channels);
  const CertReport corridorReport = certifyConditions(corridor, 4, 2000000);
  const auto& c2 = corridorReport.verdicts.at("C2");
  if (c2.verdict != Verdict::Fails || c2.witness.empty()) {
    ok = false;
    detail += "corridor C2 did not fail with a witness; ";
  }
  report(8, ok, detail.empty() ? "C1-C6 hold on (5,6,3) e=1..3; corridor fails C2 with witness"
                               : detail);
}

void criterion9() {
  bool ok = true;
  const std::vector<std::tuple<int, int, int>> arrays{{8, 16, 4}, {5, 6, 3}, {7, 10, 3}};
  for (int t = 0; t < 10; ++t) {
    const auto [rows, cols, bus] = arrays[static_cast<std::size_t>(t) % arrays.size()];
    auto config = std::make_shared<const ArrayConfig>(buildStandardArray(rows, cols, bus));
    const int qubits = 3 + t;
    const CircuitDag dag = randomCircuit(qubits, 20 + 5 * t, 9000ULL + static_cast<std::uint64_t>(t), true);
    std::string first;
    for (int run = 0; run < 3; ++run) {
      const std::string out =
          procedureToJson(compileCircuit(config, dag, CompileOptions{}).procedure).dump();
      if (run == 0) {
        first = out;
      } else if (out != first) {
        ok = false;
      }
    }
  }
  report(9, ok, "procedure bytes identical across 3 runs for 10 (array, circuit, seed) triples");
}

void criterion10(const std::map<std::pair<int, int>, std::vector<GridPoint>>& grid) {
  bool ok = true;
  std::string detail;
  for (int m : {100, 300}) {
    std::vector<double> shuttles;
    for (const GridPoint& p : grid.at({30, m})) {
      shuttles.push_back(static_cast<double>(p.shuttleAvoid));
    }
    const double measured = mean(shuttles);
    const double n = 30.0;
    const double md = static_cast<double>(m);
    const double expected = 6.0 * md * std::sqrt(n) + 1.25 * md * std::sqrt(2.0 * n) +
                            1.125 * n * std::sqrt(2.0 * n);
    const double ratio = measured / expected;
    ok = ok && ratio >= 0.2 && ratio <= 2.0;
    detail += "m=" + std::to_string(m) + ": " + std::to_string(ratio) + " ";
  }
  report(10, ok, "avoid-mode shuttle count vs closed form at n=30: " + detail);
}

} // namespace

int main() {
  criterion1();
  const auto grid = buildGrid();
  criterion2(grid);
  criterion3(grid);
  criterion4();
  criterion5(grid);
  criterion6(grid);
  criterion7();
  criterion8();
  criterion9();
  criterion10(grid);
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
