#include "sqda/circuit.hpp"

#include "sqda/array.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sqda {

std::string to_string(GateKind kind) {
  switch (kind) {
  case GateKind::Rx:
    return "rx";
  case GateKind::Ry:
    return "ry";
  case GateKind::SwapPow:
    return "swap_pow";
  case GateKind::Measure:
    return "measure";
  }
  return "?";
}

CircuitDag::CircuitDag(int qubitCount, std::vector<Gate> gates)
    : qubitCount_(qubitCount), gates_(std::move(gates)) {
  if (qubitCount_ < 0) {
    throw SqdaError("parse-error", "negative qubit count");
  }
  pred_.resize(gates_.size());
  succ_.resize(gates_.size());
  // lastOnQubit[q] = id of the latest earlier gate touching q
  std::vector<int> lastOnQubit(static_cast<std::size_t>(qubitCount_), -1);
  std::vector<bool> measured(static_cast<std::size_t>(qubitCount_), false);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    Gate& g = gates_[i];
    g.id = static_cast<int>(i);
    std::vector<int> operands{g.q1};
    if (g.kind == GateKind::SwapPow) {
      if (g.q1 == g.q2) {
        throw SqdaError("parse-error", "swap_pow operands must be distinct");
      }
      operands.push_back(g.q2);
    } else if (g.q2 != -1) {
      throw SqdaError("parse-error", "single-operand gate with two operands");
    }
    for (int q : operands) {
      if (q < 0 || q >= qubitCount_) {
        throw SqdaError("operand-out-of-range", "gate operand out of range");
      }
      if (measured[static_cast<std::size_t>(q)]) {
        throw SqdaError("gate-after-measure",
                        "qubit " + std::to_string(q) + " used after its measurement");
      }
      if (const int prev = lastOnQubit[static_cast<std::size_t>(q)]; prev >= 0) {
        succ_[static_cast<std::size_t>(prev)].push_back(g.id);
        pred_[i].push_back(prev);
      }
      lastOnQubit[static_cast<std::size_t>(q)] = g.id;
    }
    if (g.kind == GateKind::Measure) {
      measured[static_cast<std::size_t>(g.q1)] = true;
    }
  }
  for (auto& v : pred_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : succ_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

std::vector<std::pair<int, int>> CircuitDag::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    for (int j : succ_[i]) {
      out.emplace_back(static_cast<int>(i), j);
    }
  }
  return out;
}

std::vector<int> CircuitDag::frontLayer(const std::set<int>& executed) const {
  for (int id : executed) {
    for (int p : predecessors(id)) {
      if (!executed.contains(p)) {
        throw SqdaError("executed-not-downward-closed",
                        "executed set omits a predecessor of gate " + std::to_string(id));
      }
    }
  }
  std::vector<int> front;
  for (const Gate& g : gates_) {
    if (executed.contains(g.id)) {
      continue;
    }
    const auto& preds = pred_[static_cast<std::size_t>(g.id)];
    if (std::all_of(preds.begin(), preds.end(),
                    [&](int p) { return executed.contains(p); })) {
      front.push_back(g.id);
    }
  }
  return front;
}

int CircuitDag::gateCount(GateKind kind) const {
  return static_cast<int>(
      std::count_if(gates_.begin(), gates_.end(),
                    [&](const Gate& g) { return g.kind == kind; }));
}

namespace {

GateKind kindFromName(const std::string& name) {
  if (name == "rx") {
    return GateKind::Rx;
  }
  if (name == "ry") {
    return GateKind::Ry;
  }
  if (name == "swap_pow") {
    return GateKind::SwapPow;
  }
  if (name == "measure") {
    return GateKind::Measure;
  }
  throw SqdaError("non-native-gate", "unknown gate kind: " + name);
}

} // namespace

CircuitDag parseCircuit(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SqdaError("parse-error", e.what());
  }
  try {
    const int qubits = j.at("qubits").get<int>();
    std::vector<Gate> gates;
    for (const auto& gj : j.at("gates")) {
      Gate g;
      g.kind = kindFromName(gj.at("kind").get<std::string>());
      switch (g.kind) {
      case GateKind::Rx:
      case GateKind::Ry:
        g.param = gj.at("theta").get<double>();
        g.q1 = gj.at("q").get<int>();
        break;
      case GateKind::SwapPow:
        g.param = gj.at("alpha").get<double>();
        g.q1 = gj.at("q1").get<int>();
        g.q2 = gj.at("q2").get<int>();
        break;
      case GateKind::Measure:
        g.q1 = gj.at("q").get<int>();
        break;
      }
      gates.push_back(g);
    }
    return CircuitDag(qubits, std::move(gates));
  } catch (const nlohmann::json::exception& e) {
    throw SqdaError("parse-error", e.what());
  }
}

std::string serializeCircuit(const CircuitDag& dag) {
  nlohmann::json j;
  j["qubits"] = dag.qubitCount();
  j["gates"] = nlohmann::json::array();
  for (const Gate& g : dag.gates()) {
    nlohmann::json gj;
    gj["kind"] = to_string(g.kind);
    switch (g.kind) {
    case GateKind::Rx:
    case GateKind::Ry:
      gj["theta"] = g.param;
      gj["q"] = g.q1;
      break;
    case GateKind::SwapPow:
      gj["alpha"] = g.param;
      gj["q1"] = g.q1;
      gj["q2"] = g.q2;
      break;
    case GateKind::Measure:
      gj["q"] = g.q1;
      break;
    }
    j["gates"].push_back(gj);
  }
  return j.dump(2);
}

namespace {

// Platform-stable uniform draws over mt19937_64 (the std distributions are
// implementation-defined).
std::uint64_t nextBelow(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

double nextUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

CircuitDag randomCircuit(int qubits, int gates, std::uint64_t seed, bool measureAll) {
  if (qubits < 1 || gates < 0) {
    throw SqdaError("invalid-dimensions", "randomCircuit needs qubits >= 1, gates >= 0");
  }
  std::mt19937_64 rng(seed);
  std::vector<Gate> out;
  out.reserve(static_cast<std::size_t>(gates) + (measureAll ? static_cast<std::size_t>(qubits) : 0));
  const int kinds = qubits >= 2 ? 3 : 2;
  for (int i = 0; i < gates; ++i) {
    Gate g;
    switch (nextBelow(rng, static_cast<std::uint64_t>(kinds))) {
    case 0:
      g.kind = GateKind::Rx;
      break;
    case 1:
      g.kind = GateKind::Ry;
      break;
    default:
      g.kind = GateKind::SwapPow;
      break;
    }
    if (g.kind == GateKind::SwapPow) {
      g.param = 1.0 - nextUnit(rng); // alpha in (0, 1]
      g.q1 = static_cast<int>(nextBelow(rng, static_cast<std::uint64_t>(qubits)));
      g.q2 = static_cast<int>(nextBelow(rng, static_cast<std::uint64_t>(qubits - 1)));
      if (g.q2 >= g.q1) {
        ++g.q2;
      }
    } else {
      g.param = nextUnit(rng) * 2.0 * std::numbers::pi;
      g.q1 = static_cast<int>(nextBelow(rng, static_cast<std::uint64_t>(qubits)));
    }
    out.push_back(g);
  }
  if (measureAll) {
    for (int q = 0; q < qubits; ++q) {
      Gate g;
      g.kind = GateKind::Measure;
      g.q1 = q;
      out.push_back(g);
    }
  }
  return CircuitDag(qubits, std::move(out));
}

} // namespace sqda
