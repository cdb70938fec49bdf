#include "sqda/json_io.hpp"

#include <utility>

namespace sqda {

using nlohmann::json;

json parseJsonText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SqdaError("parse-error", e.what());
  }
}

json arrayToJson(const ArrayConfig& config) {
  json j;
  j["rows"] = config.rows();
  j["cols"] = config.cols();
  j["bus_row"] = config.busRow();
  j["r_columns"] = config.rColumns();
  if (config.hasStandardChannels()) {
    j["channels"] = "standard";
  } else {
    json channels = json::array();
    for (const auto& [a, b] : config.channels()) {
      channels.push_back(json::array({json::array({a.row, a.col}), json::array({b.row, b.col})}));
    }
    j["channels"] = std::move(channels);
  }
  return j;
}

std::shared_ptr<const ArrayConfig> arrayFromJson(const json& j) {
  try {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const int busRow = j.at("bus_row").get<int>();
    if (j.at("channels").is_string()) {
      if (j.at("channels").get<std::string>() != "standard") {
        throw SqdaError("parse-error", "unknown channel preset");
      }
      return std::make_shared<const ArrayConfig>(buildStandardArray(rows, cols, busRow));
    }
    std::set<int> rColumns;
    for (const auto& c : j.at("r_columns")) {
      rColumns.insert(c.get<int>());
    }
    std::vector<std::pair<Dot, Dot>> channels;
    for (const auto& pair : j.at("channels")) {
      channels.emplace_back(Dot{pair.at(0).at(0).get<int>(), pair.at(0).at(1).get<int>()},
                            Dot{pair.at(1).at(0).get<int>(), pair.at(1).at(1).get<int>()});
    }
    return std::make_shared<const ArrayConfig>(rows, cols, busRow, std::move(rColumns),
                                               channels);
  } catch (const json::exception& e) {
    throw SqdaError("parse-error", e.what());
  }
}

namespace {

json operationToJson(const Operation& op) {
  json j;
  j["op"] = to_string(op.type);
  switch (op.type) {
  case OpType::G1:
    j["e"] = op.e1;
    j["gate"] = {{"kind", to_string(op.gate.kind)}, {"theta", op.gate.param}};
    break;
  case OpType::G2:
    j["e1"] = op.e1;
    j["e2"] = op.e2;
    j["gate"] = {{"kind", to_string(op.gate.kind)}, {"alpha", op.gate.param}};
    break;
  default:
    j["e"] = op.e1;
    break;
  }
  return j;
}

Operation operationFromJson(const json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "g1") {
    const json& gate = j.at("gate");
    const std::string kind = gate.at("kind").get<std::string>();
    if (kind != "rx" && kind != "ry") {
      throw SqdaError("parse-error", "g1 gate kind must be rx or ry");
    }
    return Operation::g1(j.at("e").get<int>(),
                         GatePayload{kind == "rx" ? GateKind::Rx : GateKind::Ry,
                                     gate.at("theta").get<double>()});
  }
  if (op == "g2") {
    const json& gate = j.at("gate");
    if (gate.at("kind").get<std::string>() != "swap_pow") {
      throw SqdaError("parse-error", "g2 gate kind must be swap_pow");
    }
    return Operation::g2(j.at("e1").get<int>(), j.at("e2").get<int>(),
                         GatePayload{GateKind::SwapPow, gate.at("alpha").get<double>()});
  }
  if (op == "m") {
    return Operation::measure(j.at("e").get<int>());
  }
  for (OpType dir : {OpType::ShuttleUp, OpType::ShuttleDown, OpType::ShuttleLeft,
                     OpType::ShuttleRight}) {
    if (op == to_string(dir)) {
      return Operation::shuttle(dir, j.at("e").get<int>());
    }
  }
  throw SqdaError("parse-error", "unknown operation '" + op + "'");
}

} // namespace

json procedureToJson(const Procedure& procedure) {
  json j;
  j["array"] = arrayToJson(procedure.initial.config());
  json electrons = json::object();
  for (const auto& [e, d] : procedure.initial.placement()) {
    electrons[std::to_string(e)] = json::array({d.row, d.col});
  }
  j["electrons"] = std::move(electrons);
  json steps = json::array();
  for (const StepLabel& label : procedure.steps) {
    json ops = json::array();
    for (const Operation& op : label.ops) {
      ops.push_back(operationToJson(op));
    }
    steps.push_back(std::move(ops));
  }
  j["steps"] = std::move(steps);
  return j;
}

Procedure procedureFromJson(const json& j) {
  try {
    auto config = arrayFromJson(j.at("array"));
    std::map<int, Dot> placement;
    for (const auto& [key, value] : j.at("electrons").items()) {
      placement.emplace(std::stoi(key),
                        Dot{value.at(0).get<int>(), value.at(1).get<int>()});
    }
    Procedure procedure{MachineState(std::move(config), std::move(placement)), {}};
    for (const auto& stepJson : j.at("steps")) {
      StepLabel label;
      for (const auto& opJson : stepJson) {
        label.ops.push_back(operationFromJson(opJson));
      }
      procedure.steps.push_back(std::move(label));
    }
    return procedure;
  } catch (const json::exception& e) {
    throw SqdaError("parse-error", e.what());
  } catch (const std::invalid_argument&) {
    throw SqdaError("parse-error", "electron keys must be integers");
  }
}

json reportToJson(const ProcedureReport& report) {
  json j;
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"rule", to_string(v.rule)},
                          {"step", v.stepIndex},
                          {"electrons", v.electrons},
                          {"message", v.message}});
  }
  j["violations"] = std::move(violations);
  j["crosstalk_events"] = report.crosstalkEvents;
  return j;
}

json certReportToJson(const CertReport& report) {
  json j;
  json conditions = json::object();
  for (const auto& [name, result] : report.verdicts) {
    json entry;
    entry["verdict"] = to_string(result.verdict);
    if (result.verdict == Verdict::Fails) {
      entry["witness"] = result.witness;
    }
    conditions[name] = std::move(entry);
  }
  j["conditions"] = std::move(conditions);
  j["states_explored"] = report.statesExplored;
  j["all_hold"] = report.allHold();
  return j;
}

json statsToJson(const CompileStats& stats) {
  return json{{"shuttle_ops", stats.shuttleOps},
              {"gate_ops", stats.gateOps},
              {"measure_ops", stats.measureOps},
              {"steps", stats.steps},
              {"wall_time_ms", stats.wallTimeMs}};
}

} // namespace sqda
