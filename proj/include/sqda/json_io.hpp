#pragma once

#include "sqda/compiler.hpp"
#include "sqda/constraints.hpp"
#include "sqda/machine.hpp"

#include <nlohmann/json.hpp>

#include <memory>

namespace sqda {

nlohmann::json arrayToJson(const ArrayConfig& config);
std::shared_ptr<const ArrayConfig> arrayFromJson(const nlohmann::json& j);

nlohmann::json procedureToJson(const Procedure& procedure);
Procedure procedureFromJson(const nlohmann::json& j);

nlohmann::json reportToJson(const ProcedureReport& report);
nlohmann::json certReportToJson(const CertReport& report);
nlohmann::json statsToJson(const CompileStats& stats);

/// Parses text as JSON, turning parse failures into SqdaError("parse-error").
nlohmann::json parseJsonText(const std::string& text);

} // namespace sqda
