#include "sqda/circuit.hpp"
#include "sqda/compiler.hpp"
#include "sqda/constraints.hpp"
#include "sqda/fidelity.hpp"
#include "sqda/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace sqda;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SqdaError("io-error", "cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SqdaError("io-error", "cannot write '" + path + "'");
  }
  out << content;
}

std::shared_ptr<const ArrayConfig> loadArray(const std::string& path) {
  return arrayFromJson(parseJsonText(readFile(path)));
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    writeFile(out, content);
  }
}

struct CompileArgs {
  std::string array;
  std::string circuit;
  std::string mode = "heuristic";
  std::string crosstalk = "avoid";
  std::uint64_t seed = 0; // recorded in the stats sidecar only
  int lookaheadDepth = 5;
  double lookaheadDecay = 0.5;
  std::string out;
};

int runCompile(const CompileArgs& args) {
  auto config = loadArray(args.array);
  const CircuitDag dag = parseCircuit(readFile(args.circuit));
  CompileOptions options;
  options.mode = args.mode == "naive" ? CompileMode::Naive : CompileMode::Heuristic;
  options.crosstalk =
      args.crosstalk == "allow" ? CrosstalkMode::Allow : CrosstalkMode::Avoid;
  options.lookaheadDepth = args.lookaheadDepth;
  options.lookaheadDecay = args.lookaheadDecay;
  CompileResult result = compileCircuit(config, dag, options);
  emit(args.out, procedureToJson(result.procedure).dump() + "\n");
  json stats = statsToJson(result.stats);
  stats["n"] = dag.qubitCount();
  stats["m"] = dag.gateCount(GateKind::SwapPow);
  stats["mode"] = args.mode;
  stats["crosstalk"] = args.crosstalk;
  stats["seed"] = args.seed;
  stats["fidelity"] = estimateFidelity(result.procedure, FidelityParams{}).fidelity;
  if (!args.out.empty() && args.out != "-") {
    writeFile(args.out + ".stats.json", stats.dump(2) + "\n");
  }
  return 0;
}

struct VerifyArgs {
  std::string array;
  std::string circuit;
  std::string procedure;
  bool countCrosstalk = false;
};

int runVerify(const VerifyArgs& args) {
  const Procedure procedure = procedureFromJson(parseJsonText(readFile(args.procedure)));
  if (!args.array.empty() && !(*loadArray(args.array) == procedure.initial.config())) {
    throw SqdaError("array-mismatch",
                    "--array disagrees with the array embedded in the procedure");
  }
  const CircuitDag dag = parseCircuit(readFile(args.circuit));
  const ProcedureReport report = checkProcedure(
      procedure, dag, args.countCrosstalk ? CrosstalkRule::Count : CrosstalkRule::Enforce);
  std::cout << reportToJson(report).dump(2) << "\n";
  return report.violations.empty() ? 0 : 1;
}

struct FidelityArgs {
  std::string procedure;
  double fSh = 0.996;
  double fCt = 0.905;
  bool thetaModel = false;
};

int runFidelity(const FidelityArgs& args) {
  const Procedure procedure = procedureFromJson(parseJsonText(readFile(args.procedure)));
  const FidelityReport report =
      args.thetaModel ? estimateFidelityAngleModel(procedure, args.fSh)
                      : estimateFidelity(procedure, FidelityParams{args.fSh, args.fCt});
  const json j{{"shuttle_ops", report.counts.shuttleOps},
               {"crosstalk_events", report.counts.crosstalkEvents},
               {"fidelity", report.fidelity},
               {"log_fidelity", report.logFidelity}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct RandgenArgs {
  int qubits = 0;
  int gates = 0;
  std::uint64_t seed = 0;
  bool measureAll = false;
  std::string out;
};

int runRandgen(const RandgenArgs& args) {
  const CircuitDag dag = randomCircuit(args.qubits, args.gates, args.seed, args.measureAll);
  emit(args.out, serializeCircuit(dag) + "\n");
  return 0;
}

struct CertifyArgs {
  std::string array;
  int electrons = 1;
  std::size_t budget = 2000000;
  bool serial = false;
};

int runCertify(const CertifyArgs& args) {
  auto config = loadArray(args.array);
  const CertReport report =
      certifyConditions(*config, args.electrons, args.budget, !args.serial);
  std::cout << certReportToJson(report).dump(2) << "\n";
  const bool anyFails =
      std::any_of(report.verdicts.begin(), report.verdicts.end(),
                  [](const auto& entry) { return entry.second.verdict == Verdict::Fails; });
  return anyFails ? 1 : 0;
}

struct StatsArgs {
  std::string procedures;
  std::string out;
};

int runStats(const StatsArgs& args) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.procedures)) {
    if (entry.is_regular_file() && entry.path().filename().string().ends_with(".stats.json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::ostringstream csv;
  csv << "n,m,mode,crosstalk,shuttle_ops,gate_ops,measure_ops,steps,wall_time_ms,fidelity\n";
  for (const fs::path& file : files) {
    const json j = parseJsonText(readFile(file.string()));
    csv << j.at("n").get<long>() << ',' << j.at("m").get<long>() << ','
        << j.at("mode").get<std::string>() << ',' << j.at("crosstalk").get<std::string>()
        << ',' << j.at("shuttle_ops").get<long>() << ',' << j.at("gate_ops").get<long>()
        << ',' << j.at("measure_ops").get<long>() << ',' << j.at("steps").get<long>()
        << ',' << j.at("wall_time_ms").get<double>() << ','
        << j.at("fidelity").get<double>() << '\n';
  }
  emit(args.out, csv.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"compiler and verifier for shuttling procedures on quantum dot arrays"};
  app.require_subcommand(1);
  int rc = 0;

  CompileArgs compileArgs;
  CLI::App* compile = app.add_subcommand("compile", "translate a circuit into a procedure");
  compile->add_option("--array", compileArgs.array)->required();
  compile->add_option("--circuit", compileArgs.circuit)->required();
  compile->add_option("--mode", compileArgs.mode)
      ->check(CLI::IsMember({"heuristic", "naive"}));
  compile->add_option("--crosstalk", compileArgs.crosstalk)
      ->check(CLI::IsMember({"avoid", "allow"}));
  compile->add_option("--seed", compileArgs.seed);
  compile->add_option("--lookahead-depth", compileArgs.lookaheadDepth);
  compile->add_option("--lookahead-decay", compileArgs.lookaheadDecay);
  compile->add_option("--out", compileArgs.out)->required();
  compile->callback([&] { rc = runCompile(compileArgs); });

  VerifyArgs verifyArgs;
  CLI::App* verify = app.add_subcommand("verify", "check a procedure against the constraints");
  verify->add_option("--array", verifyArgs.array);
  verify->add_option("--circuit", verifyArgs.circuit)->required();
  verify->add_option("--procedure", verifyArgs.procedure)->required();
  verify->add_flag("--count-crosstalk", verifyArgs.countCrosstalk);
  verify->callback([&] { rc = runVerify(verifyArgs); });

  FidelityArgs fidelityArgs;
  CLI::App* fidelity = app.add_subcommand("fidelity", "estimate procedure fidelity");
  fidelity->add_option("--procedure", fidelityArgs.procedure)->required();
  fidelity->add_option("--f-sh", fidelityArgs.fSh);
  fidelity->add_option("--f-ct", fidelityArgs.fCt);
  fidelity->add_flag("--theta-model", fidelityArgs.thetaModel);
  fidelity->callback([&] { rc = runFidelity(fidelityArgs); });

  RandgenArgs randgenArgs;
  CLI::App* randgen = app.add_subcommand("randgen", "generate a random native-gate circuit");
  randgen->add_option("--qubits", randgenArgs.qubits)->required();
  randgen->add_option("--gates", randgenArgs.gates)->required();
  randgen->add_option("--seed", randgenArgs.seed);
  randgen->add_flag("--measure-all", randgenArgs.measureAll);
  randgen->add_option("--out", randgenArgs.out);
  randgen->callback([&] { rc = runRandgen(randgenArgs); });

  CertifyArgs certifyArgs;
  CLI::App* certify = app.add_subcommand("certify", "certify reachability conditions");
  certify->add_option("--array", certifyArgs.array)->required();
  certify->add_option("--electrons", certifyArgs.electrons)->required();
  certify->add_option("--budget", certifyArgs.budget);
  certify->add_flag("--serial", certifyArgs.serial);
  certify->callback([&] { rc = runCertify(certifyArgs); });

  StatsArgs statsArgs;
  CLI::App* stats = app.add_subcommand("stats", "aggregate compile stats into a CSV");
  stats->add_option("--procedures", statsArgs.procedures)->required();
  stats->add_option("--out", statsArgs.out);
  stats->callback([&] { rc = runStats(statsArgs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e); // --help
    }
    const nlohmann::json err{{"error", "usage"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const sqda::SqdaError& e) {
    const nlohmann::json err{{"error", e.code()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    const nlohmann::json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return rc;
}
