#ifndef CODESCENT_CLI_HPP
#define CODESCENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "codescent/asymptotics.hpp"
#include "codescent/scenario_file.hpp"

namespace codescent::cli {

inline constexpr const char* kSchemaVersion = "codescent/1";

enum ExitCode : int { kOk = 0, kFail = 1, kInputError = 2, kCapExceeded = 3 };

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err; `-` or a missing file argument reads the scenario
/// from in.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParamTriple& t);
ParamTriple triple_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitResult& fit, const OrderSequence& seq);
nlohmann::json to_json(const MirrorReport& report);

}  // namespace codescent::cli

#endif  // CODESCENT_CLI_HPP
