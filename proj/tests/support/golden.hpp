// Golden-file cases for the command line. Each case runs run_command on
// arguments relative to tests/golden and compares stdout with a file.
#ifndef CODESCENT_TESTS_GOLDEN_HPP
#define CODESCENT_TESTS_GOLDEN_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "codescent/cli.hpp"

namespace codescent::testing {

inline std::string golden_dir() { return std::string(CODESCENT_TEST_DATA) + "/golden"; }

struct GoldenCase {
    std::string output;              // file under golden/, also the case name
    std::vector<std::string> args;   // "@x" expands to golden/inputs/x
    std::string stdin_input;         // file under golden/inputs fed to stdin, or empty
    int exit_code;
};

inline const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases = {
        {"orders.tsv", {"orders", "@trivial_lambda.scn"}, "", 0},
        {"orders.json", {"--json", "orders", "@trivial_lambda.scn"}, "", 0},
        {"orders_k1.tsv", {"orders", "@trivial_lambda.scn", "--k", "1"}, "", 0},
        {"invariants.tsv", {"invariants", "@prop14_e1.scn"}, "", 0},
        {"invariants.json", {"invariants", "--json", "@prop14_e1.scn"}, "", 0},
        {"fit.tsv", {"fit", "@lambda_y_t.scn"}, "", 0},
        {"fit.json", {"--json", "fit", "@lambda_y_t.scn"}, "", 0},
        {"verify.tsv", {"verify", "@special_demo.scn"}, "", 0},
        {"verify.json", {"--json", "verify", "@special_demo.scn"}, "", 0},
        {"verify_stdin.tsv", {"verify", "-"}, "prop14_e1.scn", 0},
        {"verify_fail.tsv", {"verify", "@short_window.scn"}, "", 1},
        {"verify_fail.json", {"--json", "verify", "@short_window.scn"}, "", 1},
        {"scenario.tsv", {"scenario", "trivial-demo"}, "", 0},
        {"scenario.json", {"--json", "scenario", "trivial-demo"}, "", 0},
        {"scenario_emit.tsv", {"scenario", "prop15:l=3,e=1", "--emit"}, "", 0},
        {"scenario_emit.json", {"--json", "scenario", "prop15:l=3,e=1", "--emit"}, "", 0},
        {"mirror.tsv", {"mirror", "--ts", "1,0,-2", "--st", "0,0,1", "--ds", "2", "--dt", "0", "--s", "1", "--t", "4"}, "", 0},
        {"mirror.json",
         {"--json", "mirror", "--ts", "1,0,-2", "--st", "0,0,1", "--ds", "2", "--dt", "0", "--s", "1", "--t", "4"}, "", 0},
        {"mirror_fail.tsv", {"mirror", "--ts", "1,0,-2", "--st", "0,0,1", "--ds", "2", "--dt", "0", "--s", "1", "--t", "5"}, "", 1},
        {"error_parse.tsv", {"orders", "@bad_syntax.scn"}, "", 2},
        {"error_parse.json", {"--json", "orders", "@bad_syntax.scn"}, "", 2},
        {"error_invalid.json", {"--json", "invariants", "@invalid_descent.scn"}, "", 2},
        {"error_cap.json", {"--json", "--cap", "4", "orders", "@trivial_lambda.scn"}, "", 3},
        {"error_cap.tsv", {"--cap", "8", "scenario", "prop14:e=0"}, "", 3},
    };
    return cases;
}

struct GoldenRun {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline GoldenRun run_golden(const GoldenCase& c) {
    std::vector<std::string> args;
    for (const auto& a : c.args) args.push_back(a.rfind('@', 0) == 0 ? golden_dir() + "/inputs/" + a.substr(1) : a);
    std::istringstream in(c.stdin_input.empty() ? std::string() : read_file(golden_dir() + "/inputs/" + c.stdin_input));
    std::ostringstream out, err;
    GoldenRun r;
    r.exit_code = cli::run_command(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// Stdout, followed by stderr under a marker line when there is any.
inline std::string golden_text(const GoldenRun& r) {
    return r.err.empty() ? r.out : r.out + "--- stderr\n" + r.err;
}

/// Compares against the stored file; with CODESCENT_UPDATE_GOLDEN set,
/// rewrites the file instead.
inline bool matches_golden(const GoldenCase& c, const GoldenRun& r) {
    const std::string path = golden_dir() + "/" + c.output;
    if (std::getenv("CODESCENT_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << golden_text(r);
        return true;
    }
    return read_file(path) == golden_text(r);
}

}  // namespace codescent::testing

#endif
