#include <doctest.h>

#include <sstream>

#include "codescent/cli.hpp"
#include "codescent/error.hpp"
#include "support/golden.hpp"

using namespace codescent;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run_command(args, in, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("golden outputs") {
    for (const auto& c : codescent::testing::golden_cases()) {
        CAPTURE(c.output);
        const auto r = codescent::testing::run_golden(c);
        CHECK(r.exit_code == c.exit_code);
        CHECK(codescent::testing::matches_golden(c, r));
    }
}

TEST_CASE("every subcommand has TSV and JSON goldens") {
    for (const std::string cmd : {"orders", "invariants", "fit", "verify", "scenario", "mirror"}) {
        bool tsv = false, js = false;
        for (const auto& c : codescent::testing::golden_cases()) {
            bool has = false;
            for (const auto& a : c.args) has = has || a == cmd;
            if (!has) continue;
            tsv = tsv || c.output.ends_with(".tsv");
            js = js || c.output.ends_with(".json");
        }
        CAPTURE(cmd);
        CHECK(tsv);
        CHECK(js);
    }
}

TEST_CASE("orders on the trivial Lambda file") {
    const auto r = codescent::testing::run_golden({"", {"orders", "@trivial_lambda.scn"}, "", 0});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "n\tx\n1\t2\n2\t8\n3\t24\n");
}

TEST_CASE("emitted scenario piped into verify") {
    const Result emitted = run({"scenario", "prop14:e=1", "--emit"});
    REQUIRE(emitted.code == 0);
    const Result verified = run({"verify"}, emitted.out);
    CHECK(verified.code == 0);
    CHECK(verified.out.find("fitted\t(1, 0, -2)") != std::string::npos);
    CHECK(verified.out.rfind("result\tPASS", 0) == 0);
}

TEST_CASE("mirror on the quadratic-field contexts") {
    for (unsigned e = 0; e <= 3; ++e) {
        const MirrorCase m = prop14_mirror_case(e);
        auto triple = [](const ParamTriple& t) {
            return std::to_string(t.rho) + "," + std::to_string(t.mu) + "," + std::to_string(t.lambda_tilde);
        };
        const Result r = run({"mirror", "--ts=" + triple(m.ts), "--st=" + triple(m.st), "--ds",
                              std::to_string(m.context.delta_s), "--dt", std::to_string(m.context.delta_t), "--s",
                              std::to_string(m.context.s_inf), "--t", std::to_string(m.context.t_inf)});
        CHECK(r.code == 0);
        CHECK(r.out.find("result\tPASS") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"frobnicate"}).code == cli::kInputError);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"orders", "/nonexistent/file.scn"}).code == cli::kInputError);
    CHECK(run({"scenario", "prop15:l=2,e=0"}).code == cli::kInputError);
    CHECK(run({"mirror", "--ts", "1,0", "--st", "0,0,1", "--ds", "2", "--dt", "0", "--s", "1", "--t", "4"}).code ==
          cli::kInputError);
    CHECK(run({"mirror", "--ts", "1,0,-2"}).code == cli::kInputError);
    CHECK(run({"--cap", "0", "orders"}).code == cli::kInputError);
    CHECK(run({"--k", "-5", "scenario", "trivial-demo"}).code == cli::kInputError);
    CHECK(run({"--cap", "8", "scenario", "special-demo"}).code == cli::kCapExceeded);
    CHECK(run({"mirror", "--ts", "1,0,0", "--st", "1,0,0", "--ds", "1", "--dt", "1", "--s", "0", "--t", "0"}).code ==
          cli::kOk);
    CHECK(run({"mirror", "--ts", "1,0,0", "--st", "1,0,0", "--ds", "1", "--dt", "0", "--s", "0", "--t", "0"}).code ==
          cli::kFail);
}

TEST_CASE("exit codes are a function of the report") {
    for (const auto& c : codescent::testing::golden_cases()) {
        const auto r = codescent::testing::run_golden(c);
        if (!c.output.ends_with(".json")) continue;
        CAPTURE(c.output);
        const json j = json::parse(r.out);
        int expected = cli::kOk;
        if (j.contains("error")) {
            expected = j["error"]["kind"] == "cap" ? cli::kCapExceeded : cli::kInputError;
            CHECK(j["exit_code"] == expected);
        } else if (j.contains("result")) {
            expected = j["result"] == "PASS" ? cli::kOk : cli::kFail;
        }
        CHECK(r.exit_code == expected);
    }
}

TEST_CASE("JSON reports carry the schema tag and round-trip") {
    for (const auto& c : codescent::testing::golden_cases()) {
        if (!c.output.ends_with(".json")) continue;
        CAPTURE(c.output);
        const auto r = codescent::testing::run_golden(c);
        const json j = json::parse(r.out);
        CHECK(j["schema"] == cli::kSchemaVersion);
        CHECK(j.contains("command"));
        CHECK(json::parse(j.dump()) == j);
        if (j.contains("scenario")) {
            const ScenarioSpec spec = cli::spec_from_json(j["scenario"]);
            CHECK(cli::to_json(spec) == j["scenario"]);
        }
        for (const char* key : {"predicted", "expected"}) {
            if (j.contains(key)) CHECK(cli::to_json(cli::triple_from_json(j[key])) == j[key]);
        }
        if (j.contains("fit")) CHECK(cli::to_json(cli::triple_from_json(j["fit"]["triple"])) == j["fit"]["triple"]);
        if (j.contains("text")) CHECK(cli::to_json(parse_scenario(j["text"].get<std::string>())) == j["scenario"]);
    }
}

TEST_CASE("scenario JSON round trip on built-ins") {
    for (const auto& name : builtin_scenario_names()) {
        const ScenarioSpec s = spec_of(scenario_by_name(name));
        CHECK(cli::spec_from_json(cli::to_json(s)) == s);
    }
    CHECK_THROWS_AS(cli::spec_from_json(json{{"prime", 2}}), InputError);
}

TEST_CASE("k override") {
    const Result a = run({"orders", "--k", "1"}, codescent::testing::read_file(codescent::testing::golden_dir() +
                                                                                "/inputs/trivial_lambda.scn"));
    CHECK(a.code == 0);
    CHECK(a.out == "n\tx\n1\t4\n2\t12\n3\t32\n");
}
