#include <doctest.h>

#include <string>

#include "codescent/error.hpp"
#include "codescent/scenario_file.hpp"
#include "support/models.hpp"

using namespace codescent;

namespace {

const char* kMinimal = R"(# Λ with trivial descent
[prime]
l = 2

[module]
free_rank = 1

[descent]
kind = generic
e = 0

[run]
n_min = 1
n_max = 5
)";

const char* kProp14 = R"([prime]
l = 2
[module]
free_rank = 1
[descent]
kind = generic
e = 1
generator = [[1]]
generator = [[0, 1]]
[run]
n_min = 2
n_max = 6
k = 0
)";

ParseError parse_error(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "");
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
}

}  // namespace

TEST_CASE("minimal file parses to a trivial-case scenario") {
    const ScenarioSpec s = parse_scenario(kMinimal);
    CHECK(s.module == ElementaryModule(Prime(2), 1));
    CHECK(s.descent == DescentDatum::generic(0));
    CHECK(s.run == RunRange{1, 5, 0});
    CHECK(classify_case(s.module, s.descent) == CaseTag::Trivial);
}

TEST_CASE("quadratic-field file parses to the built-in data") {
    const ScenarioSpec s = parse_scenario(kProp14);
    CHECK(s == spec_of(scenario_prop14(1)));
}

TEST_CASE("torsion entries and special descent") {
    const ScenarioSpec s = parse_scenario(R"(
[prime]
l = 2
[module]
free_rank = 1
poly = [2, 1]   # T + 2
lpower = 3
[descent]
kind = special
[run]
n_min = 1
n_max = 4
k = -1
)");
    REQUIRE(s.module.torsion().size() == 2);
    CHECK(std::get<Distinguished>(s.module.torsion()[0]).poly == IntPoly{2, 1});
    CHECK(std::get<LPower>(s.module.torsion()[1]).exponent == 3);
    CHECK(s.descent.is_special());
    CHECK(s.run.k == -1);
}

TEST_CASE("semantic errors") {
    const std::string bad_poly = replace(kMinimal, "free_rank = 1\n", "free_rank = 1\npoly = [1, 1, 1]\n");
    const ParseError e = parse_error(bad_poly);
    CHECK(e.line() == 7);
    CHECK(e.column() == 8);
    CHECK(std::string(e.what()).find("not distinguished") != std::string::npos);
    CHECK(std::string(e.what()).find("T^2 + T + 1") != std::string::npos);

    const ParseError invalid = parse_error(replace(kProp14, "generator = [[0, 1]]\n", ""));
    CHECK(invalid.line() == 8);
    CHECK(std::string(invalid.what()).find("witness [0, 1]") != std::string::npos);

    CHECK(parse_error(replace(kMinimal, "l = 2", "l = 4")).line() == 3);
    CHECK(parse_error(replace(kMinimal, "n_max = 5", "n_max = 0")).line() == 14);
    CHECK(parse_error(replace(kMinimal, "kind = generic", "kind = other")).line() == 9);
    CHECK(parse_error(replace(kMinimal, "e = 0\n", "")).line() == 9);
    CHECK(parse_error(replace(kProp14, "kind = generic\ne = 1", "kind = special")).line() == 7);
    CHECK(parse_error(replace(kMinimal, "free_rank = 1", "free_rank = 1\nlpower = 0")).line() == 7);
    CHECK(parse_error(replace(kProp14, "[[0, 1]]", "[[0, 1], [1]]")).line() == 9);
}

TEST_CASE("syntax errors carry line and column") {
    const ParseError a = parse_error(replace(kMinimal, "free_rank = 1", "free_rank = [1"));
    CHECK(a.line() == 6);
    CHECK(a.column() == 15);

    const ParseError b = parse_error(replace(kMinimal, "[run]", "[runs]"));
    CHECK(b.line() == 12);
    CHECK(std::string(b.what()).find("unknown section") != std::string::npos);

    const ParseError c = parse_error(replace(kMinimal, "e = 0", "e = 0 1"));
    CHECK(c.line() == 10);
    CHECK(c.column() == 7);

    const ParseError d = parse_error(replace(kMinimal, "e = 0", "colour = 3"));
    CHECK(d.line() == 10);
    CHECK(d.column() == 1);

    CHECK(parse_error(replace(kMinimal, "e = 0", "e 0")).line() == 10);
    CHECK(parse_error(replace(kMinimal, "e = 0", "e = 0\ne = 1")).line() == 11);
    CHECK(parse_error(replace(kMinimal, "e = 0", "e = zero")).column() == 5);
    CHECK(parse_error(std::string("l = 2\n") + kMinimal).line() == 1);
    CHECK(parse_error(replace(kMinimal, "[prime]\nl = 2\n", "")).line() == 0);
    CHECK(parse_error(std::string(kMinimal) + "[prime]\nl = 3\n").line() == 15);
    CHECK(parse_error(replace(kProp14, "[[1]]", "[[1]")).column() == 17);
    CHECK(parse_error(replace(kProp14, "[[1]]", "[[1],]")).column() == 18);
}

TEST_CASE("serialization is canonical and round-trips") {
    const std::string text = serialize_scenario(parse_scenario(kProp14), "prop14:e=1");
    CHECK(text ==
          "# prop14:e=1\n[prime]\nl = 2\n\n[module]\nfree_rank = 1\n\n[descent]\nkind = generic\ne = 1\n"
          "generator = [[1]]\ngenerator = [[0, 1]]\n\n[run]\nn_min = 2\nn_max = 6\nk = 0\n");
    CHECK(serialize_scenario(parse_scenario(text)) == serialize_scenario(parse_scenario(kProp14)));

    for (const auto& name : builtin_scenario_names()) {
        const ScenarioSpec s = spec_of(scenario_by_name(name));
        CAPTURE(name);
        CHECK(parse_scenario(serialize_scenario(s, name)) == s);
    }
}

TEST_CASE("property: random models round-trip through the text form") {
    codescent::testing::Rng rng(61);
    for (int it = 0; it < 200; ++it) {
        codescent::testing::ModelBounds b;
        b.ell = rng.coin() ? 2 : 3;
        b.max_level = b.ell == 2 ? 2 : 1;
        const auto model = codescent::testing::random_generic_model(rng, b);
        const RunRange run{static_cast<unsigned>(rng.uniform(1, 3)), static_cast<unsigned>(rng.uniform(4, 7)),
                           static_cast<int>(rng.uniform(-1, 2))};
        const ScenarioSpec s{model.module, model.descent, run};
        const std::string text = serialize_scenario(s);
        CAPTURE(text);
        const ScenarioSpec back = parse_scenario(text);
        REQUIRE(back == s);
        REQUIRE(serialize_scenario(back) == text);
    }
}
