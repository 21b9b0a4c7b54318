#ifndef CODESCENT_SCENARIO_FILE_HPP
#define CODESCENT_SCENARIO_FILE_HPP

#include <string>
#include <string_view>

#include "codescent/module.hpp"
#include "codescent/scenarios.hpp"

namespace codescent {

/// A parsed scenario file.
struct ScenarioSpec {
    ElementaryModule module;
    DescentDatum descent;
    RunRange run;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Parses the line-oriented scenario format:
///
///     # comment
///     [prime]
///     l = 2
///     [module]
///     free_rank = 1
///     lpower = 1            # Λ/(2)
///     poly = [0, 1]         # Λ/(T), ascending coefficients
///     [descent]
///     kind = generic        # or special
///     e = 1
///     generator = [[1]]     # one coefficient list per coordinate
///     generator = [[0, 1]]
///     [run]
///     n_min = 2
///     n_max = 6
///     k = 0
///
/// Syntax and semantic errors throw ParseError anchored at the offending
/// line and column. The descent datum is validated.
ScenarioSpec parse_scenario(std::string_view text);

/// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
/// A non-empty title is written as a leading comment.
std::string serialize_scenario(const ScenarioSpec& spec, const std::string& title = {});

ScenarioSpec spec_of(const Scenario& s);

}  // namespace codescent

#endif  // CODESCENT_SCENARIO_FILE_HPP
