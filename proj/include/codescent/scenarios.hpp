#ifndef CODESCENT_SCENARIOS_HPP
#define CODESCENT_SCENARIOS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "codescent/invariants.hpp"
#include "codescent/module.hpp"

namespace codescent {

/// Inclusive level range and exponent shift for an order sequence.
struct RunRange {
    unsigned n_min = 1;
    unsigned n_max = 1;
    int k = 0;

    friend bool operator==(const RunRange&, const RunRange&) = default;
};

/// A named model: module, descent datum, the triple it should produce and
/// the range on which to check it.
struct Scenario {
    std::string name;
    ElementaryModule module;
    DescentDatum descent;
    ParamTriple expected;
    RunRange run;
    std::string note;
};

/// ℓ = 2, E = Λ, Y = {T^j : j < 2^e}, so Y spans E/ω_eE and the level-e
/// quotient is trivial. Expected (1, 0, -2^e), bounded.
Scenario scenario_prop14(unsigned e);

/// ℓ odd, E = Λ^{(ℓ-1)/2} with Y spanning all of E modulo ω_e, as in the ℓ = 2
/// scenario. Expected ((ℓ-1)/2, 0, -ℓ^e(ℓ-1)/2), bounded.
Scenario scenario_prop15(const Prime& ell, unsigned e);

/// ℓ = 2, E = Λ ⊕ Λ/(2) ⊕ Λ/(T), special case: (1, 1, 2), strict.
Scenario scenario_special_demo();
/// Same module, trivial descent: (1, 1, 1), strict.
Scenario scenario_trivial_demo();
/// Zero module, trivial descent: (0, 0, 0), strict.
Scenario scenario_zero_demo();

/// Resolves "prop14:e=2", "prop15:l=3,e=1", "special-demo", "trivial-demo",
/// "zero-demo". Throws InputError on unknown names or bad parameters.
Scenario scenario_by_name(const std::string& name);

/// A representative list of valid names, one per built-in family member
/// exercised by the test suites.
std::vector<std::string> builtin_scenario_names();

struct MirrorContext {
    std::int64_t delta_s = 0;
    std::int64_t delta_t = 0;
    std::int64_t s_inf = 0;
    std::int64_t t_inf = 0;
};

struct IdentityCheck {
    std::string name;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds = false;
};

/// The three reflection identities between the parameters on the (T, S) and
/// (S, T) sides:
///   (i)   2ρ_TS + δ_T = 2ρ_ST + δ_S   (doubled to stay integral)
///   (ii)  μ_TS = μ_ST
///   (iii) λ̃_TS + t∞ = λ̃_ST + s∞
struct MirrorReport {
    std::array<IdentityCheck, 3> identities;
    /// δ_S - δ_T is even; identity (i) cannot hold with integral ρ otherwise.
    bool parity_ok = true;
    std::vector<std::string> warnings;

    bool all_hold() const {
        return identities[0].holds && identities[1].holds && identities[2].holds;
    }
};

MirrorReport mirror_check(const ParamTriple& ts, const ParamTriple& st, const MirrorContext& ctx);

/// λ_S ≥ s∞ - 1.
bool check_prop12(std::int64_t lambda_s, std::int64_t s_inf);

/// The (S,T)-side triple and context obtained from the ℓ = 2 model at level
/// e by solving the reflection identities with δ_S = 2, δ_T = 0, s∞ = 1 and
/// t∞ = 2^{e+1}.
struct MirrorCase {
    ParamTriple ts;
    ParamTriple st;
    MirrorContext context;
};
MirrorCase prop14_mirror_case(unsigned e);

}  // namespace codescent

#endif  // CODESCENT_SCENARIOS_HPP
