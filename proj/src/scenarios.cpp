#include "codescent/scenarios.hpp"

#include <charconv>
#include <map>

#include "codescent/error.hpp"

namespace codescent {

namespace {

std::int64_t small_power(const Prime& ell, unsigned e) {
    mpz_class p = ell.power(e);
    if (!p.fits_slong_p() || p > 1 << 20) throw InputError("level e too large for a built-in scenario");
    return p.get_si();
}

// Y = {T^j e_c : j < ℓ^e, c < components}.
std::vector<ModuleElement> full_level_span(const ElementaryModule& e, unsigned level) {
    const auto count = small_power(e.prime(), level);
    std::vector<ModuleElement> gens;
    for (std::size_t c = 0; c < e.free_rank(); ++c) {
        for (std::int64_t j = 0; j < count; ++j) {
            ModuleElement y = ModuleElement::zero(e);
            y.free_coords[c] = IntPoly::monomial(static_cast<unsigned>(j), 1);
            gens.push_back(std::move(y));
        }
    }
    return gens;
}

ElementaryModule demo_module() {
    return ElementaryModule(Prime(2), 1, {LPower{1}, Distinguished{IntPoly{0, 1}}});
}

unsigned parse_unsigned(const std::string& text, const std::string& what) {
    unsigned v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) throw InputError("bad value for " + what + ": '" + text + "'");
    return v;
}

// "l=3,e=1" -> {l: 3, e: 1}
std::map<std::string, unsigned> parse_params(const std::string& text) {
    std::map<std::string, unsigned> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw InputError("expected key=value in scenario parameters, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        if (!out.emplace(key, parse_unsigned(item.substr(eq + 1), key)).second) {
            throw InputError("duplicate scenario parameter '" + key + "'");
        }
        pos = comma + 1;
    }
    return out;
}

unsigned take(std::map<std::string, unsigned>& params, const std::string& key, const std::string& scenario) {
    auto it = params.find(key);
    if (it == params.end()) throw InputError(scenario + " needs parameter '" + key + "'");
    const unsigned v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, unsigned>& params, const std::string& scenario) {
    if (!params.empty()) throw InputError("unknown parameter '" + params.begin()->first + "' for " + scenario);
}

IdentityCheck make_check(std::string name, std::int64_t lhs, std::int64_t rhs) {
    return {std::move(name), lhs, rhs, lhs == rhs};
}

}  // namespace

Scenario scenario_prop14(unsigned e) {
    if (e > 8) throw InputError("prop14 supports e <= 8");
    ElementaryModule m(Prime(2), 1);
    const auto le = small_power(m.prime(), e);
    return Scenario{"prop14:e=" + std::to_string(e),
                    m,
                    DescentDatum::generic(e, full_level_span(m, e)),
                    ParamTriple{1, 0, -le, Grade::Bounded},
                    RunRange{e + 1, std::max(6u, e + 4), 0},
                    "E = L, Y = {T^j : j < 2^e}; x(n) = n(2^n - 2^e)"};
}

Scenario scenario_prop15(const Prime& ell, unsigned e) {
    if (ell.value() == 2) throw InputError("prop15 needs an odd prime");
    if (ell.value() > 97) throw InputError("prop15 supports primes up to 97");
    const auto rank = static_cast<std::size_t>((ell.value() - 1) / 2);
    ElementaryModule m(ell, rank);
    const auto le = small_power(ell, e);
    const unsigned n_max_default = ell.value() == 3 ? 4u : 3u;
    return Scenario{"prop15:l=" + std::to_string(ell.value()) + ",e=" + std::to_string(e),
                    m,
                    DescentDatum::generic(e, full_level_span(m, e)),
                    ParamTriple{static_cast<std::int64_t>(rank), 0, -le * static_cast<std::int64_t>(rank), Grade::Bounded},
                    RunRange{e + 1, std::max(n_max_default, e + 4), 0},
                    "E = L^((l-1)/2), Y = all of E mod omega_e"};
}

Scenario scenario_special_demo() {
    ElementaryModule m = demo_module();
    return Scenario{"special-demo", m, DescentDatum::special(), ParamTriple{1, 1, 2, Grade::Strict},
                    RunRange{1, 6, 0}, "E = L + L/(2) + L/(T), special case"};
}

Scenario scenario_trivial_demo() {
    ElementaryModule m = demo_module();
    return Scenario{"trivial-demo", m, DescentDatum::generic(0), ParamTriple{1, 1, 1, Grade::Strict},
                    RunRange{1, 6, 0}, "E = L + L/(2) + L/(T), trivial descent"};
}

Scenario scenario_zero_demo() {
    return Scenario{"zero-demo", ElementaryModule(Prime(2), 0), DescentDatum::generic(0),
                    ParamTriple{0, 0, 0, Grade::Strict}, RunRange{1, 6, 0}, "zero module"};
}

Scenario scenario_by_name(const std::string& name) {
    if (name == "special-demo") return scenario_special_demo();
    if (name == "trivial-demo") return scenario_trivial_demo();
    if (name == "zero-demo") return scenario_zero_demo();
    const std::size_t colon = name.find(':');
    const std::string family = name.substr(0, colon);
    if (family == "prop14" || family == "prop15") {
        if (colon == std::string::npos) throw InputError(family + " needs parameters, e.g. " + family + ":e=1");
        auto params = parse_params(name.substr(colon + 1));
        if (family == "prop14") {
            const unsigned e = take(params, "e", family);
            reject_leftovers(params, family);
            return scenario_prop14(e);
        }
        const unsigned l = take(params, "l", family);
        const unsigned e = take(params, "e", family);
        reject_leftovers(params, family);
        return scenario_prop15(Prime(l), e);
    }
    throw InputError("unknown scenario '" + name + "'");
}

std::vector<std::string> builtin_scenario_names() {
    return {"prop14:e=0", "prop14:e=1",   "prop14:e=2",   "prop15:l=3,e=0", "prop15:l=3,e=1",
            "prop15:l=5,e=0", "special-demo", "trivial-demo", "zero-demo"};
}

MirrorReport mirror_check(const ParamTriple& ts, const ParamTriple& st, const MirrorContext& ctx) {
    MirrorReport r;
    r.identities[0] = make_check("rho", 2 * ts.rho + ctx.delta_t, 2 * st.rho + ctx.delta_s);
    r.identities[1] = make_check("mu", ts.mu, st.mu);
    r.identities[2] = make_check("lambda", ts.lambda_tilde + ctx.t_inf, st.lambda_tilde + ctx.s_inf);
    r.parity_ok = (ctx.delta_s - ctx.delta_t) % 2 == 0;
    if (!r.parity_ok) r.warnings.push_back("delta_S - delta_T is odd; identity (i) has no integral solution");
    if (ctx.delta_s < 0 || ctx.delta_t < 0 || ctx.s_inf < 0 || ctx.t_inf < 0) {
        r.warnings.push_back("mirror context has a negative entry");
    }
    return r;
}

bool check_prop12(std::int64_t lambda_s, std::int64_t s_inf) { return lambda_s >= s_inf - 1; }

MirrorCase prop14_mirror_case(unsigned e) {
    const Scenario s = scenario_prop14(e);
    MirrorCase c;
    c.ts = s.expected;
    c.context = MirrorContext{2, 0, 1, 2 * small_power(Prime(2), e)};
    // Solve the three identities for the (S,T) side.
    c.st.rho = (2 * c.ts.rho + c.context.delta_t - c.context.delta_s) / 2;
    c.st.mu = c.ts.mu;
    c.st.lambda_tilde = c.ts.lambda_tilde + c.context.t_inf - c.context.s_inf;
    c.st.grade = Grade::Bounded;
    return c;
}

}  // namespace codescent
