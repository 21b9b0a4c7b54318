#include <string>

#include "codescent/cli.hpp"
#include "codescent/error.hpp"

namespace codescent::cli {

using nlohmann::json;

namespace {

// Coefficients that do not fit in 64 bits travel as decimal strings.
json coefficient(const mpz_class& c) {
    if (c.fits_slong_p()) return c.get_si();
    return c.get_str();
}

mpz_class coefficient_from(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) == 0) return z;
    }
    throw InputError("bad coefficient in JSON: " + j.dump());
}

json poly_json(const IntPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(coefficient(c));
    return a;
}

IntPoly poly_from(const json& j) {
    if (!j.is_array()) throw InputError("expected a coefficient array in JSON: " + j.dump());
    std::vector<mpz_class> c;
    for (const auto& x : j) c.push_back(coefficient_from(x));
    return IntPoly(std::move(c));
}

Grade grade_from(const std::string& s) {
    if (s == "strict") return Grade::Strict;
    if (s == "bounded") return Grade::Bounded;
    throw InputError("unknown grade '" + s + "'");
}

}  // namespace

json to_json(const ScenarioSpec& spec) {
    json torsion = json::array();
    for (const auto& f : spec.module.torsion()) {
        if (const auto* lp = std::get_if<LPower>(&f)) {
            torsion.push_back({{"lpower", lp->exponent}});
        } else {
            torsion.push_back({{"poly", poly_json(std::get<Distinguished>(f).poly)}});
        }
    }
    json descent;
    if (spec.descent.is_special()) {
        descent = {{"kind", "special"}};
    } else {
        json gens = json::array();
        for (const auto& y : spec.descent.generators()) {
            json coords = json::array();
            for (const auto& c : y.coordinates()) coords.push_back(poly_json(c));
            gens.push_back(std::move(coords));
        }
        descent = {{"kind", "generic"}, {"e", spec.descent.level()}, {"generators", std::move(gens)}};
    }
    return {{"prime", spec.module.prime().value()},
            {"module", {{"free_rank", spec.module.free_rank()}, {"torsion", std::move(torsion)}}},
            {"descent", std::move(descent)},
            {"run", {{"n_min", spec.run.n_min}, {"n_max", spec.run.n_max}, {"k", spec.run.k}}}};
}

ScenarioSpec spec_from_json(const json& j) {
    try {
        const Prime ell(j.at("prime").get<std::uint64_t>());
        std::vector<TorsionFactor> torsion;
        for (const auto& f : j.at("module").at("torsion")) {
            if (f.contains("lpower")) {
                torsion.push_back(LPower{f.at("lpower").get<unsigned>()});
            } else {
                torsion.push_back(Distinguished{poly_from(f.at("poly"))});
            }
        }
        ElementaryModule module(ell, j.at("module").at("free_rank").get<std::size_t>(), std::move(torsion));
        const json& d = j.at("descent");
        const std::string kind = d.at("kind").get<std::string>();
        DescentDatum descent = DescentDatum::special();
        if (kind == "generic") {
            std::vector<ModuleElement> gens;
            for (const auto& g : d.at("generators")) {
                std::vector<IntPoly> coords;
                for (const auto& c : g) coords.push_back(poly_from(c));
                gens.push_back(ModuleElement::from_coordinates(module, std::move(coords)));
            }
            descent = DescentDatum::generic(d.at("e").get<unsigned>(), std::move(gens));
        } else if (kind != "special") {
            throw InputError("unknown descent kind '" + kind + "'");
        }
        const json& r = j.at("run");
        RunRange run{r.at("n_min").get<unsigned>(), r.at("n_max").get<unsigned>(), r.at("k").get<int>()};
        return ScenarioSpec{std::move(module), std::move(descent), run};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed scenario JSON: ") + e.what());
    }
}

json to_json(const ParamTriple& t) {
    return {{"rho", t.rho}, {"mu", t.mu}, {"lambda_tilde", t.lambda_tilde}, {"grade", to_string(t.grade)}};
}

ParamTriple triple_from_json(const json& j) {
    try {
        return ParamTriple{j.at("rho").get<std::int64_t>(), j.at("mu").get<std::int64_t>(),
                           j.at("lambda_tilde").get<std::int64_t>(), grade_from(j.at("grade").get<std::string>())};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed triple JSON: ") + e.what());
    }
}

json to_json(const FitResult& fit, const OrderSequence& seq) {
    const auto& c = fit.classification;
    json cls = {{"kind", to_string(c.kind)}, {"min", c.min}, {"max", c.max}, {"spread", c.spread()}};
    if (c.kind == ResidualKind::UltimatelyConstant) {
        cls["from_n"] = c.from_n;
        cls["nu"] = c.nu;
    }
    if (c.kind == ResidualKind::Unbounded) cls["trend"] = c.trend;
    json rows = json::array();
    for (const auto& [n, r] : fit.residuals) {
        rows.push_back({{"n", n}, {"x", seq.at(n)}, {"model", seq.at(n) - r}, {"residual", r}});
    }
    return {{"triple", to_json(fit.triple)},
            {"classification", std::move(cls)},
            {"spread_bound", fit.spread_bound},
            {"residuals", std::move(rows)}};
}

json to_json(const MirrorReport& report) {
    json ids = json::array();
    for (const auto& id : report.identities) {
        ids.push_back({{"name", id.name}, {"lhs", id.lhs}, {"rhs", id.rhs}, {"holds", id.holds}});
    }
    return {{"identities", std::move(ids)},
            {"parity_ok", report.parity_ok},
            {"warnings", report.warnings},
            {"all_hold", report.all_hold()}};
}

}  // namespace codescent::cli
