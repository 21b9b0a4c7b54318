#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "codescent/asymptotics.hpp"
#include "codescent/cli.hpp"
#include "codescent/error.hpp"
#include "codescent/invariants.hpp"
#include "codescent/module.hpp"
#include "codescent/quotient.hpp"
#include "codescent/scenario_file.hpp"
#include "codescent/scenarios.hpp"

namespace py = pybind11;
using namespace codescent;

namespace {

py::int_ to_py(const mpz_class& z) { return py::int_(py::module_::import("builtins").attr("int")(z.get_str())); }

mpz_class to_mpz(const py::handle& h) {
    if (!py::isinstance<py::int_>(h)) throw InputError("coefficients must be integers");
    return mpz_class(py::str(h).cast<std::string>());
}

IntPoly poly_from(const py::handle& h) {
    std::vector<mpz_class> c;
    for (auto x : h) c.push_back(to_mpz(x));
    return IntPoly(std::move(c));
}

py::list poly_to(const IntPoly& p) {
    py::list out;
    for (const auto& c : p.coeffs()) out.append(to_py(c));
    return out;
}

// Torsion entries: an int m stands for L/(l^m), a coefficient list for L/(f).
std::vector<TorsionFactor> torsion_from(const py::handle& h) {
    std::vector<TorsionFactor> out;
    for (auto item : h) {
        if (py::isinstance<py::int_>(item)) {
            const long m = item.cast<long>();
            if (m < 1) throw InputError("torsion exponent must be positive");
            out.push_back(LPower{static_cast<unsigned>(m)});
        } else {
            out.push_back(Distinguished{poly_from(item)});
        }
    }
    return out;
}

py::list torsion_to(const ElementaryModule& e) {
    py::list out;
    for (const auto& t : e.torsion()) {
        if (const auto* p = std::get_if<LPower>(&t)) {
            out.append(py::int_(p->exponent));
        } else {
            out.append(poly_to(std::get<Distinguished>(t).poly));
        }
    }
    return out;
}

DescentDatum generic_from(const ElementaryModule& e, unsigned level, const py::handle& generators) {
    std::vector<ModuleElement> gens;
    for (auto g : generators) {
        std::vector<IntPoly> coords;
        for (auto c : g) coords.push_back(poly_from(c));
        gens.push_back(ModuleElement::from_coordinates(e, std::move(coords)));
    }
    return DescentDatum::generic(level, std::move(gens));
}

py::list generators_to(const DescentDatum& d) {
    py::list out;
    for (const auto& g : d.generators()) {
        py::list coords;
        for (const auto& c : g.coordinates()) coords.append(poly_to(c));
        out.append(coords);
    }
    return out;
}

QuotientOptions quotient_options(std::size_t cap) {
    QuotientOptions o;
    o.dimension_cap = cap;
    return o;
}

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }
std::string json_dumps(const py::object& obj) { return py::module_::import("json").attr("dumps")(obj).cast<std::string>(); }

}  // namespace

PYBIND11_MODULE(_codescent, m) {
    m.doc() = "Exact codescent order valuations, invariants and asymptotic fits.";

    static py::exception<Error> error(m, "Error");
    static py::exception<InputError> input_error(m, "InputError", error.ptr());
    static py::exception<ParseError> parse_error(m, "ParseError", input_error.ptr());
    static py::exception<CapExceeded> cap_exceeded(m, "CapExceeded", error.ptr());
    static py::exception<AmbiguousFit> ambiguous_fit(m, "AmbiguousFit", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::object exc = py::handle(parse_error.ptr())(e.what());
            exc.attr("line") = e.line();
            exc.attr("column") = e.column();
            PyErr_SetObject(parse_error.ptr(), exc.ptr());
        } catch (const InputError& e) {
            input_error(e.what());
        } catch (const CapExceeded& e) {
            cap_exceeded(e.what());
        } catch (const AmbiguousFit& e) {
            ambiguous_fit(e.what());
        } catch (const Error& e) {
            error(e.what());
        }
    });

    m.def("is_prime", &is_prime, py::arg("n"));
    m.def(
        "omega", [](std::uint64_t ell, unsigned n) { return poly_to(omega(Prime(ell), n)); }, py::arg("ell"),
        py::arg("n"), "Coefficients of (1+T)^(l^n) - 1, constant term first.");
    m.def(
        "omega_rel", [](std::uint64_t ell, unsigned n, unsigned e) { return poly_to(omega_rel(Prime(ell), n, e)); },
        py::arg("ell"), py::arg("n"), py::arg("e"));
    m.def(
        "is_distinguished", [](const py::list& p, std::uint64_t ell) { return is_distinguished(poly_from(p), Prime(ell)); },
        py::arg("poly"), py::arg("ell"));

    py::class_<ElementaryModule>(m, "Module")
        .def(py::init([](std::uint64_t ell, std::size_t free_rank, const py::list& torsion) {
                 return ElementaryModule(Prime(ell), free_rank, torsion_from(torsion));
             }),
             py::arg("ell"), py::arg("free_rank") = 0, py::arg("torsion") = py::list())
        .def_property_readonly("prime", [](const ElementaryModule& e) { return e.prime().value(); })
        .def_property_readonly("free_rank", &ElementaryModule::free_rank)
        .def_property_readonly("torsion", &torsion_to)
        .def_property_readonly("coordinate_count", &ElementaryModule::coordinate_count)
        .def("describe", &ElementaryModule::describe)
        .def(py::self == py::self)
        .def("__repr__", [](const ElementaryModule& e) { return "<Module " + e.describe() + ">"; });

    py::class_<DescentDatum>(m, "Descent")
        .def_static("special", &DescentDatum::special)
        .def_static(
            "generic",
            [](const ElementaryModule& e, unsigned level, const py::list& generators) {
                return generic_from(e, level, generators);
            },
            py::arg("module"), py::arg("e"), py::arg("generators") = py::list())
        .def_property_readonly("is_special", &DescentDatum::is_special)
        .def_property_readonly("level", &DescentDatum::level)
        .def_property_readonly("generators", &generators_to)
        .def(py::self == py::self)
        .def("__repr__", [](const DescentDatum& d) {
            if (d.is_special()) return std::string("<Descent special>");
            return "<Descent generic e=" + std::to_string(d.level()) + " with " +
                   std::to_string(d.generators().size()) + " generators>";
        });

    m.def(
        "validate_descent",
        [](const ElementaryModule& e, const DescentDatum& d) {
            const ValidationReport r = validate_descent(e, d);
            return py::make_tuple(r.valid, r.message);
        },
        py::arg("module"), py::arg("descent"), "Returns (valid, message).");
    m.def(
        "classify_case", [](const ElementaryModule& e, const DescentDatum& d) { return to_string(classify_case(e, d)); },
        py::arg("module"), py::arg("descent"));

    m.def(
        "quotient_group",
        [](const ElementaryModule& e, const DescentDatum& d, unsigned n, int k, std::size_t cap) {
            return quotient_group(e, d, n, k, quotient_options(cap)).divisor_valuations();
        },
        py::arg("module"), py::arg("descent"), py::arg("n"), py::arg("k") = 0, py::arg("cap") = 4096,
        "Valuations v_j of the cyclic factors Z/l^v_j of the quotient.");
    m.def(
        "order_valuation",
        [](const ElementaryModule& e, const DescentDatum& d, unsigned n, int k, std::size_t cap) {
            return order_valuation(e, d, n, k, quotient_options(cap));
        },
        py::arg("module"), py::arg("descent"), py::arg("n"), py::arg("k") = 0, py::arg("cap") = 4096);
    m.def(
        "order_sequence",
        [](const ElementaryModule& e, const DescentDatum& d, unsigned n_min, unsigned n_max, int k, std::size_t cap) {
            return order_sequence(e, d, n_min, n_max, k, quotient_options(cap)).entries;
        },
        py::arg("module"), py::arg("descent"), py::arg("n_min"), py::arg("n_max"), py::arg("k") = 0,
        py::arg("cap") = 4096);
    m.def("minimal_level", &minimal_level, py::arg("descent"), py::arg("k") = 0);
    m.def(
        "enumeration_oracle",
        [](const ElementaryModule& e, const DescentDatum& d, unsigned n, int k, std::uint64_t cap) {
            EnumerationOptions o;
            o.element_cap = cap;
            return enumeration_oracle(e, d, n, k, o);
        },
        py::arg("module"), py::arg("descent"), py::arg("n"), py::arg("k") = 0, py::arg("cap") = std::uint64_t{1} << 20);

    py::class_<ParamTriple>(m, "ParamTriple")
        .def(py::init([](std::int64_t rho, std::int64_t mu, std::int64_t lambda_tilde, const std::string& grade) {
                 if (grade != "strict" && grade != "bounded") throw InputError("grade must be strict or bounded");
                 return ParamTriple{rho, mu, lambda_tilde, grade == "strict" ? Grade::Strict : Grade::Bounded};
             }),
             py::arg("rho"), py::arg("mu"), py::arg("lambda_tilde"), py::arg("grade") = "strict")
        .def_readonly("rho", &ParamTriple::rho)
        .def_readonly("mu", &ParamTriple::mu)
        .def_readonly("lambda_tilde", &ParamTriple::lambda_tilde)
        .def_property_readonly("grade", [](const ParamTriple& t) { return to_string(t.grade); })
        .def("same_numbers", &ParamTriple::same_numbers)
        .def("as_tuple", [](const ParamTriple& t) { return py::make_tuple(t.rho, t.mu, t.lambda_tilde); })
        .def(py::self == py::self)
        .def("__repr__", [](const ParamTriple& t) { return "<ParamTriple " + t.to_string() + " " + to_string(t.grade) + ">"; });

    m.def(
        "structural_invariants",
        [](const ElementaryModule& e) {
            const StructuralInvariants s = structural_invariants(e);
            return py::make_tuple(s.rho, s.mu, s.lambda);
        },
        py::arg("module"), "Returns (rho, mu, lambda).");
    m.def("kappa", &kappa, py::arg("module"), py::arg("descent"));
    m.def("predict", &predict_parameters, py::arg("module"), py::arg("descent"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("triple", &FitResult::triple)
        .def_readonly("residuals", &FitResult::residuals)
        .def_readonly("spread_bound", &FitResult::spread_bound)
        .def_property_readonly("classification", [](const FitResult& f) { return to_string(f.classification.kind); })
        .def_property_readonly("spread", [](const FitResult& f) { return f.classification.spread(); })
        .def_property_readonly("from_n", [](const FitResult& f) { return f.classification.from_n; })
        .def_property_readonly("nu", [](const FitResult& f) { return f.classification.nu; });

    m.def(
        "fit",
        [](const std::vector<std::int64_t>& entries, std::uint64_t ell, unsigned n_min, int k, unsigned level) {
            OrderSequence seq{Prime(ell), k, n_min, entries};
            FitOptions o;
            o.level = level;
            return fit_parameters(seq, o);
        },
        py::arg("entries"), py::arg("ell"), py::arg("n_min"), py::arg("k") = 0, py::arg("level") = 0,
        "Fits (rho, mu, lambda~) to x(n_min), x(n_min+1), ...");

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_property_readonly("case", [](const VerificationReport& r) { return to_string(r.case_tag); })
        .def_readonly("kappa", &VerificationReport::kappa)
        .def_readonly("predicted", &VerificationReport::predicted)
        .def_readonly("fit", &VerificationReport::fit)
        .def_property_readonly("entries", [](const VerificationReport& r) { return r.sequence.entries; })
        .def_readonly("triple_matches", &VerificationReport::triple_matches)
        .def_readonly("grade_consistent", &VerificationReport::grade_consistent)
        .def_property_readonly("passed", &VerificationReport::pass);

    m.def(
        "verify",
        [](const ElementaryModule& e, const DescentDatum& d, unsigned n_min, unsigned n_max, int k, std::size_t cap) {
            return verify_prediction(e, d, n_min, n_max, k, quotient_options(cap));
        },
        py::arg("module"), py::arg("descent"), py::arg("n_min"), py::arg("n_max"), py::arg("k") = 0,
        py::arg("cap") = 4096);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def_readonly("module", &ScenarioSpec::module)
        .def_readonly("descent", &ScenarioSpec::descent)
        .def_property_readonly("n_min", [](const ScenarioSpec& s) { return s.run.n_min; })
        .def_property_readonly("n_max", [](const ScenarioSpec& s) { return s.run.n_max; })
        .def_property_readonly("k", [](const ScenarioSpec& s) { return s.run.k; })
        .def("to_dict", [](const ScenarioSpec& s) { return json_loads(cli::to_json(s).dump()); })
        .def_static("from_dict",
                    [](const py::object& d) { return cli::spec_from_json(nlohmann::json::parse(json_dumps(d))); })
        .def(py::self == py::self);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("module", &Scenario::module)
        .def_readonly("descent", &Scenario::descent)
        .def_readonly("expected", &Scenario::expected)
        .def_readonly("note", &Scenario::note)
        .def_property_readonly("n_min", [](const Scenario& s) { return s.run.n_min; })
        .def_property_readonly("n_max", [](const Scenario& s) { return s.run.n_max; })
        .def_property_readonly("k", [](const Scenario& s) { return s.run.k; })
        .def("spec", &spec_of);

    m.def("scenario", &scenario_by_name, py::arg("name"));
    m.def("builtin_scenario_names", &builtin_scenario_names);
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
    m.def("serialize_scenario", &serialize_scenario, py::arg("spec"), py::arg("title") = "");

    m.def(
        "mirror_check",
        [](const ParamTriple& ts, const ParamTriple& st, std::int64_t delta_s, std::int64_t delta_t, std::int64_t s_inf,
           std::int64_t t_inf) {
            return json_loads(cli::to_json(mirror_check(ts, st, MirrorContext{delta_s, delta_t, s_inf, t_inf})).dump());
        },
        py::arg("ts"), py::arg("st"), py::arg("delta_s"), py::arg("delta_t"), py::arg("s_inf"), py::arg("t_inf"),
        "Report of the three reflection identities as a dict.");

    m.def(
        "run_command",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            const int code = cli::run_command(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "", "Runs the command line; returns (exit_code, stdout, stderr).");

    m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;
}
