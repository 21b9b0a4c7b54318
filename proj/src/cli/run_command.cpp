#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "codescent/cli.hpp"
#include "codescent/error.hpp"
#include "codescent/scenarios.hpp"

namespace codescent::cli {

using nlohmann::json;

namespace {

struct Settings {
    bool json = false;
    std::size_t cap = QuotientOptions{}.dimension_cap;
    std::optional<int> k;
};

class Command {
  public:
    Command(std::string name, const Settings& settings, std::istream& in, std::ostream& out)
        : name_(std::move(name)), settings_(settings), in_(in), out_(out) {}

    int orders(const std::string& file) {
        const ScenarioSpec spec = load(file);
        const OrderSequence seq = sequence(spec);
        if (settings_.json) {
            json rows = json::array();
            for (unsigned n = seq.n_min; n <= seq.n_max(); ++n) rows.push_back({{"n", n}, {"x", seq.at(n)}});
            emit({{"scenario", to_json(spec)}, {"k", seq.k}, {"orders", std::move(rows)}});
        } else {
            out_ << "n\tx\n";
            for (unsigned n = seq.n_min; n <= seq.n_max(); ++n) out_ << n << "\t" << seq.at(n) << "\n";
        }
        return kOk;
    }

    int invariants(const std::string& file) {
        const ScenarioSpec spec = load(file);
        const StructuralInvariants inv = structural_invariants(spec.module);
        const ParamTriple p = predict_parameters(spec.module, spec.descent);
        const InequalityReport ineq = check_inequalities(spec.module, spec.descent);
        const CaseTag tag = classify_case(spec.module, spec.descent);
        if (settings_.json) {
            emit({{"scenario", to_json(spec)},
                  {"invariants",
                   {{"rho", inv.rho},
                    {"mu", inv.mu},
                    {"lambda", inv.lambda},
                    {"kappa", ineq.kappa},
                    {"lambda_tilde", p.lambda_tilde},
                    {"grade", to_string(p.grade)},
                    {"case", to_string(tag)}}},
                  {"inequalities",
                   {{"kappa_bound", ineq.bound},
                    {"kappa_slack", ineq.kappa_slack},
                    {"lambda_tilde_slack", ineq.lambda_tilde_slack},
                    {"all_hold", ineq.all_hold()}}}});
        } else {
            out_ << "rho\t" << inv.rho << "\nmu\t" << inv.mu << "\nlambda\t" << inv.lambda << "\nkappa\t" << ineq.kappa
                 << "\nlambda_tilde\t" << p.lambda_tilde << "\ngrade\t" << to_string(p.grade) << "\ncase\t"
                 << to_string(tag) << "\nkappa_bound\t" << ineq.bound << "\ninequalities\t"
                 << (ineq.all_hold() ? "hold" : "violated") << "\n";
        }
        return kOk;
    }

    int fit(const std::string& file) {
        const ScenarioSpec spec = load(file);
        const OrderSequence seq = sequence(spec);
        FitOptions options;
        options.level = spec.descent.level();
        FitResult fit;
        try {
            fit = fit_parameters(seq, options);
        } catch (const AmbiguousFit& e) {
            return ambiguous(spec, seq, e);
        }
        if (settings_.json) {
            emit({{"scenario", to_json(spec)}, {"k", seq.k}, {"fit", to_json(fit, seq)}});
        } else {
            write_fit(fit, seq);
        }
        return kOk;
    }

    int verify(const std::string& file) { return verify_spec(load(file), nullptr); }

    int scenario(const std::string& name, bool emit_file) {
        const Scenario s = scenario_by_name(name);
        ScenarioSpec spec = spec_of(s);
        if (settings_.k) spec.run.k = *settings_.k;
        if (!emit_file) return verify_spec(spec, &s);
        const std::string text = serialize_scenario(spec, s.name);
        if (settings_.json) {
            emit({{"name", s.name}, {"note", s.note}, {"scenario", to_json(spec)}, {"text", text}});
        } else {
            out_ << text;
        }
        return kOk;
    }

    int mirror(const std::string& ts, const std::string& st, const MirrorContext& ctx) {
        const ParamTriple p_ts = parse_triple(ts, "--ts");
        const ParamTriple p_st = parse_triple(st, "--st");
        const MirrorReport r = mirror_check(p_ts, p_st, ctx);
        const bool pass = r.all_hold() && r.parity_ok;
        if (settings_.json) {
            json payload = to_json(r);
            payload["result"] = pass ? "PASS" : "FAIL";
            payload["ts"] = {p_ts.rho, p_ts.mu, p_ts.lambda_tilde};
            payload["st"] = {p_st.rho, p_st.mu, p_st.lambda_tilde};
            payload["context"] = {{"delta_s", ctx.delta_s}, {"delta_t", ctx.delta_t}, {"s_inf", ctx.s_inf},
                                  {"t_inf", ctx.t_inf}};
            emit(payload);
        } else {
            out_ << "identity\tlhs\trhs\tholds\n";
            for (const auto& id : r.identities) {
                out_ << id.name << "\t" << id.lhs << "\t" << id.rhs << "\t" << (id.holds ? "true" : "false") << "\n";
            }
            out_ << "parity_ok\t" << (r.parity_ok ? "true" : "false") << "\n";
            for (const auto& w : r.warnings) out_ << "warning\t" << w << "\n";
            out_ << "result\t" << (pass ? "PASS" : "FAIL") << "\n";
        }
        return pass ? kOk : kFail;
    }

    void emit(json payload) const {
        json doc = {{"schema", kSchemaVersion}, {"command", name_}};
        doc.update(payload);
        out_ << doc.dump(2) << "\n";
    }

  private:
    ScenarioSpec load(const std::string& file) {
        std::string text;
        if (file.empty() || file == "-") {
            std::ostringstream os;
            os << in_.rdbuf();
            text = os.str();
        } else {
            std::ifstream f(file, std::ios::binary);
            if (!f) throw InputError("cannot read '" + file + "'");
            std::ostringstream os;
            os << f.rdbuf();
            text = os.str();
        }
        ScenarioSpec spec = parse_scenario(text);
        if (settings_.k) spec.run.k = *settings_.k;
        return spec;
    }

    QuotientOptions quotient_options() const {
        QuotientOptions o;
        o.dimension_cap = settings_.cap;
        return o;
    }

    OrderSequence sequence(const ScenarioSpec& spec) const {
        return order_sequence(spec.module, spec.descent, spec.run.n_min, spec.run.n_max, spec.run.k,
                              quotient_options());
    }

    int ambiguous(const ScenarioSpec& spec, const OrderSequence& seq, const AmbiguousFit& e) {
        if (settings_.json) {
            json rows = json::array();
            for (unsigned n = seq.n_min; n <= seq.n_max(); ++n) rows.push_back({{"n", n}, {"x", seq.at(n)}});
            emit({{"scenario", to_json(spec)}, {"k", seq.k}, {"orders", std::move(rows)},
                  {"result", "FAIL"}, {"ambiguous", e.what()}});
        } else {
            out_ << "result\tFAIL\nambiguous\t" << e.what() << "\n";
        }
        return kFail;
    }

    void write_fit(const FitResult& fit, const OrderSequence& seq) const {
        const auto& c = fit.classification;
        out_ << "rho\t" << fit.triple.rho << "\nmu\t" << fit.triple.mu << "\nlambda_tilde\t" << fit.triple.lambda_tilde
             << "\ngrade\t" << to_string(fit.triple.grade) << "\nclassification\t" << to_string(c.kind) << "\n";
        if (c.kind == ResidualKind::UltimatelyConstant) out_ << "from_n\t" << c.from_n << "\nnu\t" << c.nu << "\n";
        if (c.kind == ResidualKind::Unbounded) out_ << "trend\t" << c.trend << "\n";
        out_ << "spread\t" << c.spread() << "\nspread_bound\t" << fit.spread_bound << "\n\nn\tx\tmodel\tresidual\n";
        for (const auto& [n, r] : fit.residuals) {
            out_ << n << "\t" << seq.at(n) << "\t" << seq.at(n) - r << "\t" << r << "\n";
        }
    }

    int verify_spec(const ScenarioSpec& spec, const Scenario* builtin) {
        VerificationReport report;
        try {
            report = verify_prediction(spec.module, spec.descent, spec.run.n_min, spec.run.n_max, spec.run.k,
                                       quotient_options());
        } catch (const AmbiguousFit& e) {
            return ambiguous(spec, sequence(spec), e);
        }
        const bool expected_ok = !builtin || builtin->expected == report.predicted;
        const bool pass = report.pass() && expected_ok;
        if (settings_.json) {
            json payload = {{"result", pass ? "PASS" : "FAIL"},
                            {"scenario", to_json(spec)},
                            {"case", to_string(report.case_tag)},
                            {"kappa", report.kappa},
                            {"predicted", to_json(report.predicted)},
                            {"fit", to_json(report.fit, report.sequence)},
                            {"triple_matches", report.triple_matches},
                            {"grade_consistent", report.grade_consistent}};
            if (builtin) {
                payload["name"] = builtin->name;
                payload["note"] = builtin->note;
                payload["expected"] = to_json(builtin->expected);
                payload["expected_matches"] = expected_ok;
            }
            emit(payload);
        } else {
            out_ << "result\t" << (pass ? "PASS" : "FAIL") << "\n";
            if (builtin) {
                out_ << "name\t" << builtin->name << "\nexpected\t" << builtin->expected.to_string() << "\t"
                     << to_string(builtin->expected.grade) << "\nexpected_matches\t" << (expected_ok ? "true" : "false")
                     << "\n";
            }
            out_ << "case\t" << to_string(report.case_tag) << "\nkappa\t" << report.kappa << "\npredicted\t"
                 << report.predicted.to_string() << "\t" << to_string(report.predicted.grade) << "\nfitted\t"
                 << report.fit.triple.to_string() << "\t" << to_string(report.fit.triple.grade) << "\ntriple_matches\t"
                 << (report.triple_matches ? "true" : "false") << "\ngrade_consistent\t"
                 << (report.grade_consistent ? "true" : "false") << "\n\n";
            write_fit(report.fit, report.sequence);
        }
        return pass ? kOk : kFail;
    }

    static ParamTriple parse_triple(const std::string& text, const std::string& flag) {
        std::vector<std::int64_t> v;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoll(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw InputError(flag + " expects three integers rho,mu,lambda; got '" + text + "'");
            }
        }
        if (v.size() != 3) throw InputError(flag + " expects three integers rho,mu,lambda; got '" + text + "'");
        return ParamTriple{v[0], v[1], v[2], Grade::Bounded};
    }

    std::string name_;
    const Settings& settings_;
    std::istream& in_;
    std::ostream& out_;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact order valuations and asymptotic parameters of codescent quotients", "codescent"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings settings;
    int k_value = 0;
    app.add_flag("--json", settings.json, "Write the versioned JSON report instead of TSV");
    app.add_option("--cap", settings.cap, "Largest ambient matrix dimension")->check(CLI::PositiveNumber);
    auto* k_opt = app.add_option("--k", k_value, "Override the exponent shift k");

    std::string file = "-";
    auto* orders = app.add_subcommand("orders", "x(n,k) for each n in the run range");
    orders->add_option("file", file, "Scenario file, '-' for stdin");
    auto* inv = app.add_subcommand("invariants", "rho, mu, lambda, kappa, predicted lambda~ and case");
    inv->add_option("file", file, "Scenario file, '-' for stdin");
    auto* fit = app.add_subcommand("fit", "Fit (rho, mu, lambda~) to the order sequence");
    fit->add_option("file", file, "Scenario file, '-' for stdin");
    auto* verify = app.add_subcommand("verify", "Compare the fitted triple with the prediction");
    verify->add_option("file", file, "Scenario file, '-' for stdin");

    std::string scenario_name;
    bool emit_file = false;
    auto* scen = app.add_subcommand("scenario", "Run or emit a built-in scenario");
    scen->add_option("name", scenario_name, "prop14:e=E, prop15:l=L,e=E, special-demo, trivial-demo, zero-demo")
        ->required();
    scen->add_flag("--emit", emit_file, "Print the scenario file instead of running it");

    std::string ts, st;
    MirrorContext ctx;
    auto* mirror = app.add_subcommand("mirror", "Check the three reflection identities");
    mirror->add_option("--ts", ts, "rho,mu,lambda~ on the (T,S) side")->required();
    mirror->add_option("--st", st, "rho,mu,lambda~ on the (S,T) side")->required();
    mirror->add_option("--ds", ctx.delta_s, "delta_S")->required();
    mirror->add_option("--dt", ctx.delta_t, "delta_T")->required();
    mirror->add_option("--s", ctx.s_inf, "s_inf")->required();
    mirror->add_option("--t", ctx.t_inf, "t_inf")->required();

    std::vector<std::string> argv_store{"codescent"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    if (k_opt->count()) settings.k = k_value;

    const std::string name = app.get_subcommands().front()->get_name();
    Command cmd(name, settings, in, out);
    auto fail = [&](const char* kind, const std::exception& e, int code) {
        err << "codescent " << name << ": " << e.what() << "\n";
        if (settings.json) cmd.emit({{"error", {{"kind", kind}, {"message", e.what()}}}, {"exit_code", code}});
        return code;
    };
    try {
        if (*orders) return cmd.orders(file);
        if (*inv) return cmd.invariants(file);
        if (*fit) return cmd.fit(file);
        if (*verify) return cmd.verify(file);
        if (*scen) return cmd.scenario(scenario_name, emit_file);
        return cmd.mirror(ts, st, ctx);
    } catch (const ParseError& e) {
        return fail("parse", e, kInputError);
    } catch (const CapExceeded& e) {
        return fail("cap", e, kCapExceeded);
    } catch (const InputError& e) {
        return fail("input", e, kInputError);
    } catch (const Error& e) {
        return fail("error", e, kInputError);
    }
}

}  // namespace codescent::cli
