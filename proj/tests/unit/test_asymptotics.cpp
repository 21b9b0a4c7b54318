#include <doctest.h>

#include "codescent/asymptotics.hpp"
#include "codescent/error.hpp"
#include "codescent/scenarios.hpp"
#include "support/models.hpp"

using namespace codescent;
using codescent::testing::Rng;

namespace {

const Prime kTwo(2);

OrderSequence seq_of(const Prime& ell, unsigned n_min, int k, std::vector<std::int64_t> entries) {
    OrderSequence s;
    s.prime = ell;
    s.k = k;
    s.n_min = n_min;
    s.entries = std::move(entries);
    return s;
}

}  // namespace

TEST_CASE("fit examples") {
    const FitResult a = fit_parameters(seq_of(kTwo, 1, 0, {2, 4, 8, 16, 32}));
    CHECK(a.triple.same_numbers(ParamTriple{0, 1, 0}));
    CHECK(a.classification.kind == ResidualKind::UltimatelyConstant);
    CHECK(a.classification.nu == 0);

    std::vector<std::int64_t> n2n;
    for (int n = 1; n <= 6; ++n) n2n.push_back(n * (1 << n));
    const FitResult b = fit_parameters(seq_of(kTwo, 1, 0, n2n));
    CHECK(b.triple.same_numbers(ParamTriple{1, 0, 0}));
    CHECK(b.classification.kind == ResidualKind::UltimatelyConstant);
    CHECK(b.classification.nu == 0);

    const Scenario p14 = scenario_prop14(1);
    const FitResult c = fit_parameters(order_sequence(p14.module, p14.descent, 2, 6, 0), {std::nullopt, 1});
    CHECK(c.triple.same_numbers(ParamTriple{1, 0, -2}));
    CHECK(c.spread_bound == 12);
}

TEST_CASE("fit reports residuals and the stabilization index") {
    // x(n) = 2^n + n + 3 from n = 3 on, with early transients.
    const FitResult r = fit_parameters(seq_of(kTwo, 1, 0, {0, 1, 14, 23, 40, 73}));
    CHECK(r.triple.same_numbers(ParamTriple{0, 1, 1}));
    CHECK(r.classification.kind == ResidualKind::UltimatelyConstant);
    CHECK(r.classification.from_n == 3);
    CHECK(r.classification.nu == 3);
    REQUIRE(r.residuals.size() == 6);
    CHECK(r.residuals[0] == std::pair<unsigned, std::int64_t>{1, -3});
    CHECK(r.classification.min == -5);
    CHECK(r.classification.max == 3);
}

TEST_CASE("fit rejects short sequences") {
    CHECK_THROWS_AS(fit_parameters(seq_of(kTwo, 1, 0, {2, 4, 8})), InputError);
}

TEST_CASE("fit classification of non-stabilizing data") {
    // Alternating residual around n·2^n: bounded but never constant.
    const FitResult r = fit_parameters(seq_of(kTwo, 1, 0, {2 + 1, 8, 24 + 1, 64, 160 + 1, 384, 896 + 1}));
    CHECK(r.triple.same_numbers(ParamTriple{1, 0, 0}));
    CHECK(r.classification.kind == ResidualKind::BoundedSpread);
    CHECK(r.classification.spread() == 1);

    FitOptions tight;
    tight.spread_bound = 0;
    CHECK(fit_parameters(seq_of(kTwo, 1, 0, {3, 8, 25, 64, 161, 384, 897}), tight).classification.kind ==
          ResidualKind::Unbounded);
    CHECK(to_string(ResidualKind::BoundedSpread) == "bounded_spread");
    CHECK(to_string(ResidualKind::Unbounded) == "unbounded");
    CHECK(to_string(ResidualKind::UltimatelyConstant) == "ultimately_constant");
}

TEST_CASE("property: exact synthetic sequences fit to their own triple") {
    Rng rng(51);
    for (int it = 0; it < 400; ++it) {
        const Prime ell(rng.coin() ? 2 : (rng.coin() ? 3 : 5));
        const ParamTriple p{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-20, 20), Grade::Strict};
        const long nu = rng.uniform(-30, 30);
        const int k = static_cast<int>(rng.uniform(-1, 2));
        const unsigned n_min = static_cast<unsigned>(rng.uniform(std::max(1 - k, 0), 3));
        const unsigned len = static_cast<unsigned>(rng.uniform(4, 7));
        std::vector<std::int64_t> x;
        for (unsigned n = n_min; n < n_min + len; ++n) x.push_back(model_value(p, ell, n, k) + nu);
        const FitResult r = fit_parameters(seq_of(ell, n_min, k, x));
        CAPTURE(p.to_string());
        REQUIRE(r.triple.same_numbers(p));
        REQUIRE(r.classification.kind == ResidualKind::UltimatelyConstant);
        REQUIRE(r.classification.nu == nu);
        REQUIRE(r.classification.from_n == n_min);
    }
}

TEST_CASE("property: residuals for a neighbouring lambda diverge linearly") {
    for (int d : {-1, 1}) {
        const ParamTriple p{1, 0, -2, Grade::Strict};
        std::vector<std::int64_t> x;
        for (unsigned n = 1; n <= 8; ++n) x.push_back(model_value(p, kTwo, n, 0));
        const FitResult r = fit_parameters(seq_of(kTwo, 1, 0, x));
        CHECK(r.triple.same_numbers(p));
        const ParamTriple q{1, 0, -2 + d, Grade::Strict};
        for (unsigned n = 1; n <= 8; ++n) CHECK(x[n - 1] - model_value(q, kTwo, n, 0) == -d * static_cast<int>(n));
    }
}

TEST_CASE("verify_prediction examples") {
    const ElementaryModule lam(kTwo, 1);
    const VerificationReport a = verify_prediction(lam, DescentDatum::special(), 1, 5, 0);
    CHECK(a.pass());
    CHECK(a.fit.triple.same_numbers(ParamTriple{1, 0, 1}));

    const ElementaryModule tor(kTwo, 0, {Distinguished{IntPoly{2, 1}}});
    const VerificationReport b = verify_prediction(tor, DescentDatum::generic(0), 1, 6, 0);
    CHECK(b.pass());
    CHECK(b.fit.triple.same_numbers(ParamTriple{0, 0, 1}));

    const auto y = DescentDatum::generic(1, {ModuleElement::from_coordinates(lam, {IntPoly{0, 1}})});
    const VerificationReport c = verify_prediction(lam, y, 2, 6, 0);
    CHECK(c.pass());
    CHECK(c.kappa == 1);
    CHECK(c.fit.triple.same_numbers(ParamTriple{1, 0, -1}));
    CHECK(c.case_tag == CaseTag::Generic);
}
