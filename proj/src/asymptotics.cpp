#include "codescent/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "codescent/error.hpp"

namespace codescent {

std::string to_string(ResidualKind kind) {
    switch (kind) {
        case ResidualKind::UltimatelyConstant: return "ultimately_constant";
        case ResidualKind::BoundedSpread: return "bounded_spread";
        case ResidualKind::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kSolveWindow = 4;
// Shortest residual tail accepted as evidence of an ultimately constant
// residual: two equations on the three parameters.
constexpr std::size_t kMinConstantTail = 3;

std::int64_t ell_power(const Prime& ell, unsigned n) {
    mpz_class p = ell.power(n);
    if (!p.fits_slong_p()) throw InputError("l^n does not fit in 64 bits");
    return p.get_si();
}

std::vector<std::pair<unsigned, std::int64_t>> residuals_of(const OrderSequence& seq, const ParamTriple& p) {
    std::vector<std::pair<unsigned, std::int64_t>> out;
    out.reserve(seq.entries.size());
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
        const unsigned n = seq.n_min + static_cast<unsigned>(i);
        out.emplace_back(n, seq.entries[i] - model_value(p, seq.prime, n, seq.k));
    }
    return out;
}

std::size_t constant_tail(const std::vector<std::pair<unsigned, std::int64_t>>& r) {
    std::size_t len = 1;
    while (len < r.size() && r[r.size() - 1 - len].second == r.back().second) ++len;
    return len;
}

std::int64_t spread_of(const std::vector<std::pair<unsigned, std::int64_t>>& r) {
    auto [lo, hi] = std::minmax_element(r.begin(), r.end(), [](auto& a, auto& b) { return a.second < b.second; });
    return hi->second - lo->second;
}

// Exact solution of the trailing window for (ρ, μ, λ̃, ν); nullopt when the
// system is singular.
std::optional<std::array<mpq_class, 4>> solve_window(const OrderSequence& seq) {
    const std::size_t start = seq.entries.size() - kSolveWindow;
    std::array<std::array<mpq_class, 5>, 4> m;
    for (std::size_t i = 0; i < kSolveWindow; ++i) {
        const unsigned n = seq.n_min + static_cast<unsigned>(start + i);
        const mpz_class ln = seq.prime.power(n);
        m[i] = {mpq_class(ln * (static_cast<long>(n) + seq.k)), mpq_class(ln), mpq_class(n), mpq_class(1),
                mpq_class(seq.entries[start + i])};
    }
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        while (piv < 4 && m[piv][col] == 0) ++piv;
        if (piv == 4) return std::nullopt;
        std::swap(m[piv], m[col]);
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::array<mpq_class, 4> x;
    for (std::size_t i = 0; i < 4; ++i) x[i] = m[i][4] / m[i][i];
    return x;
}

std::int64_t nearest(const mpq_class& q) {
    mpz_class r;
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r.get_si();
}

ResidualClassification classify(const std::vector<std::pair<unsigned, std::int64_t>>& r, std::int64_t bound,
                                 bool exact_tail) {
    ResidualClassification c;
    auto [lo, hi] = std::minmax_element(r.begin(), r.end(), [](auto& a, auto& b) { return a.second < b.second; });
    c.min = lo->second;
    c.max = hi->second;
    c.trend = r.back().second - r.front().second;
    if (exact_tail) {
        std::size_t i = r.size() - 1;
        while (i > 0 && r[i - 1].second == r.back().second) --i;
        c.kind = ResidualKind::UltimatelyConstant;
        c.from_n = r[i].first;
        c.nu = r.back().second;
    } else {
        c.kind = c.spread() <= bound ? ResidualKind::BoundedSpread : ResidualKind::Unbounded;
    }
    return c;
}

}  // namespace

std::int64_t model_value(const ParamTriple& p, const Prime& ell, unsigned n, int k) {
    const std::int64_t ln = ell_power(ell, n);
    return p.rho * (static_cast<std::int64_t>(n) + k) * ln + p.mu * ln + p.lambda_tilde * static_cast<std::int64_t>(n);
}

FitResult fit_parameters(const OrderSequence& seq, const FitOptions& options) {
    if (seq.entries.size() < kSolveWindow) {
        throw InputError("fitting needs at least " + std::to_string(kSolveWindow) + " entries, got " +
                         std::to_string(seq.entries.size()));
    }
    auto bound_for = [&](std::int64_t lambda_tilde) {
        if (options.spread_bound) return *options.spread_bound;
        return 2 * std::max<std::int64_t>(std::llabs(lambda_tilde), 1) * (static_cast<std::int64_t>(options.level) + 2);
    };

    const auto solution = solve_window(seq);
    if (!solution) throw Error("singular fitting window");
    const auto& x = *solution;

    FitResult result;
    const bool integral = std::all_of(x.begin(), x.begin() + 3, [](const mpq_class& v) { return v.get_den() == 1; }) &&
                          x[3].get_den() == 1;
    if (integral) {
        result.triple = {x[0].get_num().get_si(), x[1].get_num().get_si(), x[2].get_num().get_si(), Grade::Strict};
        result.residuals = residuals_of(seq, result.triple);
        result.spread_bound = bound_for(result.triple.lambda_tilde);
        result.classification = classify(result.residuals, result.spread_bound, true);
        return result;
    }

    // No integral triple makes the trailing window constant. Scan integer
    // triples near the rounded solution, taking for each (ρ, μ) every λ̃
    // between the extreme consecutive differences of x - ρ(n+k)ℓ^n - μℓ^n.
    // Rank by the longest constant residual tail (when one of at least three
    // entries exists), then by the smallest spread.
    const std::int64_t rho0 = nearest(x[0]), mu0 = nearest(x[1]);
    struct Score {
        std::size_t tail;
        std::int64_t spread;
    };
    auto better = [](const Score& a, const Score& b) {
        if (a.tail != b.tail) return a.tail > b.tail;
        return a.spread < b.spread;
    };
    std::optional<Score> best_score;
    std::vector<ParamTriple> best;
    for (std::int64_t rho = std::max<std::int64_t>(0, rho0 - 2); rho <= rho0 + 2; ++rho) {
        for (std::int64_t mu = std::max<std::int64_t>(0, mu0 - 4); mu <= mu0 + 4; ++mu) {
            const ParamTriple base{rho, mu, 0, Grade::Bounded};
            const auto z = residuals_of(seq, base);
            std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
            for (std::size_t i = 1; i < z.size(); ++i) {
                lo = std::min(lo, z[i].second - z[i - 1].second);
                hi = std::max(hi, z[i].second - z[i - 1].second);
            }
            for (std::int64_t lt = lo; lt <= hi; ++lt) {
                ParamTriple t{rho, mu, lt, Grade::Bounded};
                const auto r = residuals_of(seq, t);
                Score sc{constant_tail(r), spread_of(r)};
                if (sc.tail < kMinConstantTail) sc.tail = 0;
                if (!best_score || better(sc, *best_score)) {
                    best_score = sc;
                    best = {t};
                } else if (!better(*best_score, sc)) {
                    best.push_back(t);
                }
            }
        }
    }
    if (best.size() > 1) {
        throw AmbiguousFit("triples " + best[0].to_string() + " and " + best[1].to_string() +
                           " explain the sequence equally well (residual spread " +
                           std::to_string(best_score->spread) + ")");
    }
    result.triple = best.front();
    result.residuals = residuals_of(seq, result.triple);
    result.spread_bound = bound_for(result.triple.lambda_tilde);
    result.classification = classify(result.residuals, result.spread_bound, best_score->tail >= kMinConstantTail);
    if (result.classification.kind == ResidualKind::UltimatelyConstant) result.triple.grade = Grade::Strict;
    return result;
}

VerificationReport verify_prediction(const ElementaryModule& e, const DescentDatum& d, unsigned n_min,
                                     unsigned n_max, int k, const QuotientOptions& options) {
    VerificationReport report;
    report.case_tag = classify_case(e, d);
    report.predicted = predict_parameters(e, d);
    report.kappa = kappa(e, d);
    report.sequence = order_sequence(e, d, n_min, n_max, k, options);
    FitOptions fit_options;
    fit_options.level = d.level();
    report.fit = fit_parameters(report.sequence, fit_options);
    report.triple_matches = report.fit.triple.same_numbers(report.predicted);
    const ResidualKind kind = report.fit.classification.kind;
    if (report.predicted.grade == Grade::Strict) {
        report.grade_consistent = kind == ResidualKind::UltimatelyConstant;
    } else {
        report.grade_consistent = kind == ResidualKind::UltimatelyConstant || kind == ResidualKind::BoundedSpread;
    }
    return report;
}

}  // namespace codescent
