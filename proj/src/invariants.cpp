#include "codescent/invariants.hpp"

#include <sstream>

#include "codescent/error.hpp"
#include "codescent/linalg.hpp"

namespace codescent {

std::string to_string(Grade g) { return g == Grade::Strict ? "strict" : "bounded"; }

std::string ParamTriple::to_string() const {
    std::ostringstream os;
    os << "(" << rho << ", " << mu << ", " << lambda_tilde << ")";
    return os.str();
}

StructuralInvariants structural_invariants(const ElementaryModule& e) {
    StructuralInvariants inv;
    inv.rho = e.free_rank();
    for (const auto& f : e.torsion()) {
        if (const auto* lp = std::get_if<LPower>(&f)) {
            inv.mu += lp->exponent;
        } else {
            inv.lambda += static_cast<std::uint64_t>(std::get<Distinguished>(f).poly.degree());
        }
    }
    return inv;
}

namespace {

// Rank over ℚ[T]/(c) of the free parts of the generators mod c. The
// ℚ[T]/(c)-span of the columns is the ℚ-span of their T^i-multiples, whose
// ℚ-dimension is deg(c) times the rank.
std::uint64_t residue_rank(const ElementaryModule& e, const DescentDatum& d, const IntPoly& c) {
    const auto deg = static_cast<std::size_t>(c.degree());
    const std::size_t rows = e.free_rank() * deg;
    IntColumns columns;
    for (const auto& y : d.generators()) {
        for (std::size_t i = 0; i < deg; ++i) {
            IntVector v(rows);
            for (std::size_t j = 0; j < e.free_rank(); ++j) {
                IntPoly r = divmod_monic(y.free_coords[j].shifted(i), c).second;
                for (std::size_t t = 0; t < deg; ++t) v[j * deg + t] = r.coeff(t);
            }
            columns.push_back(std::move(v));
        }
    }
    const std::size_t q_rank = rational_rank(std::move(columns), rows);
    if (q_rank % deg != 0) throw Error("residue rank is not a multiple of the factor degree");
    return q_rank / deg;
}

}  // namespace

std::uint64_t kappa(const ElementaryModule& e, const DescentDatum& d) {
    if (d.is_special() || d.generators().empty()) return 0;
    require_valid(e, d);
    if (e.free_rank() == 0) return 0;
    std::uint64_t total = 0;
    for (const auto& c : cyclotomic_factors(e.prime(), d.level())) {
        total += static_cast<std::uint64_t>(c.degree()) * residue_rank(e, d, c);
    }
    return total;
}

ParamTriple predict_parameters(const ElementaryModule& e, const DescentDatum& d) {
    require_valid(e, d);
    const StructuralInvariants inv = structural_invariants(e);
    ParamTriple p;
    p.rho = static_cast<std::int64_t>(inv.rho);
    p.mu = static_cast<std::int64_t>(inv.mu);
    switch (classify_case(e, d)) {
        case CaseTag::Special:
            p.lambda_tilde = static_cast<std::int64_t>(inv.lambda) + 1;
            p.grade = Grade::Strict;
            break;
        case CaseTag::Trivial:
            p.lambda_tilde = static_cast<std::int64_t>(inv.lambda);
            p.grade = Grade::Strict;
            break;
        case CaseTag::Generic:
            p.lambda_tilde = static_cast<std::int64_t>(inv.lambda) - static_cast<std::int64_t>(kappa(e, d));
            p.grade = Grade::Bounded;
            break;
    }
    return p;
}

InequalityReport check_inequalities(const ElementaryModule& e, const DescentDatum& d) {
    InequalityReport r;
    const ParamTriple p = predict_parameters(e, d);
    r.kappa = kappa(e, d);
    r.bound = e.free_rank() * e.prime().power(d.level()).get_ui();
    r.lambda_tilde = p.lambda_tilde;
    const auto bound = static_cast<std::int64_t>(r.bound);
    const auto k = static_cast<std::int64_t>(r.kappa);
    r.kappa_slack = bound - k;
    r.kappa_within_bound = k <= bound;
    r.kappa_nonnegative = k >= 0;
    r.lambda_tilde_slack = r.lambda_tilde + bound;
    r.lambda_tilde_above_bound = r.lambda_tilde >= -bound;
    return r;
}

}  // namespace codescent
