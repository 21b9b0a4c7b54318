#ifndef CODESCENT_INVARIANTS_HPP
#define CODESCENT_INVARIANTS_HPP

#include <cstdint>
#include <string>

#include "codescent/module.hpp"

namespace codescent {

struct StructuralInvariants {
    std::uint64_t rho = 0;
    std::uint64_t mu = 0;
    std::uint64_t lambda = 0;

    friend bool operator==(const StructuralInvariants&, const StructuralInvariants&) = default;
};

/// Strict: the residual is ultimately constant. Bounded: it is only bounded.
enum class Grade { Strict, Bounded };

std::string to_string(Grade g);

/// Asymptotic parameters (ρ, μ, λ̃) of an order sequence.
struct ParamTriple {
    std::int64_t rho = 0;
    std::int64_t mu = 0;
    std::int64_t lambda_tilde = 0;
    Grade grade = Grade::Strict;

    /// Equality of the three numbers, ignoring the grade.
    bool same_numbers(const ParamTriple& other) const {
        return rho == other.rho && mu == other.mu && lambda_tilde == other.lambda_tilde;
    }
    std::string to_string() const;

    friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

/// ρ = free rank, μ = Σ m over Λ/(ℓ^m), λ = Σ deg P over Λ/(P).
StructuralInvariants structural_invariants(const ElementaryModule& e);

/// The codescent defect κ = Σ_c deg(c)·r_c over the irreducible factors c of
/// ω_e, where r_c is the rank over ℚ[T]/(c) of the generators' free
/// coordinates reduced mod c. Zero for special and trivial data.
///
/// Since ω_e is squarefree and Y + ω_eL is Λ-stable, the multiplicity of c in
/// the characteristic polynomial of L/(Y' + ω_eL) is ρ - r_c, so this equals
/// ρℓ^e - Σ deg(g_i). Torsion coordinates of the generators do not enter.
std::uint64_t kappa(const ElementaryModule& e, const DescentDatum& d);

/// (ρ, μ, λ+1, Strict) for special data, (ρ, μ, λ, Strict) for trivial data,
/// (ρ, μ, λ-κ, Bounded) otherwise.
ParamTriple predict_parameters(const ElementaryModule& e, const DescentDatum& d);

struct InequalityReport {
    std::uint64_t kappa = 0;
    /// ρℓ^e
    std::uint64_t bound = 0;
    std::int64_t lambda_tilde = 0;
    bool kappa_nonnegative = true;
    bool kappa_within_bound = true;
    /// ρℓ^e - κ
    std::int64_t kappa_slack = 0;
    bool lambda_tilde_above_bound = true;
    /// λ̃ + ρℓ^e
    std::int64_t lambda_tilde_slack = 0;

    bool all_hold() const { return kappa_nonnegative && kappa_within_bound && lambda_tilde_above_bound; }
};

/// 0 ≤ κ ≤ ρℓ^e and λ̃ ≥ -ρℓ^e, each with its slack.
InequalityReport check_inequalities(const ElementaryModule& e, const DescentDatum& d);

}  // namespace codescent

#endif  // CODESCENT_INVARIANTS_HPP
