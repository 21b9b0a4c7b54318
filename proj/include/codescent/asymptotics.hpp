#ifndef CODESCENT_ASYMPTOTICS_HPP
#define CODESCENT_ASYMPTOTICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codescent/invariants.hpp"
#include "codescent/quotient.hpp"

namespace codescent {

enum class ResidualKind { UltimatelyConstant, BoundedSpread, Unbounded };

std::string to_string(ResidualKind kind);

struct ResidualClassification {
    ResidualKind kind = ResidualKind::UltimatelyConstant;
    /// UltimatelyConstant: first n of the constant tail and its value ν.
    unsigned from_n = 0;
    std::int64_t nu = 0;
    /// Range of the residuals over the whole sequence.
    std::int64_t min = 0;
    std::int64_t max = 0;
    /// Unbounded: last residual minus first residual.
    std::int64_t trend = 0;

    std::int64_t spread() const { return max - min; }
};

struct FitResult {
    ParamTriple triple;
    /// (n, x(n,k) - [ρ(n+k)ℓ^n + μℓ^n + λ̃n]) over the whole range.
    std::vector<std::pair<unsigned, std::int64_t>> residuals;
    ResidualClassification classification;
    /// The spread threshold B in force.
    std::int64_t spread_bound = 0;
};

struct FitOptions {
    /// Overrides the default B = 2·max(|λ̃|, 1)·(e + 2).
    std::optional<std::int64_t> spread_bound;
    /// Descent level e entering the default B.
    unsigned level = 0;
};

/// The model value ρ(n+k)ℓ^n + μℓ^n + λ̃n.
std::int64_t model_value(const ParamTriple& p, const Prime& ell, unsigned n, int k);

/// Fits (ρ, μ, λ̃) to a sequence of at least four entries.
///
/// The four trailing entries are solved exactly for (ρ, μ, λ̃, ν). An integral
/// solution has a constant residual tail and is taken as is. Otherwise
/// integer triples near the rounded solution are ranked by the length of
/// their constant residual tail (counted only from three entries up), then by
/// residual spread; a tie for the best rank raises AmbiguousFit.
FitResult fit_parameters(const OrderSequence& seq, const FitOptions& options = {});

struct VerificationReport {
    CaseTag case_tag = CaseTag::Trivial;
    std::uint64_t kappa = 0;
    ParamTriple predicted;
    OrderSequence sequence;
    FitResult fit;
    bool triple_matches = false;
    bool grade_consistent = false;

    bool pass() const { return triple_matches && grade_consistent; }
};

/// Computes x(n,k) over [n_min, n_max], fits it, and compares with
/// predict_parameters. A strict prediction needs an ultimately constant
/// residual; a bounded one accepts a constant or bounded residual.
VerificationReport verify_prediction(const ElementaryModule& e, const DescentDatum& d, unsigned n_min,
                                     unsigned n_max, int k, const QuotientOptions& options = {});

}  // namespace codescent

#endif  // CODESCENT_ASYMPTOTICS_HPP
