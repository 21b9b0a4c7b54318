#ifndef CODESCENT_QUOTIENT_HPP
#define CODESCENT_QUOTIENT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "codescent/module.hpp"

namespace codescent {

/// ⊕_j ℤ/ℓ^{v_j}, stored as the sorted multiset of positive valuations.
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;
    FiniteAbelianGroup(Prime ell, std::vector<unsigned long> divisor_valuations);

    const std::vector<unsigned long>& divisor_valuations() const noexcept { return valuations_; }
    std::uint64_t order_valuation() const;
    bool is_trivial() const noexcept { return valuations_.empty(); }

    /// e.g. "Z/2 + Z/8" or "0".
    std::string to_string() const;

  private:
    std::uint64_t ell_ = 2;
    std::vector<unsigned long> valuations_;
};

struct QuotientOptions {
    /// Largest ambient dimension (coordinates × ℓ^n) the engine will build.
    std::size_t dimension_cap = 4096;
    /// Evaluate order_sequence entries on worker threads.
    bool parallel = true;
};

/// ℓ-valuations x(n,k) for n in [n_min, n_max].
struct OrderSequence {
    Prime prime{2};
    int k = 0;
    unsigned n_min = 0;
    std::vector<std::int64_t> entries;

    unsigned n_max() const { return n_min + static_cast<unsigned>(entries.size()) - 1; }
    std::int64_t at(unsigned n) const { return entries.at(n - n_min); }
};

/// Size of the ambient (ℤ/ℓ^N)-module the engine builds at level n:
/// (free rank + number of torsion factors) · ℓ^n.
std::size_t ambient_dimension(const ElementaryModule& e, unsigned n);

/// The exponent-ℓ^{n+k} quotient E/(ω_{n,e}Y + ω_nE + ℓ^{n+k}E), plus a
/// ℤ/ℓ^{n+k} summand in the special case.
FiniteAbelianGroup quotient_group(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                                  const QuotientOptions& options = {});

std::int64_t order_valuation(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                             const QuotientOptions& options = {});

OrderSequence order_sequence(const ElementaryModule& e, const DescentDatum& d, unsigned n_min, unsigned n_max,
                             int k, const QuotientOptions& options = {});

/// Smallest admissible n for a sequence: e+1 for generic data with
/// generators, e for trivial data (at least 1 - k), 0 for special.
unsigned minimal_level(const DescentDatum& d, int k);

struct EnumerationOptions {
    /// Largest ambient set the oracle will enumerate.
    std::uint64_t element_cap = std::uint64_t{1} << 24;
};

/// Order valuation by literal subgroup closure over the enumerated ambient
/// module. Independent of the elimination path; refuses with CapExceeded
/// when the ambient set is larger than the cap.
std::int64_t enumeration_oracle(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                                const EnumerationOptions& options = {});

}  // namespace codescent

#endif  // CODESCENT_QUOTIENT_HPP
