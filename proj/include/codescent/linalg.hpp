#ifndef CODESCENT_LINALG_HPP
#define CODESCENT_LINALG_HPP

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "codescent/poly.hpp"

namespace codescent {

/// Integer vectors of a common length; a matrix is a list of its columns.
using IntVector = std::vector<mpz_class>;
using IntColumns = std::vector<IntVector>;

/// Elementary divisors of the span of integer columns over the ℓ-local
/// integers ℤ_(ℓ): the rank and the ℓ-valuation of each nonzero divisor.
struct LocalDivisors {
    std::size_t rank = 0;
    std::vector<unsigned long> valuations;

    unsigned long valuation_sum() const;
};

LocalDivisors local_elementary_divisors(IntColumns columns, std::size_t rows, const Prime& ell);

/// Whether v lies in the ℤ_(ℓ)-span of the columns, i.e. Wx = v has a
/// solution whose denominators are prime to ℓ.
bool in_local_span(const IntColumns& columns, const IntVector& v, const Prime& ell);

/// Rank over the rationals (fraction-free elimination).
std::size_t rational_rank(IntColumns columns, std::size_t rows);

/// Elementary divisors of the span of integer columns inside (ℤ/ℓ^N)^rows.
/// `valuations` holds one entry per pivot with valuation < N; rows without a
/// pivot are free of relations.
struct ModularDivisors {
    std::size_t rows = 0;
    unsigned long exponent = 0;  // N
    std::vector<unsigned long> valuations;
};

/// The pivot rule takes the entry of minimal ℓ-valuation, ties broken by the
/// smallest row and then the smallest column.
ModularDivisors modular_elementary_divisors(const IntColumns& columns, std::size_t rows, const Prime& ell,
                                            unsigned long exponent);

}  // namespace codescent

#endif  // CODESCENT_LINALG_HPP
