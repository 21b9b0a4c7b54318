#include "codescent/linalg.hpp"

#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "codescent/error.hpp"

namespace codescent {

namespace {

constexpr unsigned long kInfinite = std::numeric_limits<unsigned long>::max();

unsigned long local_valuation(const mpz_class& x, const mpz_class& ell) {
    if (x == 0) return kInfinite;
    if (ell == 2) return mpz_scan1(x.get_mpz_t(), 0);
    mpz_class rest = x;
    unsigned long v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), ell.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), ell.get_mpz_t());
        ++v;
    }
    return v;
}

struct Pivot {
    unsigned long valuation = kInfinite;
    std::size_t row = 0;
    std::size_t col = 0;
};

// Residues modulo ℓ^N held in one machine word (ℓ^N < 2^62).
class WordRing {
  public:
    using value_type = std::uint64_t;

    WordRing(std::uint64_t ell, unsigned long exponent) : ell_(ell), exponent_(exponent), modulus_(1) {
        for (unsigned long i = 0; i < exponent; ++i) modulus_ *= ell;
    }

    value_type from(const mpz_class& x) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), modulus_);
        return r.get_ui();
    }

    unsigned long valuation(value_type x) const {
        if (x == 0) return exponent_;
        if (ell_ == 2) return static_cast<unsigned long>(__builtin_ctzll(x));
        unsigned long v = 0;
        while (x % ell_ == 0) {
            x /= ell_;
            ++v;
        }
        return v;
    }

    value_type divide_by_ell_power(value_type x, unsigned long v) const {
        for (unsigned long i = 0; i < v; ++i) x /= ell_;
        return x;
    }

    value_type inverse(value_type unit) const {
        // Extended Euclid on signed 128-bit values.
        __int128 a = static_cast<__int128>(unit), b = static_cast<__int128>(modulus_);
        __int128 x0 = 1, x1 = 0;
        while (b != 0) {
            __int128 q = a / b;
            std::swap(a, b);
            b -= q * a;
            std::swap(x0, x1);
            x1 -= q * x0;
        }
        __int128 m = static_cast<__int128>(modulus_);
        return static_cast<value_type>(((x0 % m) + m) % m);
    }

    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % modulus_);
    }

    // a - f*b
    value_type sub_mul(value_type a, value_type f, value_type b) const {
        value_type fb = mul(f, b);
        return a >= fb ? a - fb : a + (modulus_ - fb);
    }

    bool is_zero(value_type x) const { return x == 0; }

  private:
    std::uint64_t ell_;
    unsigned long exponent_;
    std::uint64_t modulus_;
};

// Residues modulo ℓ^N as GMP integers, for moduli beyond a machine word.
class BigRing {
  public:
    using value_type = mpz_class;

    BigRing(const Prime& ell, unsigned long exponent)
        : ell_(ell.mpz()), exponent_(exponent), modulus_(ell.power(exponent)) {}

    value_type from(const mpz_class& x) const {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
        return r;
    }

    unsigned long valuation(const value_type& x) const {
        if (x == 0) return exponent_;
        return local_valuation(x, ell_);
    }

    value_type divide_by_ell_power(value_type x, unsigned long v) const {
        for (unsigned long i = 0; i < v; ++i) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ell_.get_mpz_t());
        return x;
    }

    value_type inverse(const value_type& unit) const {
        mpz_class r;
        mpz_invert(r.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t());
        return r;
    }

    value_type mul(const value_type& a, const value_type& b) const { return from(a * b); }
    value_type sub_mul(const value_type& a, const value_type& f, const value_type& b) const {
        return from(a - f * b);
    }

    bool is_zero(const value_type& x) const { return x == 0; }

  private:
    mpz_class ell_;
    unsigned long exponent_;
    mpz_class modulus_;
};

template <class Ring>
ModularDivisors modular_kernel(const Ring& ring, const IntColumns& input, std::size_t rows,
                               unsigned long exponent) {
    using V = typename Ring::value_type;
    std::vector<std::vector<V>> cols;
    cols.reserve(input.size());
    for (const auto& c : input) {
        std::vector<V> col(rows);
        for (std::size_t i = 0; i < rows; ++i) col[i] = ring.from(c[i]);
        cols.push_back(std::move(col));
    }

    ModularDivisors out;
    out.rows = rows;
    out.exponent = exponent;

    std::vector<char> row_alive(rows, 1);
    std::vector<char> col_alive(cols.size(), 1);

    for (;;) {
        Pivot best;
        best.valuation = exponent;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!col_alive[c]) continue;
            const auto& col = cols[c];
            for (std::size_t r = 0; r < rows; ++r) {
                if (!row_alive[r] || ring.is_zero(col[r])) continue;
                unsigned long v = ring.valuation(col[r]);
                if (v < best.valuation || (v == best.valuation && r < best.row)) {
                    best = {v, r, c};
                }
                if (v == 0) break;  // no later row in this column can win
            }
        }
        if (best.valuation >= exponent) break;

        const std::size_t pr = best.row;
        const std::size_t pc = best.col;
        const V unit_inv = ring.inverse(ring.divide_by_ell_power(cols[pc][pr], best.valuation));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == pc || !col_alive[c] || ring.is_zero(cols[c][pr])) continue;
            const V factor = ring.mul(ring.divide_by_ell_power(cols[c][pr], best.valuation), unit_inv);
            auto& col = cols[c];
            const auto& pivot_col = cols[pc];
            for (std::size_t r = 0; r < rows; ++r) {
                if (!row_alive[r] || ring.is_zero(pivot_col[r])) continue;
                col[r] = ring.sub_mul(col[r], factor, pivot_col[r]);
            }
        }
        out.valuations.push_back(best.valuation);
        row_alive[pr] = 0;
        col_alive[pc] = 0;
    }
    return out;
}

void check_shape(const IntColumns& columns, std::size_t rows) {
    for (const auto& c : columns) {
        if (c.size() != rows) throw InputError("column length does not match the row count");
    }
}

}  // namespace

unsigned long LocalDivisors::valuation_sum() const {
    return std::accumulate(valuations.begin(), valuations.end(), 0UL);
}

LocalDivisors local_elementary_divisors(IntColumns columns, std::size_t rows, const Prime& ell) {
    check_shape(columns, rows);
    const mpz_class l = ell.mpz();
    std::vector<char> row_alive(rows, 1);
    std::vector<char> col_alive(columns.size(), 1);
    LocalDivisors out;

    auto strip_unit_content = [&](IntVector& col) {
        mpz_class g = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (row_alive[r]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), col[r].get_mpz_t());
        }
        if (g == 0) return;
        while (mpz_divisible_p(g.get_mpz_t(), l.get_mpz_t())) mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), l.get_mpz_t());
        if (g == 1) return;
        for (std::size_t r = 0; r < rows; ++r) {
            if (row_alive[r]) mpz_divexact(col[r].get_mpz_t(), col[r].get_mpz_t(), g.get_mpz_t());
        }
    };

    for (auto& c : columns) strip_unit_content(c);

    for (;;) {
        Pivot best;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (!col_alive[c]) continue;
            for (std::size_t r = 0; r < rows; ++r) {
                if (!row_alive[r] || columns[c][r] == 0) continue;
                unsigned long v = local_valuation(columns[c][r], l);
                if (v < best.valuation || (v == best.valuation && r < best.row)) best = {v, r, c};
            }
        }
        if (best.valuation == kInfinite) break;

        const std::size_t pr = best.row;
        const std::size_t pc = best.col;
        mpz_class scale = columns[pc][pr];
        for (unsigned long i = 0; i < best.valuation; ++i) mpz_divexact(scale.get_mpz_t(), scale.get_mpz_t(), l.get_mpz_t());
        // pivot = ℓ^v * scale with scale a unit of ℤ_(ℓ).
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c == pc || !col_alive[c] || columns[c][pr] == 0) continue;
            mpz_class factor = columns[c][pr];
            for (unsigned long i = 0; i < best.valuation; ++i) mpz_divexact(factor.get_mpz_t(), factor.get_mpz_t(), l.get_mpz_t());
            auto& col = columns[c];
            for (std::size_t r = 0; r < rows; ++r) {
                if (!row_alive[r]) continue;
                col[r] *= scale;
                mpz_submul(col[r].get_mpz_t(), factor.get_mpz_t(), columns[pc][r].get_mpz_t());
            }
        }
        row_alive[pr] = 0;
        col_alive[pc] = 0;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (col_alive[c]) strip_unit_content(columns[c]);
        }
        out.valuations.push_back(best.valuation);
        ++out.rank;
    }
    return out;
}

bool in_local_span(const IntColumns& columns, const IntVector& v, const Prime& ell) {
    const std::size_t rows = v.size();
    LocalDivisors base = local_elementary_divisors(columns, rows, ell);
    IntColumns augmented = columns;
    augmented.push_back(v);
    LocalDivisors with_v = local_elementary_divisors(std::move(augmented), rows, ell);
    // span(W) ⊆ span(W, v); equal iff same rank and same index.
    return base.rank == with_v.rank && base.valuation_sum() == with_v.valuation_sum();
}

std::size_t rational_rank(IntColumns columns, std::size_t rows) {
    check_shape(columns, rows);
    // Bareiss elimination treating each column as a row vector.
    std::size_t rank = 0;
    mpz_class previous = 1;
    for (std::size_t pos = 0; pos < rows && rank < columns.size(); ++pos) {
        std::size_t pivot = rank;
        while (pivot < columns.size() && columns[pivot][pos] == 0) ++pivot;
        if (pivot == columns.size()) continue;
        std::swap(columns[pivot], columns[rank]);
        const auto& p = columns[rank];
        for (std::size_t i = rank + 1; i < columns.size(); ++i) {
            auto& row = columns[i];
            for (std::size_t j = pos + 1; j < rows; ++j) {
                row[j] = row[j] * p[pos] - row[pos] * p[j];
                mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), previous.get_mpz_t());
            }
            row[pos] = 0;
        }
        previous = p[pos];
        ++rank;
    }
    return rank;
}

ModularDivisors modular_elementary_divisors(const IntColumns& columns, std::size_t rows, const Prime& ell,
                                            unsigned long exponent) {
    check_shape(columns, rows);
    if (exponent == 0) throw InputError("modulus exponent must be positive");
    const mpz_class modulus = ell.power(exponent);
    if (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 62) {
        return modular_kernel(WordRing(ell.value(), exponent), columns, rows, exponent);
    }
    return modular_kernel(BigRing(ell, exponent), columns, rows, exponent);
}

}  // namespace codescent
