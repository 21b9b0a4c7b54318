#ifndef CODESCENT_POLY_HPP
#define CODESCENT_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace codescent {

/// A prime number ℓ, checked at construction.
///
/// The primality test is deterministic for every 64-bit input (trial
/// division followed by a strong test against the first twelve prime bases).
class Prime {
  public:
    explicit Prime(std::uint64_t value);

    std::uint64_t value() const noexcept { return value_; }
    mpz_class mpz() const { return mpz_class(static_cast<unsigned long>(value_)); }

    /// ℓ^k as an arbitrary-precision integer.
    mpz_class power(unsigned long k) const;

    friend bool operator==(const Prime&, const Prime&) = default;

  private:
    std::uint64_t value_;
};

bool is_prime(std::uint64_t n);

/// ℓ-adic valuation of a nonzero integer. Zero has no finite valuation and is
/// rejected.
unsigned long valuation(const mpz_class& x, const Prime& ell);

/// Polynomial with arbitrary-precision integer coefficients in T = γ - 1.
///
/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial has an empty coefficient list and degree -1.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(std::size_t degree, const mpz_class& c = 1);

    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

    /// Coefficient of T^i; zero past the degree.
    mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
    const mpz_class& leading() const { return coeffs_.back(); }

    /// Multiplication by T^k.
    IntPoly shifted(std::size_t k) const;
    /// Value at an integer point (Horner).
    mpz_class evaluate(const mpz_class& t) const;

    IntPoly& operator+=(const IntPoly& rhs);
    IntPoly& operator-=(const IntPoly& rhs);
    IntPoly& operator*=(const mpz_class& rhs);

    friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
    friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
    friend IntPoly operator*(IntPoly lhs, const mpz_class& rhs) { return lhs *= rhs; }
    friend IntPoly operator*(const mpz_class& lhs, IntPoly rhs) { return rhs *= lhs; }
    friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
    IntPoly operator-() const;

    friend bool operator==(const IntPoly& lhs, const IntPoly& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

    /// Human-readable form, highest degree first: "T^2 + 2*T + 2".
    std::string to_string() const;
    /// Ascending coefficient list as used by the scenario format: "[0, 2, 1]".
    std::string to_list_string() const;

  private:
    void normalize();

    std::vector<mpz_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

/// Quotient and remainder of division by a monic polynomial over ℤ.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& monic_divisor);

/// a / b when b is monic and divides a exactly; throws InputError otherwise.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& monic_divisor);

/// ω_n = (1+T)^{ℓ^n} - 1.
IntPoly omega(const Prime& ell, unsigned n);

/// ω_{n,e} = ω_n / ω_e for n > e. Distinguished of degree ℓ^n - ℓ^e.
IntPoly omega_rel(const Prime& ell, unsigned n, unsigned e);

/// The irreducible factors T, ω_{1,0}, …, ω_{e,e-1} of ω_e, in that order.
std::vector<IntPoly> cyclotomic_factors(const Prime& ell, unsigned e);

/// Monic with every non-leading coefficient divisible by ℓ.
bool is_distinguished(const IntPoly& p, const Prime& ell);

/// Canonical representative of p in (ℤ/m)[T]/(modulus): degree below
/// deg(modulus), coefficients in [0, m). The modulus must be monic and m ≥ 2.
IntPoly poly_mod_reduce(const IntPoly& p, const IntPoly& modulus_poly, const mpz_class& modulus_int);

}  // namespace codescent

#endif  // CODESCENT_POLY_HPP
