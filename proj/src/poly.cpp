#include "codescent/poly.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

#include "codescent/error.hpp"

namespace codescent {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Strong probable-prime test to base a; n odd, n > a.
bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Trial division settles everything below 41^2.
    if (n < 41 * 41) return true;
    return std::all_of(kBases.begin(), kBases.end(),
                       [n](std::uint64_t a) { return strong_probable_prime(n, a); });
}

Prime::Prime(std::uint64_t value) : value_(value) {
    if (!is_prime(value)) throw InputError(std::to_string(value) + " is not prime");
}

mpz_class Prime::power(unsigned long k) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(value_), k);
    return r;
}

unsigned long valuation(const mpz_class& x, const Prime& ell) {
    if (x == 0) throw InputError("valuation of zero is infinite");
    mpz_class rest = abs(x);
    const mpz_class p = ell.mpz();
    unsigned long v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(std::size_t degree, const mpz_class& c) {
    std::vector<mpz_class> v(degree + 1);
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<mpz_class> v(k + coeffs_.size());
    std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return IntPoly(std::move(v));
}

mpz_class IntPoly::evaluate(const mpz_class& t) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& rhs) {
    for (auto& c : coeffs_) c *= rhs;
    normalize();
    return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<mpz_class> v(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            mpz_addmul(v[i + j].get_mpz_t(), lhs.coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
        }
    }
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << "T";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::string IntPoly::to_list_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ", ";
        os << coeffs_[i];
    }
    os << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.to_string(); }

std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& monic_divisor) {
    if (!monic_divisor.is_monic()) throw InputError("divisor " + monic_divisor.to_string() + " is not monic");
    const auto db = static_cast<std::size_t>(monic_divisor.degree());
    if (a.degree() < monic_divisor.degree()) return {IntPoly{}, a};
    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> quo(rem.size() - db);
    const auto& b = monic_divisor.coeffs();
    for (std::size_t top = rem.size(); top-- > db;) {
        const mpz_class q = rem[top];
        if (q == 0) continue;
        quo[top - db] = q;
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_submul(rem[top - db + j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
        }
    }
    rem.resize(db);
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& monic_divisor) {
    auto [q, r] = divmod_monic(a, monic_divisor);
    if (!r.is_zero()) {
        throw InputError(monic_divisor.to_string() + " does not divide " + a.to_string());
    }
    return q;
}

IntPoly omega(const Prime& ell, unsigned n) {
    // (1+T)^{ℓ^n} as n successive ℓ-th powers.
    const IntPoly one_plus_t{1, 1};
    IntPoly power = one_plus_t;
    for (unsigned step = 0; step < n; ++step) {
        IntPoly next = power;
        for (std::uint64_t j = 1; j < ell.value(); ++j) next = next * power;
        power = std::move(next);
    }
    return power - IntPoly{1};
}

IntPoly omega_rel(const Prime& ell, unsigned n, unsigned e) {
    if (n <= e) {
        throw InputError("omega_rel requires n > e (got n=" + std::to_string(n) + ", e=" + std::to_string(e) + ")");
    }
    return exact_quotient(omega(ell, n), omega(ell, e));
}

std::vector<IntPoly> cyclotomic_factors(const Prime& ell, unsigned e) {
    std::vector<IntPoly> factors;
    factors.reserve(e + 1);
    factors.push_back(IntPoly{0, 1});
    IntPoly previous = omega(ell, 0);
    for (unsigned i = 1; i <= e; ++i) {
        IntPoly current = omega(ell, i);
        factors.push_back(exact_quotient(current, previous));
        previous = std::move(current);
    }
    return factors;
}

bool is_distinguished(const IntPoly& p, const Prime& ell) {
    if (!p.is_monic()) return false;
    const mpz_class l = ell.mpz();
    const auto& c = p.coeffs();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), l.get_mpz_t())) return false;
    }
    return true;
}

IntPoly poly_mod_reduce(const IntPoly& p, const IntPoly& modulus_poly, const mpz_class& modulus_int) {
    if (!modulus_poly.is_monic()) throw InputError("modulus polynomial " + modulus_poly.to_string() + " is not monic");
    if (modulus_int < 2) throw InputError("integer modulus must be at least 2");
    const auto db = static_cast<std::size_t>(modulus_poly.degree());
    std::vector<mpz_class> rem = p.coeffs();
    for (auto& c : rem) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus_int.get_mpz_t());
    const auto& b = modulus_poly.coeffs();
    for (std::size_t top = rem.size(); top-- > db;) {
        mpz_class q = rem[top];
        if (q == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) {
            auto& slot = rem[top - db + j];
            mpz_submul(slot.get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
            mpz_fdiv_r(slot.get_mpz_t(), slot.get_mpz_t(), modulus_int.get_mpz_t());
        }
    }
    if (rem.size() > db) rem.resize(db);
    return IntPoly(std::move(rem));
}

}  // namespace codescent
