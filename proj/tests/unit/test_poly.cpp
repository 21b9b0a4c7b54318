#include <doctest.h>

#include "codescent/error.hpp"
#include "codescent/poly.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace codescent;
using codescent::testing::Rng;

TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(5));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_THROWS_AS(Prime(4), InputError);
    CHECK(Prime(3).power(4) == 81);
}

TEST_CASE("primality agrees with trial division below 20000") {
    for (std::uint64_t n = 0; n < 20000; ++n) {
        bool trial = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
        REQUIRE_MESSAGE(is_prime(n) == trial, n);
    }
}

TEST_CASE("valuation") {
    const Prime two(2);
    CHECK(valuation(48, two) == 4);
    CHECK(valuation(-3, two) == 0);
    CHECK_THROWS_AS(valuation(0, two), InputError);
}

TEST_CASE("polynomial formatting and normalization") {
    const IntPoly p{0, 2, 1, 0, 0};
    CHECK(p.degree() == 2);
    CHECK(p.to_list_string() == "[0, 2, 1]");
    CHECK(p.to_string() == "T^2 + 2*T");
    CHECK(IntPoly{}.degree() == -1);
    CHECK(IntPoly{0, 0}.is_zero());
    CHECK(IntPoly{}.to_list_string() == "[]");
    CHECK(IntPoly{-1, 0, -3}.to_string() == "-3*T^2 - 1");
}

TEST_CASE("omega") {
    CHECK(omega(Prime(2), 0) == IntPoly{0, 1});
    CHECK(omega(Prime(2), 1) == IntPoly{0, 2, 1});
    CHECK(omega(Prime(3), 1) == IntPoly{0, 3, 3, 1});
}

TEST_CASE("omega_rel") {
    CHECK(omega_rel(Prime(2), 1, 0) == IntPoly{2, 1});
    CHECK(omega_rel(Prime(2), 2, 1) == IntPoly{2, 2, 1});
    CHECK(omega_rel(Prime(3), 1, 0) == IntPoly{3, 3, 1});
    CHECK(omega_rel(Prime(2), 2, 1) * omega(Prime(2), 1) == omega(Prime(2), 2));
    CHECK(omega_rel(Prime(3), 1, 0) * omega(Prime(3), 0) == omega(Prime(3), 1));
    CHECK_THROWS_AS(omega_rel(Prime(2), 1, 1), InputError);
    CHECK_THROWS_AS(omega_rel(Prime(2), 0, 1), InputError);
}

TEST_CASE("cyclotomic factors") {
    CHECK(cyclotomic_factors(Prime(2), 0) == std::vector<IntPoly>{IntPoly{0, 1}});
    const auto f22 = cyclotomic_factors(Prime(2), 2);
    REQUIRE(f22 == std::vector<IntPoly>{IntPoly{0, 1}, IntPoly{2, 1}, IntPoly{2, 2, 1}});
    CHECK(f22[0] * f22[1] * f22[2] == omega(Prime(2), 2));
    const auto f31 = cyclotomic_factors(Prime(3), 1);
    REQUIRE(f31 == std::vector<IntPoly>{IntPoly{0, 1}, IntPoly{3, 3, 1}});
    CHECK(f31[0] * f31[1] == omega(Prime(3), 1));
}

TEST_CASE("is_distinguished") {
    CHECK(is_distinguished(IntPoly{2, 2, 1}, Prime(2)));
    CHECK_FALSE(is_distinguished(IntPoly{1, 1}, Prime(2)));
    CHECK(is_distinguished(omega_rel(Prime(3), 2, 1), Prime(3)));
    CHECK_FALSE(is_distinguished(IntPoly{2, 2}, Prime(2)));
    CHECK_FALSE(is_distinguished(IntPoly{}, Prime(2)));
}

TEST_CASE("poly_mod_reduce") {
    const IntPoly w1{0, 2, 1};
    CHECK(poly_mod_reduce(IntPoly{0, 0, 1}, w1, 4) == IntPoly{0, 2});
    CHECK(poly_mod_reduce(IntPoly{}, w1, 4).is_zero());
    CHECK(poly_mod_reduce(IntPoly{}, IntPoly{1}, 2).is_zero());
    CHECK(poly_mod_reduce(IntPoly{5, 1}, w1, 4) == IntPoly{1, 1});
    CHECK_THROWS_AS(poly_mod_reduce(IntPoly{1}, IntPoly{0, 2}, 4), InputError);
    CHECK_THROWS_AS(poly_mod_reduce(IntPoly{1}, w1, 1), InputError);
}

TEST_CASE("divmod_monic reconstructs the dividend") {
    Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        const IntPoly a = codescent::testing::random_poly(rng, 7, 50);
        const IntPoly d = codescent::testing::random_distinguished(rng, Prime(3), 3);
        const auto [q, r] = divmod_monic(a, d);
        REQUIRE(q * d + r == a);
        REQUIRE(r.degree() < d.degree());
        CHECK(exact_quotient(a * d, d) == a);
    }
    CHECK_THROWS_AS(exact_quotient(IntPoly{1, 1}, IntPoly{0, 1}), InputError);
}

TEST_CASE("omega properties over small primes") {
    for (std::uint64_t l : {2, 3, 5, 7}) {
        const Prime ell(l);
        for (unsigned n = 0; n <= (l == 2 ? 5u : 2u); ++n) {
            const IntPoly w = omega(ell, n);
            CAPTURE(l);
            CAPTURE(n);
            REQUIRE(w == codescent::testing::omega_binomial(l, n));
            CHECK(w.degree() == ell.power(n).get_si());
            CHECK(w.coeff(0) == 0);
            CHECK(w.is_monic());
            for (unsigned e = 0; e < n; ++e) {
                const IntPoly rel = omega_rel(ell, n, e);
                CHECK(rel * omega(ell, e) == w);
                CHECK(is_distinguished(rel, ell));
                CHECK(rel.degree() == mpz_class(ell.power(n) - ell.power(e)).get_si());
            }
            const auto factors = cyclotomic_factors(ell, n);
            IntPoly prod{1};
            long degrees = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                prod = prod * factors[i];
                degrees += factors[i].degree();
                CHECK(is_distinguished(factors[i], ell));
                for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(factors[i] == factors[j]);
            }
            CHECK(prod == w);
            CHECK(degrees == ell.power(n).get_si());
        }
    }
}

TEST_CASE("ring identities on random polynomials") {
    Rng rng(5);
    for (int it = 0; it < 300; ++it) {
        const IntPoly a = codescent::testing::random_poly(rng, 6, 1000);
        const IntPoly b = codescent::testing::random_poly(rng, 6, 1000);
        const IntPoly c = codescent::testing::random_poly(rng, 6, 1000);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a * b == b * a);
        REQUIRE((a - b) + b == a);
        const mpz_class t = rng.uniform(-5, 5);
        REQUIRE((a * b).evaluate(t) == a.evaluate(t) * b.evaluate(t));
    }
}

TEST_CASE("poly_mod_reduce is idempotent and respects the quotient ring") {
    Rng rng(7);
    for (int it = 0; it < 300; ++it) {
        const IntPoly m = codescent::testing::random_distinguished(rng, Prime(2), 4);
        const mpz_class q = mpz_class(1) << rng.uniform(1, 6);
        const IntPoly a = codescent::testing::random_poly(rng, 9, 100);
        const IntPoly b = codescent::testing::random_poly(rng, 9, 100);
        const IntPoly r = poly_mod_reduce(a, m, q);
        REQUIRE(poly_mod_reduce(r, m, q) == r);
        REQUIRE(r.degree() < m.degree());
        for (const auto& c : r.coeffs()) REQUIRE((c >= 0 && c < q));
        REQUIRE(poly_mod_reduce(a * b, m, q) == poly_mod_reduce(r * poly_mod_reduce(b, m, q), m, q));
    }
}
