// Hand-rolled generators for property tests and the acceptance corpus.
#ifndef CODESCENT_TESTS_MODELS_HPP
#define CODESCENT_TESTS_MODELS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "codescent/module.hpp"

namespace codescent::testing {

struct RandomModel {
    ElementaryModule module;
    DescentDatum descent;
};

struct ModelBounds {
    std::uint64_t ell = 2;
    std::size_t max_rho = 2;
    std::size_t max_torsion = 2;
    unsigned max_level = 2;
    std::size_t max_generators = 4;
    // Allows ℓ·b in generator families (late-stabilizing descent modules).
    bool scaled_families = true;
};

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

inline IntPoly random_poly(Rng& rng, long max_degree, long bound) {
    std::vector<mpz_class> c;
    const long d = rng.uniform(-1, max_degree);
    for (long i = 0; i <= d; ++i) c.emplace_back(rng.uniform(-bound, bound));
    return IntPoly(std::move(c));
}

/// Monic, degree 1..max_degree, lower coefficients multiples of ℓ.
inline IntPoly random_distinguished(Rng& rng, const Prime& ell, long max_degree) {
    const long d = rng.uniform(1, max_degree);
    std::vector<mpz_class> c;
    for (long i = 0; i < d; ++i) c.emplace_back(rng.uniform(-2, 2) * static_cast<long>(ell.value()));
    c.emplace_back(1);
    return IntPoly(std::move(c));
}

inline std::vector<TorsionFactor> torsion_pool(const Prime& ell) {
    const long l = static_cast<long>(ell.value());
    return {LPower{1},
            LPower{2},
            Distinguished{IntPoly{0, 1}},
            Distinguished{IntPoly{l, 1}},
            Distinguished{IntPoly{l, l, 1}},
            Distinguished{IntPoly{l, 0, 1}},
            Distinguished{IntPoly{l * l, 1}}};
}

/// Random valid generic datum. Y is a union of families
///   {g · T^j · s·b : j < ℓ^e - deg g}
/// with g a product of cyclotomic factors of ω_e, b a random element and
/// s ∈ {1, ℓ}. Each family spans g·s·b·Λ modulo ω_e, so Y + ω_eE is stable.
inline RandomModel random_generic_model(Rng& rng, const ModelBounds& bounds) {
    const Prime ell(bounds.ell);
    const auto pool = torsion_pool(ell);
    const auto rho = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(bounds.max_rho)));
    const auto nt = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(bounds.max_torsion)));
    std::vector<TorsionFactor> torsion;
    for (std::size_t i = 0; i < nt; ++i) {
        torsion.push_back(pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))]);
    }
    ElementaryModule module(ell, rho, std::move(torsion));
    const auto e = static_cast<unsigned>(rng.uniform(0, bounds.max_level));
    const auto factors = cyclotomic_factors(ell, e);
    const long le = ell.power(e).get_si();

    std::vector<ModuleElement> gens;
    const long families = rng.uniform(0, 2);
    for (long f = 0; f < families; ++f) {
        IntPoly g{1};
        for (const auto& c : factors) {
            if (rng.coin()) g = g * c;
        }
        const long span = le - g.degree();
        if (span <= 0 || gens.size() + static_cast<std::size_t>(span) > bounds.max_generators) continue;
        std::vector<IntPoly> b;
        for (std::size_t c = 0; c < module.coordinate_count(); ++c) b.push_back(random_poly(rng, 1, 2));
        const long scale = bounds.scaled_families && rng.coin() ? static_cast<long>(ell.value()) : 1;
        for (long j = 0; j < span; ++j) {
            std::vector<IntPoly> coords;
            for (const auto& p : b) coords.push_back(g * IntPoly::monomial(static_cast<std::size_t>(j)) * p * scale);
            gens.push_back(canonicalize(module, ModuleElement::from_coordinates(module, std::move(coords))));
        }
    }
    return RandomModel{std::move(module), DescentDatum::generic(e, std::move(gens))};
}

/// Small random module with trivial or special descent.
inline RandomModel random_plain_model(Rng& rng, const Prime& ell, bool special) {
    const auto pool = torsion_pool(ell);
    const auto rho = static_cast<std::size_t>(rng.uniform(0, 1));
    std::vector<TorsionFactor> torsion;
    const long nt = rng.uniform(0, 2);
    for (long i = 0; i < nt; ++i) {
        torsion.push_back(pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))]);
    }
    ElementaryModule module(ell, rho, std::move(torsion));
    return RandomModel{module, special ? DescentDatum::special() : DescentDatum::generic(0)};
}

}  // namespace codescent::testing

#endif
