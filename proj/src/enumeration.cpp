// Brute-force order computation: enumerate the ambient finite module and
// grow the relation subgroup one generator at a time.

#include <set>

#include "codescent/error.hpp"
#include "codescent/quotient.hpp"

namespace codescent {

namespace {

using Digits = std::vector<std::uint64_t>;

// Mixed-radix encoding of vectors over ℤ/q of fixed length.
class Ambient {
  public:
    Ambient(std::uint64_t q, std::size_t length) : q_(q), length_(length) {
        size_ = 1;
        for (std::size_t i = 0; i < length; ++i) size_ *= q;
    }

    std::uint64_t size() const { return size_; }

    std::uint64_t encode(const Digits& d) const {
        std::uint64_t x = 0;
        for (std::size_t i = length_; i-- > 0;) x = x * q_ + d[i];
        return x;
    }

    // a + b where a is encoded and b given as digits.
    std::uint64_t add(std::uint64_t a, const Digits& b) const {
        std::uint64_t out = 0, place = 1;
        for (std::size_t i = 0; i < length_; ++i) {
            std::uint64_t digit = a % q_;
            a /= q_;
            out += ((digit + b[i]) % q_) * place;
            place *= q_;
        }
        return out;
    }

    Digits decode(std::uint64_t a) const {
        Digits d(length_);
        for (std::size_t i = 0; i < length_; ++i) {
            d[i] = a % q_;
            a /= q_;
        }
        return d;
    }

  private:
    std::uint64_t q_;
    std::size_t length_;
    std::uint64_t size_;
};

// Residues of a polynomial modulo (ω_n, q), in the monomial basis.
Digits residues(const IntPoly& p, const IntPoly& omega_n, const mpz_class& q) {
    IntPoly r = poly_mod_reduce(p, omega_n, q);
    Digits d(static_cast<std::size_t>(omega_n.degree()));
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = mpz_class(r.coeff(j)).get_ui();
    return d;
}

// Multiplication by T in (ℤ/q)[T]/(ω_n), written out on residues.
Digits times_t(const Digits& p, const Digits& omega_low, std::uint64_t q) {
    const std::size_t w = p.size();
    Digits out(w);
    const std::uint64_t top = p[w - 1];
    for (std::size_t j = w; j-- > 1;) out[j] = p[j - 1];
    out[0] = 0;
    // T^w ≡ -(ω_n - T^w).
    for (std::size_t j = 0; j < w; ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>(static_cast<unsigned __int128>(top) * omega_low[j] % q);
        out[j] = (out[j] + q - sub) % q;
    }
    return out;
}

}  // namespace

std::int64_t enumeration_oracle(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                                const EnumerationOptions& options) {
    require_valid(e, d);
    if (d.is_generic() && n < d.level()) throw InputError("level n is below the descent level e");
    if (static_cast<long>(n) + k < 1) throw InputError("exponent n+k must be at least 1");

    const Prime& ell = e.prime();
    const auto exponent = static_cast<unsigned long>(static_cast<long>(n) + k);
    const mpz_class q_big = ell.power(exponent);
    const mpz_class width_big = ell.power(n);
    const std::size_t coords = e.coordinate_count();
    const std::size_t extra = d.is_special() ? 1 : 0;

    const mpz_class digits_big = width_big * static_cast<unsigned long>(coords) + static_cast<unsigned long>(extra);
    // Every digit has at least two values, so more than 64 digits is always over.
    bool over = digits_big > 64;
    if (!over) {
        mpz_class ambient_size;
        mpz_pow_ui(ambient_size.get_mpz_t(), q_big.get_mpz_t(), digits_big.get_ui());
        over = ambient_size > mpz_class(static_cast<unsigned long>(options.element_cap));
    }
    if (over) {
        throw CapExceeded("ambient module of " + std::to_string(ell.value()) + "^(" + std::to_string(exponent) + "*" +
                          digits_big.get_str() + ") elements exceeds the enumeration cap " +
                          std::to_string(options.element_cap));
    }

    const std::uint64_t q = q_big.get_ui();
    const auto width = static_cast<std::size_t>(width_big.get_ui());
    const Ambient ambient(q, coords * width + extra);
    const IntPoly omega_n = omega(ell, n);
    Digits omega_low(width);
    for (std::size_t j = 0; j < width; ++j) {
        mpz_class c;
        mpz_fdiv_r(c.get_mpz_t(), omega_n.coeff(j).get_mpz_t(), q_big.get_mpz_t());
        omega_low[j] = c.get_ui();
    }

    auto place = [&](std::size_t coord, const Digits& local) {
        Digits full(coords * width + extra);
        std::copy(local.begin(), local.end(), full.begin() + static_cast<std::ptrdiff_t>(coord * width));
        return full;
    };

    std::vector<Digits> generators;
    for (std::size_t i = 0; i < e.torsion().size(); ++i) {
        IntPoly f;
        if (const auto* lp = std::get_if<LPower>(&e.torsion()[i])) {
            f = IntPoly::constant(ell.power(lp->exponent));
        } else {
            f = std::get<Distinguished>(e.torsion()[i]).poly;
        }
        // The T-orbit of f; its additive closure is the ideal (f).
        std::set<Digits> orbit;
        Digits current = residues(f, omega_n, q_big);
        while (orbit.insert(current).second) {
            generators.push_back(place(e.free_rank() + i, current));
            current = times_t(current, omega_low, q);
        }
    }
    if (d.is_generic() && !d.generators().empty()) {
        const IntPoly norm = n == d.level() ? IntPoly{1} : omega_rel(ell, n, d.level());
        for (const auto& y : d.generators()) {
            Digits full(coords * width + extra);
            const auto ys = y.coordinates();
            for (std::size_t c = 0; c < coords; ++c) {
                Digits local = residues(norm * ys[c], omega_n, q_big);
                std::copy(local.begin(), local.end(), full.begin() + static_cast<std::ptrdiff_t>(c * width));
            }
            generators.push_back(std::move(full));
        }
    }

    std::vector<char> member(ambient.size(), 0);
    std::vector<std::uint64_t> elements{0};
    member[0] = 1;
    for (const auto& g : generators) {
        const std::uint64_t g_code = ambient.encode(g);
        if (member[g_code]) continue;
        const std::vector<std::uint64_t> base = elements;
        std::uint64_t multiple = g_code;
        while (!member[multiple]) {
            const Digits step = ambient.decode(multiple);
            for (std::uint64_t h : base) {
                const std::uint64_t s = ambient.add(h, step);
                if (!member[s]) {
                    member[s] = 1;
                    elements.push_back(s);
                }
            }
            multiple = ambient.add(multiple, g);
        }
    }

    // |A| / |H| is a power of ℓ.
    std::uint64_t index = ambient.size() / elements.size();
    std::int64_t v = 0;
    while (index > 1) {
        if (index % ell.value() != 0) throw Error("enumeration produced a non-ℓ-power index");
        index /= ell.value();
        ++v;
    }
    return v;
}

}  // namespace codescent
