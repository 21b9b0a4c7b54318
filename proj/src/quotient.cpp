#include "codescent/quotient.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include "codescent/error.hpp"
#include "codescent/linalg.hpp"

namespace codescent {

FiniteAbelianGroup::FiniteAbelianGroup(Prime ell, std::vector<unsigned long> divisor_valuations)
    : ell_(ell.value()), valuations_(std::move(divisor_valuations)) {
    std::erase(valuations_, 0UL);
    std::sort(valuations_.begin(), valuations_.end());
}

std::uint64_t FiniteAbelianGroup::order_valuation() const {
    return std::accumulate(valuations_.begin(), valuations_.end(), std::uint64_t{0});
}

std::string FiniteAbelianGroup::to_string() const {
    if (valuations_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < valuations_.size();) {
        std::size_t j = i;
        while (j < valuations_.size() && valuations_[j] == valuations_[i]) ++j;
        if (i) os << " + ";
        os << "(Z/" << ell_;
        if (valuations_[i] > 1) os << "^" << valuations_[i];
        os << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

std::size_t ambient_dimension(const ElementaryModule& e, unsigned n) {
    mpz_class width = e.prime().power(n);
    mpz_class dim = width * static_cast<unsigned long>(e.coordinate_count());
    if (!dim.fits_ulong_p()) return static_cast<std::size_t>(-1);
    return dim.get_ui();
}

unsigned minimal_level(const DescentDatum& d, int k) {
    const int floor_k = std::max(0, 1 - k);
    int base = 0;
    if (d.is_generic()) base = static_cast<int>(d.level()) + (d.generators().empty() ? 0 : 1);
    return static_cast<unsigned>(std::max(base, floor_k));
}

namespace {

void check_level(const DescentDatum& d, unsigned n, int k) {
    if (d.is_generic() && n < d.level()) {
        throw InputError("level n=" + std::to_string(n) + " is below the descent level e=" +
                         std::to_string(d.level()));
    }
    if (static_cast<long>(n) + k < 1) {
        throw InputError("exponent n+k must be at least 1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
}

IntPoly torsion_generator(const ElementaryModule& e, std::size_t i) {
    if (const auto* lp = std::get_if<LPower>(&e.torsion()[i])) return IntPoly::constant(e.prime().power(lp->exponent));
    return std::get<Distinguished>(e.torsion()[i]).poly;
}

}  // namespace

FiniteAbelianGroup quotient_group(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                                  const QuotientOptions& options) {
    require_valid(e, d);
    check_level(d, n, k);
    const std::size_t rows = ambient_dimension(e, n);
    if (rows > options.dimension_cap) {
        throw CapExceeded("ambient dimension " + std::to_string(rows) + " at n=" + std::to_string(n) +
                          " exceeds the cap " + std::to_string(options.dimension_cap));
    }

    const Prime& ell = e.prime();
    const auto exponent = static_cast<unsigned long>(static_cast<long>(n) + k);
    const mpz_class modulus = ell.power(exponent);
    const IntPoly omega_n = omega(ell, n);
    const auto width = static_cast<std::size_t>(omega_n.degree());

    IntColumns columns;
    auto column_from = [&](std::size_t coord, const IntPoly& p) {
        IntVector v(rows);
        for (std::size_t j = 0; j < width; ++j) v[coord * width + j] = p.coeff(j);
        return v;
    };

    // f_i generates an ideal: all shifts T^j f_i.
    for (std::size_t i = 0; i < e.torsion().size(); ++i) {
        const std::size_t coord = e.free_rank() + i;
        IntPoly shift = poly_mod_reduce(torsion_generator(e, i), omega_n, modulus);
        if (shift.is_zero()) continue;
        for (std::size_t j = 0; j < width; ++j) {
            columns.push_back(column_from(coord, shift));
            shift = poly_mod_reduce(shift.shifted(1), omega_n, modulus);
        }
    }

    // Y is only a ℤ_ℓ-module: one column per generator.
    if (d.is_generic() && !d.generators().empty()) {
        const IntPoly norm = n == d.level() ? IntPoly{1} : omega_rel(ell, n, d.level());
        const IntPoly norm_reduced = poly_mod_reduce(norm, omega_n, modulus);
        for (const auto& y : d.generators()) {
            IntVector v(rows);
            const auto coords = y.coordinates();
            for (std::size_t c = 0; c < coords.size(); ++c) {
                IntPoly image = poly_mod_reduce(norm_reduced * poly_mod_reduce(coords[c], omega_n, modulus), omega_n, modulus);
                for (std::size_t j = 0; j < width; ++j) v[c * width + j] = image.coeff(j);
            }
            columns.push_back(std::move(v));
        }
    }

    ModularDivisors divisors = modular_elementary_divisors(columns, rows, ell, exponent);
    std::vector<unsigned long> group;
    group.reserve(rows + 1);
    for (unsigned long v : divisors.valuations) {
        if (v > 0) group.push_back(v);
    }
    group.insert(group.end(), rows - divisors.valuations.size(), exponent);
    if (d.is_special()) group.push_back(exponent);
    return FiniteAbelianGroup(ell, std::move(group));
}

std::int64_t order_valuation(const ElementaryModule& e, const DescentDatum& d, unsigned n, int k,
                             const QuotientOptions& options) {
    return static_cast<std::int64_t>(quotient_group(e, d, n, k, options).order_valuation());
}

OrderSequence order_sequence(const ElementaryModule& e, const DescentDatum& d, unsigned n_min, unsigned n_max,
                             int k, const QuotientOptions& options) {
    if (n_min > n_max) throw InputError("empty range: n_min > n_max");
    require_valid(e, d);
    const unsigned lowest = minimal_level(d, k);
    if (n_min < lowest) {
        throw InputError("n_min=" + std::to_string(n_min) + " is below the smallest admissible level " +
                         std::to_string(lowest));
    }
    // Fail fast on the cap before spawning any work.
    if (ambient_dimension(e, n_max) > options.dimension_cap) {
        throw CapExceeded("ambient dimension " + std::to_string(ambient_dimension(e, n_max)) + " at n=" +
                          std::to_string(n_max) + " exceeds the cap " + std::to_string(options.dimension_cap));
    }

    OrderSequence seq{e.prime(), k, n_min, {}};
    seq.entries.resize(n_max - n_min + 1);
    if (!options.parallel) {
        for (unsigned n = n_min; n <= n_max; ++n) seq.entries[n - n_min] = order_valuation(e, d, n, k, options);
        return seq;
    }
    std::vector<std::future<std::int64_t>> pending;
    for (unsigned n = n_min; n <= n_max; ++n) {
        pending.push_back(std::async(std::launch::async, [&e, &d, n, k, &options] {
            return order_valuation(e, d, n, k, options);
        }));
    }
    for (std::size_t i = 0; i < pending.size(); ++i) seq.entries[i] = pending[i].get();
    return seq;
}

}  // namespace codescent
