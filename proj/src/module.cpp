#include "codescent/module.hpp"

#include <sstream>

#include "codescent/error.hpp"
#include "codescent/linalg.hpp"

namespace codescent {

ElementaryModule::ElementaryModule(Prime ell, std::size_t free_rank, std::vector<TorsionFactor> torsion)
    : ell_(ell), free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (const auto* lp = std::get_if<LPower>(&torsion_[i])) {
            if (lp->exponent == 0) {
                throw InputError("torsion factor " + std::to_string(i) + ": l-power exponent must be at least 1");
            }
        } else {
            const auto& p = std::get<Distinguished>(torsion_[i]).poly;
            if (p.degree() < 1) {
                throw InputError("torsion factor " + std::to_string(i) + ": polynomial " + p.to_string() +
                                 " must have degree at least 1");
            }
            if (!is_distinguished(p, ell_)) {
                throw InputError("torsion factor " + std::to_string(i) + ": polynomial " + p.to_string() +
                                 " is not distinguished for l=" + std::to_string(ell_.value()));
            }
        }
    }
}

std::string ElementaryModule::describe() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() -> std::ostream& {
        if (!first) os << " + ";
        first = false;
        return os;
    };
    if (free_rank_ == 1) sep() << "L";
    if (free_rank_ > 1) sep() << "L^" << free_rank_;
    for (const auto& f : torsion_) {
        if (const auto* lp = std::get_if<LPower>(&f)) {
            sep() << "L/(" << ell_.value();
            if (lp->exponent > 1) os << "^" << lp->exponent;
            os << ")";
        } else {
            sep() << "L/(" << std::get<Distinguished>(f).poly.to_string() << ")";
        }
    }
    if (first) os << "0";
    return os.str();
}

ModuleElement ModuleElement::from_coordinates(const ElementaryModule& e, std::vector<IntPoly> coords) {
    if (coords.size() > e.coordinate_count()) {
        throw InputError("element has " + std::to_string(coords.size()) + " coordinates, module has " +
                         std::to_string(e.coordinate_count()));
    }
    coords.resize(e.coordinate_count());
    ModuleElement x;
    x.free_coords.assign(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(e.free_rank()));
    x.torsion_coords.assign(coords.begin() + static_cast<std::ptrdiff_t>(e.free_rank()), coords.end());
    return x;
}

ModuleElement ModuleElement::zero(const ElementaryModule& e) { return from_coordinates(e, {}); }

std::vector<IntPoly> ModuleElement::coordinates() const {
    std::vector<IntPoly> all = free_coords;
    all.insert(all.end(), torsion_coords.begin(), torsion_coords.end());
    return all;
}

bool ModuleElement::is_zero() const {
    for (const auto& c : free_coords) {
        if (!c.is_zero()) return false;
    }
    for (const auto& c : torsion_coords) {
        if (!c.is_zero()) return false;
    }
    return true;
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::Special: return "special";
        case CaseTag::Trivial: return "trivial";
        case CaseTag::Generic: return "generic";
    }
    return "unknown";
}

namespace {

void check_shape(const ElementaryModule& e, const ModuleElement& x) {
    if (x.free_coords.size() != e.free_rank() || x.torsion_coords.size() != e.torsion().size()) {
        throw InputError("element shape (" + std::to_string(x.free_coords.size()) + " free, " +
                         std::to_string(x.torsion_coords.size()) + " torsion) does not match module " +
                         e.describe());
    }
}

// Coordinates of an element of E/ω_eE in the monomial basis T^0..T^{ℓ^e - 1}
// of each coordinate, free coordinates first.
class LevelLattice {
  public:
    LevelLattice(const ElementaryModule& e, unsigned level)
        : module_(e), omega_e_(omega(e.prime(), level)), width_(static_cast<std::size_t>(omega_e_.degree())) {}

    std::size_t rows() const { return width_ * module_.coordinate_count(); }

    IntPoly reduce(const IntPoly& p) const { return divmod_monic(p, omega_e_).second; }

    IntVector embed(const std::vector<IntPoly>& coords) const {
        IntVector v(rows());
        for (std::size_t c = 0; c < coords.size(); ++c) {
            IntPoly r = reduce(coords[c]);
            for (std::size_t j = 0; j < width_; ++j) v[c * width_ + j] = r.coeff(j);
        }
        return v;
    }

    // Columns spanning the image of ⊕ f_i Λ in E/ω_eE.
    IntColumns torsion_relations() const {
        IntColumns cols;
        const std::size_t base = module_.free_rank();
        for (std::size_t i = 0; i < module_.torsion().size(); ++i) {
            const std::size_t coord = base + i;
            IntPoly f;
            if (const auto* lp = std::get_if<LPower>(&module_.torsion()[i])) {
                f = IntPoly::constant(module_.prime().power(lp->exponent));
            } else {
                f = std::get<Distinguished>(module_.torsion()[i]).poly;
            }
            IntPoly shift = reduce(f);
            for (std::size_t j = 0; j < width_; ++j) {
                IntVector v(rows());
                for (std::size_t k = 0; k < width_; ++k) v[coord * width_ + k] = shift.coeff(k);
                cols.push_back(std::move(v));
                shift = reduce(shift.shifted(1));
            }
        }
        return cols;
    }

    ModuleElement to_element(const std::vector<IntPoly>& coords) const {
        std::vector<IntPoly> reduced;
        reduced.reserve(coords.size());
        for (const auto& c : coords) reduced.push_back(reduce(c));
        return ModuleElement::from_coordinates(module_, std::move(reduced));
    }

  private:
    const ElementaryModule& module_;
    IntPoly omega_e_;
    std::size_t width_;
};

}  // namespace

ValidationReport validate_descent(const ElementaryModule& e, const DescentDatum& d) {
    ValidationReport report;
    if (d.is_special() || d.generators().empty()) {
        report.message = d.is_special() ? "special case" : "empty descent module";
        return report;
    }
    for (std::size_t i = 0; i < d.generators().size(); ++i) {
        const auto& y = d.generators()[i];
        if (y.free_coords.size() != e.free_rank() || y.torsion_coords.size() != e.torsion().size()) {
            report.valid = false;
            report.offending_generator = i;
            report.message = "generator " + std::to_string(i) + " has " +
                             std::to_string(y.free_coords.size() + y.torsion_coords.size()) +
                             " coordinates, module has " + std::to_string(e.coordinate_count());
            return report;
        }
    }

    LevelLattice lattice(e, d.level());
    IntColumns span = lattice.torsion_relations();
    for (const auto& y : d.generators()) span.push_back(lattice.embed(y.coordinates()));

    for (std::size_t i = 0; i < d.generators().size(); ++i) {
        std::vector<IntPoly> ty = d.generators()[i].coordinates();
        for (auto& c : ty) c = c.shifted(1);
        if (!in_local_span(span, lattice.embed(ty), e.prime())) {
            report.valid = false;
            report.offending_generator = i;
            report.witness = lattice.to_element(ty);
            std::ostringstream os;
            os << "generator " << i << ": T*y is not in the span of Y + omega_" << d.level() << "E (witness";
            for (const auto& c : report.witness->coordinates()) os << " " << c.to_list_string();
            os << ")";
            report.message = os.str();
            return report;
        }
    }
    report.message = "Y + omega_" + std::to_string(d.level()) + "E is Lambda-stable";
    return report;
}

void require_valid(const ElementaryModule& e, const DescentDatum& d) {
    ValidationReport r = validate_descent(e, d);
    if (!r.valid) throw InputError("invalid descent datum: " + r.message);
}

CaseTag classify_case(const ElementaryModule& /*e*/, const DescentDatum& d) {
    if (d.is_special()) return CaseTag::Special;
    return d.generators().empty() ? CaseTag::Trivial : CaseTag::Generic;
}

ModuleElement canonicalize(const ElementaryModule& e, const ModuleElement& x) {
    check_shape(e, x);
    ModuleElement out = x;
    for (std::size_t i = 0; i < e.torsion().size(); ++i) {
        auto& coord = out.torsion_coords[i];
        if (const auto* lp = std::get_if<LPower>(&e.torsion()[i])) {
            const mpz_class m = e.prime().power(lp->exponent);
            std::vector<mpz_class> c = coord.coeffs();
            for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            coord = IntPoly(std::move(c));
        } else {
            coord = divmod_monic(coord, std::get<Distinguished>(e.torsion()[i]).poly).second;
        }
    }
    return out;
}

}  // namespace codescent
