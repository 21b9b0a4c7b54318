#ifndef CODESCENT_MODULE_HPP
#define CODESCENT_MODULE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "codescent/poly.hpp"

namespace codescent {

/// Summand Λ/(ℓ^m), m ≥ 1.
struct LPower {
    unsigned exponent;
    friend bool operator==(const LPower&, const LPower&) = default;
};

/// Summand Λ/(P) with P distinguished of degree ≥ 1.
struct Distinguished {
    IntPoly poly;
    friend bool operator==(const Distinguished&, const Distinguished&) = default;
};

using TorsionFactor = std::variant<LPower, Distinguished>;

/// Elementary Λ-module Λ^ρ ⊕ ⊕_i Λ/(f_i).
///
/// Coordinates are numbered free summands first, then torsion summands in
/// the order given.
class ElementaryModule {
  public:
    ElementaryModule(Prime ell, std::size_t free_rank, std::vector<TorsionFactor> torsion = {});

    const Prime& prime() const noexcept { return ell_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<TorsionFactor>& torsion() const noexcept { return torsion_; }
    std::size_t coordinate_count() const noexcept { return free_rank_ + torsion_.size(); }
    bool is_zero() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

    std::string describe() const;

    friend bool operator==(const ElementaryModule&, const ElementaryModule&) = default;

  private:
    Prime ell_;
    std::size_t free_rank_;
    std::vector<TorsionFactor> torsion_;
};

/// An element of an elementary module, one polynomial per coordinate.
struct ModuleElement {
    std::vector<IntPoly> free_coords;
    std::vector<IntPoly> torsion_coords;

    /// Element of a module with the given shape; coordinates taken in order
    /// (free first), missing trailing coordinates are zero.
    static ModuleElement from_coordinates(const ElementaryModule& e, std::vector<IntPoly> coords);
    static ModuleElement zero(const ElementaryModule& e);

    /// All coordinates, free first.
    std::vector<IntPoly> coordinates() const;
    bool is_zero() const;

    friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

/// Codescent data: the special case, or level e with descent generators.
class DescentDatum {
  public:
    static DescentDatum special() { return DescentDatum(); }
    static DescentDatum generic(unsigned level, std::vector<ModuleElement> generators = {}) {
        DescentDatum d;
        d.special_ = false;
        d.level_ = level;
        d.generators_ = std::move(generators);
        return d;
    }

    bool is_special() const noexcept { return special_; }
    bool is_generic() const noexcept { return !special_; }
    /// The level e; 0 for the special case.
    unsigned level() const noexcept { return level_; }
    const std::vector<ModuleElement>& generators() const noexcept { return generators_; }

    friend bool operator==(const DescentDatum&, const DescentDatum&) = default;

  private:
    DescentDatum() = default;

    bool special_ = true;
    unsigned level_ = 0;
    std::vector<ModuleElement> generators_;
};

enum class CaseTag { Special, Trivial, Generic };

std::string to_string(CaseTag tag);

struct ValidationReport {
    bool valid = true;
    std::optional<std::size_t> offending_generator;
    /// T·y reduced mod ω_e for the offending generator y.
    std::optional<ModuleElement> witness;
    std::string message;
};

/// Checks that Y + ω_e E is Λ-stable: inside E/ω_eE the ℓ-local span of the
/// generator images must contain T·y for every generator y.
ValidationReport validate_descent(const ElementaryModule& e, const DescentDatum& d);

/// Throws InputError carrying the report message when validation fails.
void require_valid(const ElementaryModule& e, const DescentDatum& d);

CaseTag classify_case(const ElementaryModule& e, const DescentDatum& d);

/// Reduces each distinguished torsion coordinate modulo its polynomial and
/// each ℓ-power torsion coordinate's coefficients into [0, ℓ^m). Free
/// coordinates are untouched.
ModuleElement canonicalize(const ElementaryModule& e, const ModuleElement& x);

}  // namespace codescent

#endif  // CODESCENT_MODULE_HPP
