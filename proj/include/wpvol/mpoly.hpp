#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "wpvol/rational.hpp"
#include "wpvol/symbols.hpp"

namespace wpvol {

/// Monomial: sparse exponent vector, pairs (symbol id, exponent) sorted by id,
/// all exponents > 0. The empty vector is the constant monomial.
using Monomial = std::vector<std::pair<uint32_t, uint32_t>>;

/// Lexicographic order on exponent vectors over the symbol universe.
bool monomial_lex_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_lex_less(a, b);
    }
};

/// Sparse multivariate polynomial over exact rationals: the universal
/// coefficient ring of the whole engine. Canonical invariants: no zero
/// coefficients are stored, monomials are kept sorted, and any M0*invM0
/// pair inside a monomial cancels on insertion. Values are immutable in
/// spirit: all arithmetic returns fresh polynomials.
class MPoly {
  public:
    std::map<Monomial, Rat, MonomialLess> terms;

    MPoly() = default;
    explicit MPoly(const Rat& c) {
        if (c != 0) terms.emplace(Monomial{}, c);
    }
    explicit MPoly(long c) : MPoly(Rat(c)) {}

    static MPoly variable(Symbol s, uint32_t exp = 1) {
        MPoly p;
        if (exp == 0) return MPoly(Rat(1));
        p.terms.emplace(Monomial{{s.id(), exp}}, Rat(1));
        return p;
    }
    static MPoly constant(const Rat& c) { return MPoly(c); }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
    }
    Rat constant_value() const {
        auto it = terms.find(Monomial{});
        return it == terms.end() ? Rat(0) : it->second;
    }

    /// Adds c * mono, canonicalizing (M0/invM0 reduction, zero removal).
    void add_term(Monomial mono, const Rat& c);

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const Rat& c) const;
    MPoly pow(uint32_t e) const;

    /// Degree in one symbol; 0 for absent symbols.
    uint32_t degree_in(Symbol s) const;
    /// Total degree over symbols of one kind.
    uint32_t total_degree_kind(SymKind k) const;
    /// Largest index of a given kind appearing anywhere (-1 if none).
    int max_index_of_kind(SymKind k) const;

    bool depends_on(Symbol s) const { return degree_in(s) > 0; }
};

/// Exact simultaneous substitution symbol -> polynomial. Symbols not in the
/// map are left alone. Single pass, so the assignment map is applied once.
MPoly subst(const MPoly& p, const std::map<Symbol, MPoly>& assignments);

/// Renames symbols (used for boundary-slot relabeling). Must be injective on
/// the symbols present.
MPoly rename_symbols(const MPoly& p, const std::map<uint32_t, uint32_t>& idmap);

/// \int_0^{L_i} x * p(x^2, ...) dx with b_i = L_i^2: maps b_i^k -> b_i^{k+1}/(2k+2).
MPoly integrate_even(const MPoly& p, uint32_t boundary_index);

/// Inverse of integrate_even: F -> F'(L)/L, i.e. b_i^k -> 2k b_i^{k-1}.
MPoly differentiate_even(const MPoly& p, uint32_t boundary_index);

/// d/ds where s is any symbol.
MPoly derivative(const MPoly& p, Symbol s);

/// Coefficients of p as a polynomial in one symbol: result[k] has the symbol
/// removed. Missing exponents are absent from the map.
std::map<uint32_t, MPoly> coefficients_in(const MPoly& p, Symbol s);

/// Coefficient of s^k in p.
MPoly coefficient_of(const MPoly& p, Symbol s, uint32_t k);

/// Numeric evaluation; the callback supplies a value per symbol.
double eval_double(const MPoly& p, const std::function<double(Symbol)>& value_of);

std::string to_string(const MPoly& p);

}  // namespace wpvol
