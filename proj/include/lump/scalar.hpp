#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lump/field.hpp"

namespace lump {

/// Interned parameter symbols (alpha, beta, A, B, sigma, gamma, solver
/// unknowns, ...).  Ids are stable within a process.
namespace symbols {
uint32_t intern(const std::string& name);
const std::string& name(uint32_t id);

uint32_t alpha();
uint32_t beta();
uint32_t A();
uint32_t B();
uint32_t sigma();
uint32_t gamma();
}  // namespace symbols

/// Exponent multi-index over parameter symbols, sorted by symbol id,
/// no zero exponents.
using Monomial = std::vector<std::pair<uint32_t, uint32_t>>;

Monomial mono_mul(const Monomial& x, const Monomial& y);

/// Sparse multivariate polynomial in the parameter symbols with FieldElem
/// coefficients.  No explicit zero coefficients are stored.
class ParamScalar {
  public:
    std::map<Monomial, FieldElem> terms;

    ParamScalar() = default;
    ParamScalar(FieldElem c) {
        if (!c.is_zero()) terms.emplace(Monomial{}, std::move(c));
    }
    ParamScalar(long v) : ParamScalar(FieldElem(v)) {}

    static ParamScalar symbol(uint32_t id, uint32_t exp = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    // the value, if constant (zero counts as constant 0)
    FieldElem constant_value() const;

    ParamScalar operator-() const;
    friend ParamScalar operator+(const ParamScalar& x, const ParamScalar& y);
    friend ParamScalar operator-(const ParamScalar& x, const ParamScalar& y);
    friend ParamScalar operator*(const ParamScalar& x, const ParamScalar& y);
    ParamScalar& operator+=(const ParamScalar& y) { return *this = *this + y; }
    ParamScalar& operator-=(const ParamScalar& y) { return *this = *this - y; }
    ParamScalar& operator*=(const ParamScalar& y) { return *this = *this * y; }

    friend bool operator==(const ParamScalar& x, const ParamScalar& y) {
        return x.terms == y.terms;
    }
    friend bool operator!=(const ParamScalar& x, const ParamScalar& y) { return !(x == y); }
    friend bool operator<(const ParamScalar& x, const ParamScalar& y) {
        return x.terms < y.terms;
    }

    /// i -> -i on every coefficient (parameters are treated as real symbols).
    ParamScalar conj() const;

    /// formal derivative with respect to a parameter symbol
    ParamScalar diff(uint32_t sym) const;

    /// substitute one symbol by a polynomial expression
    ParamScalar substitute(uint32_t sym, const ParamScalar& value) const;
    /// simultaneous substitution; symbols absent from the map are kept
    ParamScalar substitute(const std::map<uint32_t, ParamScalar>& bindings) const;

    bool depends_on(uint32_t sym) const;
    /// collect symbols occurring in this scalar
    std::vector<uint32_t> symbols_used() const;

    /// coefficient of sym^1 plus the requirement that sym occurs linearly;
    /// throws if sym occurs with exponent > 1
    ParamScalar linear_coeff(uint32_t sym) const;
    /// all terms not containing sym
    ParamScalar without(uint32_t sym) const;

    ParamScalar pow(unsigned long e) const;

    /// exact quotient *this / d in the parameter polynomial ring, or nullopt
    /// if d does not divide *this
    std::optional<ParamScalar> div_exact(const ParamScalar& d) const;

    std::complex<double> eval(const std::map<uint32_t, std::complex<double>>& vals) const;

    std::string str() const;
};

}  // namespace lump
