#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "lump/scalar.hpp"

namespace lump {

enum class Basis { XY, ZZBAR };
enum class Var { X, Y, Z, ZBAR };

/// Bivariate polynomial over the parameter ring, in the (x,y) or (z,zbar)
/// basis.  Keys are exponent pairs; no stored zero terms.
class ParamPoly {
  public:
    Basis basis = Basis::XY;
    std::map<std::pair<unsigned, unsigned>, ParamScalar> terms;

    ParamPoly() = default;
    explicit ParamPoly(Basis b) : basis(b) {}

    static ParamPoly constant(ParamScalar c, Basis b = Basis::XY);
    static ParamPoly monomial(Basis b, unsigned p, unsigned q,
                              ParamScalar c = ParamScalar(FieldElem::one()));

    bool is_zero() const { return terms.empty(); }
    /// total degree; -1 is the sentinel for the zero polynomial
    int degree() const;

    ParamPoly convert(Basis target) const;

    ParamPoly operator-() const;
    friend ParamPoly operator+(const ParamPoly& x, const ParamPoly& y);
    friend ParamPoly operator-(const ParamPoly& x, const ParamPoly& y);
    friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y);
    ParamPoly& operator+=(const ParamPoly& y) { return *this = *this + y; }
    ParamPoly& operator-=(const ParamPoly& y) { return *this = *this - y; }
    ParamPoly& operator*=(const ParamPoly& y) { return *this = *this * y; }

    ParamPoly scaled(const ParamScalar& c) const;

    friend bool operator==(const ParamPoly& x, const ParamPoly& y);
    friend bool operator!=(const ParamPoly& x, const ParamPoly& y) { return !(x == y); }

    /// derivative in x, y, z or zbar, taken in the stored basis via the
    /// chain rules d_x = d_z + d_zb, d_y = i(d_z - d_zb), and their inverses
    ParamPoly diff(Var v) const;
    /// formal derivative with respect to a parameter symbol
    ParamPoly diff_param(uint32_t sym) const;

    /// exact substitution x -> x + dx, y -> y + dy
    ParamPoly shift(const FieldElem& dx, const FieldElem& dy) const;
    /// same with parameter-dependent displacements
    ParamPoly shift(const ParamScalar& dx, const ParamScalar& dy) const;

    /// substitute parameter symbols (may reference other symbols)
    ParamPoly substitute_params(const std::map<uint32_t, ParamScalar>& bindings) const;

    /// sum of terms of total degree j
    ParamPoly homogeneous_component(unsigned j) const;

    /// evaluate the two variables at parameter expressions
    ParamScalar eval_scalar(const ParamScalar& xv, const ParamScalar& yv) const;

    /// float evaluation; params bound to complex values
    std::complex<double> eval(std::complex<double> xv, std::complex<double> yv,
                              const std::map<uint32_t, std::complex<double>>& params = {}) const;

    /// true iff the evaluation on real (x,y) (with real parameters) is real:
    /// in the ZZBAR basis, coeff(p,q) == conj(coeff(q,p))
    bool is_real_valued() const;

    /// canonical text: terms sorted by (total degree desc, first exponent
    /// desc), "coeff * z^p * zb^q" resp. "coeff * x^i * y^j"
    std::string str() const;

    ParamScalar coeff(unsigned p, unsigned q) const;
};

/// parse the canonical textual form (also accepts simple inputs like "x^2+y^2+3")
ParamPoly parse_poly(const std::string& text);

}  // namespace lump
