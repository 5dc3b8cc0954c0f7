#pragma once

#include "lump/poly.hpp"

namespace lump {

/// Rational function num / base^exp.  Denominators in this codebase are
/// always powers of a single polynomial (tau^2, |z|^2 powers, ...), and
/// keeping the base explicit stops differentiation from squaring the
/// denominator at every step.  Never gcd-reduced; equality is tested by
/// cross-multiplication.
class RationalFunction {
  public:
    ParamPoly num;
    ParamPoly den_base;   // must be nonzero
    unsigned den_exp = 0; // denominator = den_base^den_exp

    RationalFunction() : num(ParamPoly::constant(ParamScalar())), den_base(ParamPoly::constant(ParamScalar(FieldElem::one()))) {}
    explicit RationalFunction(ParamPoly n)
        : num(std::move(n)), den_base(ParamPoly::constant(ParamScalar(FieldElem::one()), num.basis)), den_exp(0) {}
    RationalFunction(ParamPoly n, ParamPoly base, unsigned exp);

    ParamPoly denominator() const;  // expands base^exp

    bool is_zero() const { return num.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& y) { return *this = *this + y; }
    RationalFunction& operator-=(const RationalFunction& y) { return *this = *this - y; }
    RationalFunction& operator*=(const RationalFunction& y) { return *this = *this * y; }

    RationalFunction scaled(const ParamScalar& c) const;

    RationalFunction diff(Var v) const;
    RationalFunction diff_param(uint32_t sym) const;

    RationalFunction substitute_params(const std::map<uint32_t, ParamScalar>& bindings) const;

    std::complex<double> eval(std::complex<double> xv, std::complex<double> yv,
                              const std::map<uint32_t, std::complex<double>>& params = {}) const;
};

/// num1*den2 - num2*den1 == 0, exactly
bool ratfn_equal(const RationalFunction& r1, const RationalFunction& r2);

/// Flattened real-arithmetic evaluator for a parameter-free rational function
/// that is real valued on the real plane.  Much faster than eval() inside
/// quadrature and grid loops.
class CompiledRatFn {
  public:
    explicit CompiledRatFn(const RationalFunction& r);
    double operator()(double x, double y) const;

  private:
    struct Term {
        unsigned p, q;
        double c;
    };
    std::vector<Term> num_, den_;
    unsigned den_exp_;
};

}  // namespace lump
