#include "lump/ratfn.hpp"

#include <stdexcept>

namespace lump {

namespace {
ParamPoly poly_pow(const ParamPoly& p, unsigned e) {
    ParamPoly r = ParamPoly::constant(ParamScalar(FieldElem::one()), p.basis);
    for (unsigned k = 0; k < e; ++k) r *= p;
    return r;
}
}  // namespace

RationalFunction::RationalFunction(ParamPoly n, ParamPoly base, unsigned exp)
    : num(std::move(n)), den_base(std::move(base)), den_exp(exp) {
    if (den_base.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    if (den_exp == 0) den_base = ParamPoly::constant(ParamScalar(FieldElem::one()), num.basis);
}

ParamPoly RationalFunction::denominator() const { return poly_pow(den_base, den_exp); }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num = -r.num;
    return r;
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_exp == 0 && y.den_exp == 0)
        return RationalFunction(x.num + y.num);
    const RationalFunction& base_src = x.den_exp ? x : y;
    if (x.den_exp == 0 || y.den_exp == 0 || x.den_base == y.den_base) {
        const ParamPoly& b = base_src.den_base;
        unsigned e = std::max(x.den_exp, y.den_exp);
        ParamPoly n = x.num * poly_pow(b, e - x.den_exp) + y.num * poly_pow(b, e - y.den_exp);
        return RationalFunction(std::move(n), b, e);
    }
    // different bases: fall back to the plain product denominator
    ParamPoly dx = x.denominator(), dy = y.denominator();
    return RationalFunction(x.num * dy + y.num * dx, dx * dy, 1);
}

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) {
    return x + (-y);
}

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_exp == 0)
        return RationalFunction(x.num * y.num, y.den_base, y.den_exp);
    if (y.den_exp == 0 || x.den_base == y.den_base)
        return RationalFunction(x.num * y.num, x.den_base, x.den_exp + y.den_exp);
    return RationalFunction(x.num * y.num, x.denominator() * y.denominator(), 1);
}

RationalFunction RationalFunction::scaled(const ParamScalar& c) const {
    RationalFunction r = *this;
    r.num = r.num.scaled(c);
    return r;
}

RationalFunction RationalFunction::diff(Var v) const {
    if (den_exp == 0) return RationalFunction(num.diff(v));
    // d(n / b^e) = (n' b - e n b') / b^(e+1)
    ParamPoly n = num.diff(v) * den_base -
                  num.scaled(ParamScalar(FieldElem(rat(den_exp)))) * den_base.diff(v);
    return RationalFunction(std::move(n), den_base, den_exp + 1);
}

RationalFunction RationalFunction::diff_param(uint32_t sym) const {
    if (den_exp == 0) return RationalFunction(num.diff_param(sym));
    ParamPoly n = num.diff_param(sym) * den_base -
                  num.scaled(ParamScalar(FieldElem(rat(den_exp)))) * den_base.diff_param(sym);
    return RationalFunction(std::move(n), den_base, den_exp + 1);
}

RationalFunction RationalFunction::substitute_params(
    const std::map<uint32_t, ParamScalar>& bindings) const {
    ParamPoly b = den_base.substitute_params(bindings);
    if (b.is_zero()) throw std::invalid_argument("substitute_params: denominator vanished");
    return RationalFunction(num.substitute_params(bindings), std::move(b), den_exp);
}

std::complex<double> RationalFunction::eval(
    std::complex<double> xv, std::complex<double> yv,
    const std::map<uint32_t, std::complex<double>>& params) const {
    std::complex<double> d = 1.0;
    if (den_exp) d = std::pow(den_base.eval(xv, yv, params), (int)den_exp);
    return num.eval(xv, yv, params) / d;
}

bool ratfn_equal(const RationalFunction& r1, const RationalFunction& r2) {
    return (r1.num * r2.denominator() - r2.num * r1.denominator()).is_zero();
}

namespace {
void flatten(const ParamPoly& p, std::vector<std::pair<std::pair<unsigned, unsigned>, double>>& out) {
    ParamPoly q = p.basis == Basis::XY ? p : p.convert(Basis::XY);
    for (auto& [pq, c] : q.terms) {
        if (!c.is_constant())
            throw std::invalid_argument("CompiledRatFn: unresolved parameter symbols");
        FieldElem v = c.constant_value();
        if (v.c != 0 || v.d != 0)
            throw std::invalid_argument("CompiledRatFn: coefficient not real");
        out.push_back({pq, v.to_complex().real()});
    }
}
double ipow(double x, unsigned e) {
    double r = 1;
    for (; e; e >>= 1, x *= x)
        if (e & 1) r *= x;
    return r;
}
}  // namespace

CompiledRatFn::CompiledRatFn(const RationalFunction& r) : den_exp_(r.den_exp) {
    std::vector<std::pair<std::pair<unsigned, unsigned>, double>> t;
    flatten(r.num, t);
    for (auto& [pq, c] : t) num_.push_back({pq.first, pq.second, c});
    t.clear();
    flatten(r.den_base, t);
    for (auto& [pq, c] : t) den_.push_back({pq.first, pq.second, c});
}

double CompiledRatFn::operator()(double x, double y) const {
    double n = 0;
    for (auto& t : num_) n += t.c * ipow(x, t.p) * ipow(y, t.q);
    if (den_exp_ == 0) return n;
    double d = 0;
    for (auto& t : den_) d += t.c * ipow(x, t.p) * ipow(y, t.q);
    return n / ipow(d, den_exp_);
}

}  // namespace lump
