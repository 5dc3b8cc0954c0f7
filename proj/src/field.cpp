#include "lump/field.hpp"

#include <cmath>
#include <sstream>

namespace lump {

FieldElem FieldElem::inv() const {
    if (is_zero()) throw std::domain_error("FieldElem: inversion of zero");
    // x * conj_i(x) = p^2 + q^2 lies in Q(sqrt3); then invert there.
    FieldElem n = *this * this->conj();  // n.c == n.d == 0
    Rational den = n.a * n.a - 3 * n.b * n.b;
    if (den == 0) throw std::domain_error("FieldElem: inversion failed (norm zero)");
    // (n.a - n.b sqrt3) / den is the inverse of n in Q(sqrt3)
    FieldElem ninv(n.a / den, -n.b / den, 0, 0);
    return this->conj() * ninv;
}

std::complex<double> FieldElem::to_complex() const {
    static const double s3 = std::sqrt(3.0);
    double re = a.get_d() + b.get_d() * s3;
    double im = c.get_d() + d.get_d() * s3;
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::range_error("FieldElem: overflow converting to double");
    return {re, im};
}

FieldElem pow(FieldElem x, unsigned long e) {
    FieldElem r = FieldElem::one();
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

namespace {
std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;  // gmp prints "p" or "p/q"
    return os.str();
}
}  // namespace

// "a + b*s3 + c*i + d*s3i" with zero components omitted; plain "0" for zero.
std::string FieldElem::str() const {
    static const char* units[4] = {"", "*s3", "*i", "*s3i"};
    const Rational* comps[4] = {&a, &b, &c, &d};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (*comps[k] == 0) continue;
        Rational v = *comps[k];
        if (out.empty()) {
            if (v < 0) { out += "-"; v = -v; }
        } else {
            out += (v < 0) ? " - " : " + ";
            if (v < 0) v = -v;
        }
        out += rat_str(v) + units[k];
    }
    return out.empty() ? "0" : out;
}

}  // namespace lump
