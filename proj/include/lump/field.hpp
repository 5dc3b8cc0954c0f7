#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lump {

// Exact rational scalar. GMP's mpq_class keeps the canonical form
// (gcd-reduced, positive denominator) after every operation.
using Rational = mpq_class;

inline Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// Element of the degree-4 field Q(i, sqrt(3)), stored on the fixed basis
/// {1, sqrt3, i, sqrt3*i}.  Equality of representations is equality of values.
class FieldElem {
  public:
    Rational a, b, c, d;  // a + b*sqrt3 + c*i + d*sqrt3*i

    FieldElem() : a(0), b(0), c(0), d(0) {}
    FieldElem(Rational ra) : a(std::move(ra)), b(0), c(0), d(0) {}
    FieldElem(long v) : a(v), b(0), c(0), d(0) {}
    FieldElem(Rational ra, Rational rb, Rational rc, Rational rd)
        : a(std::move(ra)), b(std::move(rb)), c(std::move(rc)), d(std::move(rd)) {}

    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(1); }
    static FieldElem i() { return FieldElem(0, 0, 1, 0); }
    static FieldElem sqrt3() { return FieldElem(0, 1, 0, 0); }
    static FieldElem sqrt3_i() { return FieldElem(0, 0, 0, 1); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool is_rational() const { return b == 0 && c == 0 && d == 0; }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    FieldElem operator-() const { return {-a, -b, -c, -d}; }

    // (a1 + b1 s + (c1 + d1 s) i)(a2 + b2 s + (c2 + d2 s) i), s^2 = 3, i^2 = -1
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        Rational ra = x.a * y.a + 3 * x.b * y.b - x.c * y.c - 3 * x.d * y.d;
        Rational rb = x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c;
        Rational rc = x.a * y.c + x.c * y.a + 3 * (x.b * y.d + x.d * y.b);
        Rational rd = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
        return {ra, rb, rc, rd};
    }

    FieldElem conj() const { return {a, b, -c, -d}; }  // i -> -i, fixes sqrt3

    FieldElem inv() const;
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inv(); }

    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }

    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    // total order for use as a map key; no arithmetic meaning
    friend bool operator<(const FieldElem& x, const FieldElem& y) {
        if (int s = cmp(x.a, y.a)) return s < 0;
        if (int s = cmp(x.b, y.b)) return s < 0;
        if (int s = cmp(x.c, y.c)) return s < 0;
        return cmp(x.d, y.d) < 0;
    }

    std::complex<double> to_complex() const;

    std::string str() const;
};

FieldElem pow(FieldElem x, unsigned long e);

}  // namespace lump
