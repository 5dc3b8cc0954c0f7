#include "lump/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lump {

namespace {

ParamScalar fe(const FieldElem& c) { return ParamScalar(c); }

// binomial coefficients C(n,k) as FieldElem
FieldElem binom(unsigned n, unsigned k) {
    Rational r(1);
    for (unsigned j = 0; j < k; ++j) r = r * rat(n - j) / rat(j + 1);
    return FieldElem(r);
}

}  // namespace

ParamPoly ParamPoly::constant(ParamScalar c, Basis b) {
    ParamPoly p(b);
    if (!c.is_zero()) p.terms.emplace(std::make_pair(0u, 0u), std::move(c));
    return p;
}

ParamPoly ParamPoly::monomial(Basis b, unsigned p, unsigned q, ParamScalar c) {
    ParamPoly out(b);
    if (!c.is_zero()) out.terms.emplace(std::make_pair(p, q), std::move(c));
    return out;
}

int ParamPoly::degree() const {
    int d = -1;
    for (auto& [pq, c] : terms) d = std::max(d, int(pq.first + pq.second));
    return d;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r(basis);
    for (auto& [pq, c] : terms) r.terms.emplace(pq, -c);
    return r;
}

ParamPoly operator+(const ParamPoly& x, const ParamPoly& y) {
    if (x.basis != y.basis) return x + y.convert(x.basis);
    ParamPoly r = x;
    for (auto& [pq, c] : y.terms) {
        auto it = r.terms.find(pq);
        if (it == r.terms.end()) {
            r.terms.emplace(pq, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms.erase(it);
        }
    }
    return r;
}

ParamPoly operator-(const ParamPoly& x, const ParamPoly& y) { return x + (-y); }

ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
    if (x.basis != y.basis) return x * y.convert(x.basis);
    ParamPoly r(x.basis);
    for (auto& [px, cx] : x.terms)
        for (auto& [py, cy] : y.terms) {
            ParamScalar c = cx * cy;
            if (c.is_zero()) continue;
            auto key = std::make_pair(px.first + py.first, px.second + py.second);
            auto it = r.terms.find(key);
            if (it == r.terms.end()) {
                r.terms.emplace(key, std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

ParamPoly ParamPoly::scaled(const ParamScalar& c) const {
    ParamPoly r(basis);
    if (c.is_zero()) return r;
    for (auto& [pq, t] : terms) {
        ParamScalar v = t * c;
        if (!v.is_zero()) r.terms.emplace(pq, std::move(v));
    }
    return r;
}

bool operator==(const ParamPoly& x, const ParamPoly& y) {
    if (x.basis != y.basis) return x == y.convert(x.basis);
    return x.terms == y.terms;
}

// (u + a)^m (v + b)^n expanded over exponents of u,v; a,b are scalars
static ParamPoly expand_binomials(Basis basis, unsigned m, unsigned n,
                                  const ParamScalar& a, const ParamScalar& b,
                                  const ParamScalar& coeff) {
    ParamPoly out(basis);
    std::vector<ParamScalar> apow(m + 1), bpow(n + 1);
    apow[0] = ParamScalar(FieldElem::one());
    for (unsigned k = 1; k <= m; ++k) apow[k] = apow[k - 1] * a;
    bpow[0] = ParamScalar(FieldElem::one());
    for (unsigned k = 1; k <= n; ++k) bpow[k] = bpow[k - 1] * b;
    for (unsigned i = 0; i <= m; ++i)
        for (unsigned j = 0; j <= n; ++j) {
            ParamScalar c = coeff * fe(binom(m, i) * binom(n, j)) * apow[m - i] * bpow[n - j];
            if (c.is_zero()) continue;
            out += ParamPoly::monomial(basis, i, j, c);
        }
    return out;
}

ParamPoly ParamPoly::convert(Basis target) const {
    if (target == basis) return *this;
    ParamPoly out(target);
    const FieldElem I = FieldElem::i();
    const FieldElem half(rat(1, 2));
    for (auto& [pq, c] : terms) {
        unsigned p = pq.first, q = pq.second;
        ParamPoly term(target);
        if (basis == Basis::ZZBAR) {
            // z = x + i y, zb = x - i y
            term = ParamPoly::constant(c, target);
            ParamPoly zf(target), zbf(target);
            zf += ParamPoly::monomial(target, 1, 0);
            zf += ParamPoly::monomial(target, 0, 1, fe(I));
            zbf += ParamPoly::monomial(target, 1, 0);
            zbf += ParamPoly::monomial(target, 0, 1, fe(-I));
            for (unsigned k = 0; k < p; ++k) term *= zf;
            for (unsigned k = 0; k < q; ++k) term *= zbf;
        } else {
            // x = (z + zb)/2, y = -i/2 (z - zb)
            term = ParamPoly::constant(c, target);
            ParamPoly xf(target), yf(target);
            xf += ParamPoly::monomial(target, 1, 0, fe(FieldElem(half)));
            xf += ParamPoly::monomial(target, 0, 1, fe(FieldElem(half)));
            yf += ParamPoly::monomial(target, 1, 0, fe(-I * FieldElem(half)));
            yf += ParamPoly::monomial(target, 0, 1, fe(I * FieldElem(half)));
            for (unsigned k = 0; k < p; ++k) term *= xf;
            for (unsigned k = 0; k < q; ++k) term *= yf;
        }
        out += term;
    }
    return out;
}

ParamPoly ParamPoly::diff(Var v) const {
    auto native = [&](bool first) {
        ParamPoly r(basis);
        for (auto& [pq, c] : terms) {
            unsigned p = pq.first, q = pq.second;
            if (first && p > 0) {
                ParamScalar nc = c * fe(FieldElem(rat(p)));
                if (!nc.is_zero()) r += ParamPoly::monomial(basis, p - 1, q, nc);
            }
            if (!first && q > 0) {
                ParamScalar nc = c * fe(FieldElem(rat(q)));
                if (!nc.is_zero()) r += ParamPoly::monomial(basis, p, q - 1, nc);
            }
        }
        return r;
    };
    const FieldElem I = FieldElem::i();
    const FieldElem half(rat(1, 2));
    if (basis == Basis::XY) {
        switch (v) {
            case Var::X: return native(true);
            case Var::Y: return native(false);
            case Var::Z:  // (d_x - i d_y)/2
                return (native(true).scaled(fe(half)) + native(false).scaled(fe(-I * half)));
            case Var::ZBAR:  // (d_x + i d_y)/2
                return (native(true).scaled(fe(half)) + native(false).scaled(fe(I * half)));
        }
    } else {
        switch (v) {
            case Var::Z: return native(true);
            case Var::ZBAR: return native(false);
            case Var::X:  // d_z + d_zb
                return native(true) + native(false);
            case Var::Y:  // i (d_z - d_zb)
                return (native(true) - native(false)).scaled(fe(I));
        }
    }
    throw std::logic_error("unreachable");
}

ParamPoly ParamPoly::diff_param(uint32_t sym) const {
    ParamPoly r(basis);
    for (auto& [pq, c] : terms) {
        ParamScalar dc = c.diff(sym);
        if (!dc.is_zero()) r.terms.emplace(pq, std::move(dc));
    }
    return r;
}

ParamPoly ParamPoly::shift(const FieldElem& dx, const FieldElem& dy) const {
    return shift(ParamScalar(dx), ParamScalar(dy));
}

ParamPoly ParamPoly::shift(const ParamScalar& dx, const ParamScalar& dy) const {
    ParamScalar d1 = dx, d2 = dy;
    if (basis == Basis::ZZBAR) {
        const ParamScalar I{FieldElem::i()};
        d1 = dx + I * dy;   // z offset
        d2 = dx - I * dy;   // zb offset
    }
    ParamPoly out(basis);
    for (auto& [pq, c] : terms)
        out += expand_binomials(basis, pq.first, pq.second, d1, d2, c);
    return out;
}

ParamPoly ParamPoly::substitute_params(const std::map<uint32_t, ParamScalar>& bindings) const {
    // reject cyclic bindings: a bound symbol may not appear in any bound value
    // (the no-op binding sym -> sym is allowed)
    for (auto& [sym, val] : bindings) {
        if (val == ParamScalar::symbol(sym)) continue;
        for (uint32_t used : val.symbols_used()) {
            auto it = bindings.find(used);
            if (it != bindings.end() && it->second != ParamScalar::symbol(used))
                throw std::invalid_argument("substitute_params: cyclic binding through " +
                                            symbols::name(used));
        }
    }
    ParamPoly r(basis);
    for (auto& [pq, c] : terms) {
        ParamScalar nc = c.substitute(bindings);
        if (!nc.is_zero()) r.terms.emplace(pq, std::move(nc));
    }
    return r;
}

ParamPoly ParamPoly::homogeneous_component(unsigned j) const {
    ParamPoly r(basis);
    for (auto& [pq, c] : terms)
        if (pq.first + pq.second == j) r.terms.emplace(pq, c);
    return r;
}

ParamScalar ParamPoly::eval_scalar(const ParamScalar& xv, const ParamScalar& yv) const {
    ParamScalar v1 = xv, v2 = yv;
    if (basis == Basis::ZZBAR) {
        const ParamScalar I{FieldElem::i()};
        v1 = xv + I * yv;
        v2 = xv - I * yv;
    }
    ParamScalar out;
    for (auto& [pq, c] : terms)
        out += c * v1.pow(pq.first) * v2.pow(pq.second);
    return out;
}

std::complex<double> ParamPoly::eval(
    std::complex<double> xv, std::complex<double> yv,
    const std::map<uint32_t, std::complex<double>>& params) const {
    std::complex<double> v1 = xv, v2 = yv;
    if (basis == Basis::ZZBAR) {
        v1 = xv + std::complex<double>(0, 1) * yv;
        v2 = xv - std::complex<double>(0, 1) * yv;
    }
    std::complex<double> out = 0;
    for (auto& [pq, c] : terms)
        out += c.eval(params) * std::pow(v1, (int)pq.first) * std::pow(v2, (int)pq.second);
    return out;
}

bool ParamPoly::is_real_valued() const {
    ParamPoly z = convert(Basis::ZZBAR);
    for (auto& [pq, c] : z.terms) {
        auto it = z.terms.find({pq.second, pq.first});
        if (it == z.terms.end()) return false;
        if (it->second.conj() != c) return false;
    }
    return true;
}

ParamScalar ParamPoly::coeff(unsigned p, unsigned q) const {
    auto it = terms.find({p, q});
    return it == terms.end() ? ParamScalar() : it->second;
}

std::string ParamPoly::str() const {
    if (terms.empty()) return "0";
    std::vector<const std::pair<const std::pair<unsigned, unsigned>, ParamScalar>*> order;
    for (auto& t : terms) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        unsigned da = a->first.first + a->first.second;
        unsigned db = b->first.first + b->first.second;
        if (da != db) return da > db;
        return a->first.first > b->first.first;
    });
    const char* v1 = basis == Basis::XY ? "x" : "z";
    const char* v2 = basis == Basis::XY ? "y" : "zb";
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        if (!first) os << " + ";
        first = false;
        std::string cs = t->second.str();
        if (cs.find(' ') != std::string::npos || cs.find('*') != std::string::npos)
            cs = "(" + cs + ")";
        os << cs;
        auto put = [&](const char* v, unsigned e) {
            if (e == 0) return;
            os << "*" << v;
            if (e > 1) os << "^" << e;
        };
        put(v1, t->first.first);
        put(v2, t->first.second);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// parser for the canonical textual form
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("poly parse error at position " + std::to_string(pos) +
                                    ": " + msg);
    }

    ParamPoly expr() {
        ParamPoly r = term();
        for (;;) {
            skip();
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }

    ParamPoly term() {
        ParamPoly r = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                r *= factor();
            } else if (eat('/')) {
                ParamPoly d = factor();
                if (d.terms.size() != 1 || d.terms.begin()->first != std::make_pair(0u, 0u))
                    fail("division only by constants");
                ParamScalar c = d.terms.begin()->second;
                if (!c.is_constant()) fail("division only by field constants");
                r = r.scaled(ParamScalar(c.constant_value().inv()));
            } else {
                return r;
            }
        }
    }

    ParamPoly factor() {
        skip();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        ParamPoly base = atom();
        skip();
        if (eat('^')) {
            long e = integer();
            if (e < 0) fail("negative exponent");
            ParamPoly r = ParamPoly::constant(ParamScalar(FieldElem::one()), base.basis);
            for (long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }

    long integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    ParamPoly atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            ParamPoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit((unsigned char)s[pos])) {
            long num = integer();
            return ParamPoly::constant(ParamScalar(FieldElem(rat(num))));
        }
        if (std::isalpha((unsigned char)s[pos]) || s[pos] == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            std::string id = s.substr(start, pos - start);
            if (id == "x") return ParamPoly::monomial(Basis::XY, 1, 0);
            if (id == "y") return ParamPoly::monomial(Basis::XY, 0, 1);
            if (id == "z") return ParamPoly::monomial(Basis::ZZBAR, 1, 0);
            if (id == "zb") return ParamPoly::monomial(Basis::ZZBAR, 0, 1);
            if (id == "i") return ParamPoly::constant(ParamScalar(FieldElem::i()));
            if (id == "s3") return ParamPoly::constant(ParamScalar(FieldElem::sqrt3()));
            if (id == "s3i") return ParamPoly::constant(ParamScalar(FieldElem::sqrt3_i()));
            return ParamPoly::constant(ParamScalar::symbol(symbols::intern(id)));
        }
        fail("unexpected character");
    }
};

}  // namespace

ParamPoly parse_poly(const std::string& text) {
    Parser p(text);
    ParamPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace lump
