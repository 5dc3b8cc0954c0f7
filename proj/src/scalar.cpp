#include "lump/scalar.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lump {

namespace symbols {

namespace {
std::vector<std::string>& table() {
    static std::vector<std::string> t;
    return t;
}
}  // namespace

uint32_t intern(const std::string& name) {
    auto& t = table();
    for (uint32_t k = 0; k < t.size(); ++k)
        if (t[k] == name) return k;
    t.push_back(name);
    return static_cast<uint32_t>(t.size() - 1);
}

const std::string& name(uint32_t id) { return table().at(id); }

uint32_t alpha() { static uint32_t id = intern("alpha"); return id; }
uint32_t beta()  { static uint32_t id = intern("beta"); return id; }
uint32_t A()     { static uint32_t id = intern("A"); return id; }
uint32_t B()     { static uint32_t id = intern("B"); return id; }
uint32_t sigma() { static uint32_t id = intern("sigma"); return id; }
uint32_t gamma() { static uint32_t id = intern("gamma"); return id; }

}  // namespace symbols

Monomial mono_mul(const Monomial& x, const Monomial& y) {
    Monomial out;
    out.reserve(x.size() + y.size());
    auto ix = x.begin(), iy = y.begin();
    while (ix != x.end() || iy != y.end()) {
        if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
            out.push_back(*ix++);
        } else if (ix == x.end() || iy->first < ix->first) {
            out.push_back(*iy++);
        } else {
            out.emplace_back(ix->first, ix->second + iy->second);
            ++ix, ++iy;
        }
    }
    return out;
}

ParamScalar ParamScalar::symbol(uint32_t id, uint32_t exp) {
    ParamScalar s;
    if (exp == 0) return ParamScalar(FieldElem::one());
    s.terms.emplace(Monomial{{id, exp}}, FieldElem::one());
    return s;
}

bool ParamScalar::is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
}

FieldElem ParamScalar::constant_value() const {
    if (terms.empty()) return FieldElem::zero();
    if (!is_constant()) throw std::logic_error("ParamScalar: not a constant");
    return terms.begin()->second;
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar r;
    for (auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
}

ParamScalar operator+(const ParamScalar& x, const ParamScalar& y) {
    ParamScalar r = x;
    for (auto& [m, c] : y.terms) {
        auto it = r.terms.find(m);
        if (it == r.terms.end()) {
            r.terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms.erase(it);
        }
    }
    return r;
}

ParamScalar operator-(const ParamScalar& x, const ParamScalar& y) { return x + (-y); }

ParamScalar operator*(const ParamScalar& x, const ParamScalar& y) {
    ParamScalar r;
    for (auto& [mx, cx] : x.terms)
        for (auto& [my, cy] : y.terms) {
            FieldElem c = cx * cy;
            if (c.is_zero()) continue;
            Monomial m = mono_mul(mx, my);
            auto it = r.terms.find(m);
            if (it == r.terms.end()) {
                r.terms.emplace(std::move(m), std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

ParamScalar ParamScalar::conj() const {
    ParamScalar r;
    for (auto& [m, c] : terms) r.terms.emplace(m, c.conj());
    return r;
}

ParamScalar ParamScalar::diff(uint32_t sym) const {
    ParamScalar r;
    for (auto& [m, c] : terms) {
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k].first != sym) continue;
            Monomial dm = m;
            FieldElem dc = c * FieldElem(rat(m[k].second));
            if (dm[k].second == 1)
                dm.erase(dm.begin() + k);
            else
                dm[k].second -= 1;
            r += [&] {
                ParamScalar t;
                t.terms.emplace(std::move(dm), std::move(dc));
                return t;
            }();
            break;
        }
    }
    return r;
}

ParamScalar ParamScalar::substitute(uint32_t sym, const ParamScalar& value) const {
    std::map<uint32_t, ParamScalar> b{{sym, value}};
    return substitute(b);
}

ParamScalar ParamScalar::substitute(const std::map<uint32_t, ParamScalar>& bindings) const {
    ParamScalar r;
    for (auto& [m, c] : terms) {
        ParamScalar t{c};
        for (auto& [sym, exp] : m) {
            auto it = bindings.find(sym);
            if (it == bindings.end()) {
                t *= ParamScalar::symbol(sym, exp);
            } else {
                t *= it->second.pow(exp);
            }
        }
        r += t;
    }
    return r;
}

bool ParamScalar::depends_on(uint32_t sym) const {
    for (auto& [m, c] : terms)
        for (auto& [s, e] : m)
            if (s == sym) return true;
    return false;
}

std::vector<uint32_t> ParamScalar::symbols_used() const {
    std::set<uint32_t> s;
    for (auto& [m, c] : terms)
        for (auto& [sym, e] : m) s.insert(sym);
    return {s.begin(), s.end()};
}

ParamScalar ParamScalar::linear_coeff(uint32_t sym) const {
    ParamScalar r;
    for (auto& [m, c] : terms) {
        for (auto& [s, e] : m) {
            if (s != sym) continue;
            if (e > 1) throw std::logic_error("ParamScalar: symbol occurs nonlinearly");
            Monomial rest;
            for (auto& p : m)
                if (p.first != sym) rest.push_back(p);
            ParamScalar t;
            t.terms.emplace(std::move(rest), c);
            r += t;
        }
    }
    return r;
}

ParamScalar ParamScalar::without(uint32_t sym) const {
    ParamScalar r;
    for (auto& [m, c] : terms) {
        bool has = false;
        for (auto& [s, e] : m)
            if (s == sym) has = true;
        if (!has) r.terms.emplace(m, c);
    }
    return r;
}

ParamScalar ParamScalar::pow(unsigned long e) const {
    ParamScalar r{FieldElem::one()}, b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::complex<double> ParamScalar::eval(
    const std::map<uint32_t, std::complex<double>>& vals) const {
    std::complex<double> out = 0;
    for (auto& [m, c] : terms) {
        std::complex<double> t = c.to_complex();
        for (auto& [sym, exp] : m) {
            auto it = vals.find(sym);
            if (it == vals.end())
                throw std::invalid_argument("ParamScalar::eval: unbound symbol " +
                                            symbols::name(sym));
            t *= std::pow(it->second, static_cast<int>(exp));
        }
        out += t;
    }
    return out;
}

// Terms ordered by (total degree desc, monomial lex), coefficients in
// FieldElem textual form; parenthesized unless a bare constant.
std::string ParamScalar::str() const {
    if (terms.empty()) return "0";
    std::vector<const std::pair<const Monomial, FieldElem>*> order;
    for (auto& t : terms) order.push_back(&t);
    auto deg = [](const Monomial& m) {
        uint32_t d = 0;
        for (auto& [s, e] : m) d += e;
        return d;
    };
    std::sort(order.begin(), order.end(), [&](auto* x, auto* y) {
        uint32_t dx = deg(x->first), dy = deg(y->first);
        if (dx != dy) return dx > dy;
        return x->first < y->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        if (!first) os << " + ";
        first = false;
        std::string cs = t->second.str();
        bool needs_paren = cs.find(' ') != std::string::npos;
        if (t->first.empty()) {
            os << (needs_paren ? "(" + cs + ")" : cs);
            continue;
        }
        os << (needs_paren ? "(" + cs + ")" : cs);
        for (auto& [sym, exp] : t->first) {
            os << "*" << symbols::name(sym);
            if (exp > 1) os << "^" << exp;
        }
    }
    return os.str();
}

namespace {

unsigned mono_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto& [s, e] : m) d += e;
    return d;
}

// graded lexicographic order (a genuine monomial order, unlike the raw map
// key order, which is what the division loop needs to terminate)
bool mono_less(const Monomial& x, const Monomial& y) {
    unsigned dx = mono_degree(x), dy = mono_degree(y);
    if (dx != dy) return dx < dy;
    auto ix = x.begin(), iy = y.begin();
    while (ix != x.end() && iy != y.end()) {
        if (ix->first != iy->first) return ix->first > iy->first;  // missing var = exp 0
        if (ix->second != iy->second) return ix->second < iy->second;
        ++ix, ++iy;
    }
    return false;  // equal degrees and common prefix exhausted together
}

// x / y componentwise, or nullopt if some exponent would go negative
std::optional<Monomial> mono_div(const Monomial& x, const Monomial& y) {
    Monomial out;
    auto ix = x.begin();
    for (auto& [s, e] : y) {
        while (ix != x.end() && ix->first < s) out.push_back(*ix++);
        if (ix == x.end() || ix->first != s || ix->second < e) return std::nullopt;
        if (ix->second > e) out.emplace_back(s, ix->second - e);
        ++ix;
    }
    out.insert(out.end(), ix, x.end());
    return out;
}

std::map<Monomial, FieldElem>::const_iterator leading(const std::map<Monomial, FieldElem>& t) {
    auto best = t.begin();
    for (auto it = std::next(t.begin()); it != t.end(); ++it)
        if (mono_less(best->first, it->first)) best = it;
    return best;
}

}  // namespace

std::optional<ParamScalar> ParamScalar::div_exact(const ParamScalar& d) const {
    if (d.is_zero()) throw std::invalid_argument("div_exact: division by zero");
    if (d.is_constant()) {
        ParamScalar q = *this;
        FieldElem inv = FieldElem::one() / d.constant_value();
        for (auto& [m, c] : q.terms) c *= inv;
        return q;
    }
    auto ld = leading(d.terms);
    ParamScalar q, r = *this;
    while (!r.is_zero()) {
        auto lr = leading(r.terms);
        auto mq = mono_div(lr->first, ld->first);
        if (!mq) return std::nullopt;
        ParamScalar t;
        t.terms.emplace(*mq, lr->second / ld->second);
        q += t;
        r -= t * d;
    }
    return q;
}

}  // namespace lump
