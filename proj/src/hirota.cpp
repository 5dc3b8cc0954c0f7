#include "lump/hirota.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lump {

namespace {
FieldElem binom_fe(unsigned n, unsigned k) {
    Rational r(1);
    for (unsigned j = 0; j < k; ++j) r = r * rat(n - j) / rat(j + 1);
    return FieldElem(r);
}
}  // namespace

BilinearOp BilinearOp::dxy(unsigned mx, unsigned my, FieldElem c) {
    BilinearOp op;
    op.add(mx, my, c);
    return op;
}

BilinearOp BilinearOp::two_dz(FieldElem c) {
    BilinearOp op;
    op.add(1, 0, c);
    op.add(0, 1, -FieldElem::i() * c);
    return op;
}

BilinearOp BilinearOp::two_dzbar(FieldElem c) {
    BilinearOp op;
    op.add(1, 0, c);
    op.add(0, 1, FieldElem::i() * c);
    return op;
}

BilinearOp& BilinearOp::add(unsigned mx, unsigned my, const FieldElem& c) {
    if (c.is_zero()) return *this;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        if (it->mx == mx && it->my == my) {
            it->coeff += c;
            if (it->coeff.is_zero()) terms.erase(it);
            return *this;
        }
    }
    terms.push_back({mx, my, c});
    return *this;
}

BilinearOp operator+(const BilinearOp& a, const BilinearOp& b) {
    BilinearOp r = a;
    for (auto& t : b.terms) r.add(t.mx, t.my, t.coeff);
    return r;
}

BilinearOp operator-(const BilinearOp& a, const BilinearOp& b) {
    BilinearOp r = a;
    for (auto& t : b.terms) r.add(t.mx, t.my, -t.coeff);
    return r;
}

BilinearOp BilinearOp::scaled(const FieldElem& c) const {
    BilinearOp r;
    for (auto& t : terms) r.add(t.mx, t.my, t.coeff * c);
    return r;
}

std::string BilinearOp::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms) {
        if (!first) os << " + ";
        first = false;
        std::string cs = t.coeff.str();
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        os << cs;
        if (t.mx) {
            os << "*D_x";
            if (t.mx > 1) os << "^" << t.mx;
        }
        if (t.my) {
            os << "*D_y";
            if (t.my > 1) os << "^" << t.my;
        }
    }
    return os.str();
}

ParamPoly hirota_apply(unsigned mx, unsigned my, const ParamPoly& f, const ParamPoly& g) {
    const ParamPoly gg = g.basis == f.basis ? g : g.convert(f.basis);
    // precompute mixed partials
    std::vector<std::vector<ParamPoly>> df(mx + 1, std::vector<ParamPoly>(my + 1)),
        dg(mx + 1, std::vector<ParamPoly>(my + 1));
    df[0][0] = f;
    dg[0][0] = gg;
    for (unsigned a = 0; a <= mx; ++a)
        for (unsigned b = 0; b <= my; ++b) {
            if (a > 0) {
                df[a][b] = df[a - 1][b].diff(Var::X);
                dg[a][b] = dg[a - 1][b].diff(Var::X);
            } else if (b > 0) {
                df[a][b] = df[a][b - 1].diff(Var::Y);
                dg[a][b] = dg[a][b - 1].diff(Var::Y);
            }
        }
    ParamPoly out(f.basis);
    for (unsigned a = 0; a <= mx; ++a)
        for (unsigned b = 0; b <= my; ++b) {
            FieldElem c = binom_fe(mx, a) * binom_fe(my, b);
            if ((mx - a + my - b) % 2) c = -c;
            out += (df[a][b] * dg[mx - a][my - b]).scaled(ParamScalar(c));
        }
    return out;
}

ParamPoly apply_op(const BilinearOp& op, const ParamPoly& f, const ParamPoly& g) {
    ParamPoly out(f.basis);
    for (auto& t : op.terms)
        out += hirota_apply(t.mx, t.my, f, g).scaled(ParamScalar(t.coeff));
    return out;
}

ParamPoly boussinesq_residual(const ParamPoly& tau) {
    BilinearOp op;
    op.add(4, 0, FieldElem::one());
    op.add(2, 0, -FieldElem::one());
    op.add(0, 2, -FieldElem::one());
    return apply_op(op, tau, tau);
}

// ---------------------------------------------------------------------------

namespace {

struct OpParser {
    const std::string& s;
    size_t pos = 0;
    explicit OpParser(const std::string& t) : s(t) {}

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    [[noreturn]] void fail(const std::string& m) {
        throw std::invalid_argument("operator parse error at position " +
                                    std::to_string(pos) + ": " + m);
    }

    BilinearOp parse() {
        BilinearOp op;
        bool neg = false;
        skip();
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = (s[pos++] == '-');
        for (;;) {
            auto [mx, my, c] = term();
            op.add(mx, my, neg ? -c : c);
            skip();
            if (pos >= s.size()) break;
            if (s[pos] == '+') neg = false;
            else if (s[pos] == '-') neg = true;
            else fail("expected '+' or '-'");
            ++pos;
        }
        return op;
    }

    std::tuple<unsigned, unsigned, FieldElem> term() {
        FieldElem c = FieldElem::one();
        unsigned mx = 0, my = 0;
        bool any = false;
        for (;;) {
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            }
            if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                size_t start = pos;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                long num = std::stol(s.substr(start, pos - start));
                long den = 1;
                skip();
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    skip();
                    start = pos;
                    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                    if (start == pos) fail("expected denominator");
                    den = std::stol(s.substr(start, pos - start));
                }
                c *= FieldElem(rat(num, den));
                any = true;
                continue;
            }
            if (s.compare(pos, 3, "D_x") == 0 || s.compare(pos, 3, "D_y") == 0) {
                bool isx = s[pos + 2] == 'x';
                pos += 3;
                unsigned e = 1;
                skip();
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    skip();
                    size_t start = pos;
                    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                    if (start == pos) fail("expected exponent");
                    e = (unsigned)std::stoul(s.substr(start, pos - start));
                }
                (isx ? mx : my) += e;
                any = true;
                continue;
            }
            if (s.compare(pos, 3, "s3i") == 0) { c *= FieldElem::sqrt3_i(); pos += 3; any = true; continue; }
            if (s.compare(pos, 2, "s3") == 0) { c *= FieldElem::sqrt3(); pos += 2; any = true; continue; }
            if (pos < s.size() && s[pos] == 'i' &&
                (pos + 1 >= s.size() || !std::isalnum((unsigned char)s[pos + 1]))) {
                c *= FieldElem::i();
                ++pos;
                any = true;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        return {mx, my, c};
    }
};

}  // namespace

BilinearOp parse_bilinear_op(const std::string& text) { return OpParser(text).parse(); }

}  // namespace lump
