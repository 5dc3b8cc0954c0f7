#include "lump/catalog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lump/backlund.hpp"

namespace lump::catalog {

namespace {

const FieldElem kShiftY(0, 0, 0, rat(-2, 3));  // y -> y - 2 sqrt3 i / 3

ParamScalar sym(uint32_t id) { return ParamScalar::symbol(id); }

}  // namespace

ParamPoly tau2() { return parse_poly("x^2 + y^2 + 3"); }

ParamPoly tau2_shifted() { return tau2().shift(FieldElem::zero(), kShiftY); }

ParamPoly g4() {
    static const ParamPoly g = [] {
        auto step = chain_step(tau2(), BacklundSystem::back2(+1), 3);
        return step.transform.substitute_params(
            {{step.free_parameters.at(0).symbol, sym(symbols::alpha())}});
    }();
    return g;
}

ParamPoly h6() {
    static const ParamPoly h = [] {
        auto step = chain_step(g4(), BacklundSystem::gh(), 3);
        return step.transform.substitute_params(
            {{step.free_parameters.at(0).symbol, sym(symbols::beta())}});
    }();
    return h;
}

namespace {

// alpha - beta = A i - 211/(3 sqrt3), alpha + beta = B - 3 sqrt3
std::map<uint32_t, ParamScalar> ab_bindings() {
    ParamScalar Ai = sym(symbols::A()) * ParamScalar(FieldElem(0, 0, rat(1, 2), 0));
    ParamScalar Bh = sym(symbols::B()) * ParamScalar(FieldElem(rat(1, 2)));
    return {{symbols::alpha(), Ai + Bh + ParamScalar(FieldElem(0, rat(-119, 9), 0, 0))},
            {symbols::beta(), Bh - Ai + ParamScalar(FieldElem(0, rat(92, 9), 0, 0))}};
}

}  // namespace

ParamPoly g4AB() {
    static const ParamPoly g =
        g4().shift(FieldElem::zero(), kShiftY).substitute_params(ab_bindings());
    return g;
}

ParamPoly realize_hAB() {
    ParamPoly h = h6().shift(FieldElem::zero(), kShiftY).substitute_params(ab_bindings());
    h = h.convert(Basis::XY);
    if (!h.is_real_valued())
        throw std::logic_error("realize_hAB: realization is not real valued");
    return h;
}

ParamPoly hAB() {
    static const ParamPoly h = realize_hAB();
    return h;
}

ParamPoly h00() {
    static const ParamPoly h =
        hAB().substitute_params({{symbols::A(), ParamScalar()}, {symbols::B(), ParamScalar()}});
    return h;
}

ParamPoly Lpoly() { return tau2(); }

RationalSolution solution_from_tau(const ParamPoly& tau) {
    if (!tau.is_real_valued())
        throw std::invalid_argument("solution_from_tau: tau is not real valued");
    ParamPoly txx = tau.diff(Var::X).diff(Var::X), tx = tau.diff(Var::X);
    ParamPoly num = (tau * txx - tx * tx).scaled(ParamScalar(2));
    return {tau, RationalFunction(std::move(num), tau, 2)};
}

RationalFunction lumpU() { return solution_from_tau(Lpoly()).u; }

RationalFunction omega() {
    return RationalFunction(parse_poly("24*x*y^2 - 72*x"), Lpoly(), 2).diff(Var::X);
}

RationalFunction uAB() {
    static const RationalFunction u = solution_from_tau(hAB()).u;
    return u;
}

std::array<RationalFunction, 4> kernel_fields_h00() {
    RationalFunction u = uAB();
    std::map<uint32_t, ParamScalar> zero = {{symbols::A(), ParamScalar()},
                                            {symbols::B(), ParamScalar()}};
    return {u.diff(Var::X).substitute_params(zero), u.diff(Var::Y).substitute_params(zero),
            u.diff_param(symbols::A()).substitute_params(zero),
            u.diff_param(symbols::B()).substitute_params(zero)};
}

bool tau_positive(const ParamPoly& tau, double extent, unsigned n) {
    double cx = 0, cy = 0, half = extent;
    double best = std::numeric_limits<double>::max();
    for (int level = 0; level < 4; ++level) {
        double bx = cx, by = cy;
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned k = 0; k <= n; ++k) {
                double x = cx - half + 2 * half * i / n, y = cy - half + 2 * half * k / n;
                double v = tau.eval(x, y).real();
                if (v < best) best = v, bx = x, by = y;
            }
        if (best <= 0) return false;
        cx = bx, cy = by;
        half = 4 * half / n;  // zoom around the current minimizer
    }
    return best > 0;
}

PeakSet peaks(double B) {
    if (!(B > 0)) throw std::domain_error("peaks: requires B > 0");
    double g = std::cbrt(B / 2);
    double s = std::sqrt(3.0) * g / 2;
    return {g, {{{-g, 0.0}, {g / 2, -s}, {g / 2, s}}}};
}

namespace {

// phi = x^6 + 3x^4y^2 + 3x^2y^4 + y^6 + Bx^3 - 3Bxy^2 + B^2/4 with B = 2 gamma^3
ParamPoly phi_gamma() {
    ParamScalar Bs = ParamScalar::symbol(symbols::gamma(), 3) * ParamScalar(2);
    ParamPoly phi = parse_poly("x^6 + 3*x^4*y^2 + 3*x^2*y^4 + y^6");
    phi += ParamPoly::monomial(Basis::XY, 3, 0, Bs);
    phi += ParamPoly::monomial(Basis::XY, 1, 2, Bs * ParamScalar(-3));
    phi += ParamPoly::constant(Bs * Bs * ParamScalar(FieldElem(rat(1, 4))), Basis::XY);
    return phi;
}

// the P_j coordinates as exact expressions in the symbol gamma
std::array<std::array<ParamScalar, 2>, 3> peak_coords() {
    ParamScalar g = ParamScalar::symbol(symbols::gamma());
    ParamScalar gh = g * ParamScalar(FieldElem(rat(1, 2)));
    ParamScalar s3h = g * ParamScalar(FieldElem(0, rat(1, 2), 0, 0));
    return {{{-g, ParamScalar()}, {gh, -s3h}, {gh, s3h}}};
}

}  // namespace

bool peak_residuals_vanish() {
    ParamPoly phi = phi_gamma(), phix = phi.diff(Var::X);
    for (auto& [xv, yv] : peak_coords())
        if (!phi.eval_scalar(xv, yv).is_zero() || !phix.eval_scalar(xv, yv).is_zero())
            return false;
    return true;
}

EtaReport eta_error() {
    ParamScalar Bs = ParamScalar::symbol(symbols::gamma(), 3) * ParamScalar(2);
    ParamPoly hb = hAB().substitute_params({{symbols::A(), ParamScalar()}, {symbols::B(), Bs}});
    auto pc = peak_coords();
    ParamPoly prod = ParamPoly::constant(ParamScalar(1), Basis::XY);
    for (auto& [xv, yv] : pc) prod *= Lpoly().shift(-xv, -yv);
    EtaReport rep{hb - prod, {}};
    for (int j = 0; j < 3; ++j) rep.at_peaks[j] = rep.eta.eval_scalar(pc[j][0], pc[j][1]);
    return rep;
}

double sup_error(double B, double extent_factor, unsigned n) {
    ParamScalar Bs{FieldElem(Rational(B))};  // doubles convert exactly
    ParamPoly hb = hAB().substitute_params({{symbols::A(), ParamScalar()}, {symbols::B(), Bs}});
    RationalFunction u = solution_from_tau(hb).u;
    PeakSet pk = peaks(B);
    auto Uval = [](double x, double y) {
        double L = x * x + y * y + 3;
        return 4 * (y * y - x * x + 3) / (L * L);
    };
    double ext = extent_factor * pk.gamma, worst = 0;
    for (unsigned i = 0; i <= 2 * n; ++i)
        for (unsigned k = 0; k <= 2 * n; ++k) {
            double x = -ext + ext * i / n, y = -ext + ext * k / n;
            double approx = 0;
            for (auto& p : pk.points) approx += Uval(x - p[0], y - p[1]);
            worst = std::max(worst, std::abs(u.eval(x, y).real() - approx));
        }
    return worst;
}

namespace {

// Re(1/z^k) and Im(1/z^k) as rational functions of (x, y) in the zzbar basis
RationalFunction re_inv(unsigned k) {
    ParamPoly num = ParamPoly::monomial(Basis::ZZBAR, k, 0, ParamScalar(FieldElem(rat(1, 2)))) +
                    ParamPoly::monomial(Basis::ZZBAR, 0, k, ParamScalar(FieldElem(rat(1, 2))));
    return RationalFunction(std::move(num), ParamPoly::monomial(Basis::ZZBAR, 1, 1), k);
}

RationalFunction im_inv(unsigned k) {
    FieldElem ih(0, 0, rat(1, 2), 0);  // i/2
    ParamPoly num = ParamPoly::monomial(Basis::ZZBAR, k, 0, ParamScalar(ih)) -
                    ParamPoly::monomial(Basis::ZZBAR, 0, k, ParamScalar(ih));
    return RationalFunction(std::move(num), ParamPoly::monomial(Basis::ZZBAR, 1, 1), k);
}

ParamScalar fe(long v) { return ParamScalar(FieldElem(v)); }

}  // namespace

bool check_zz_identities() {
    RationalFunction r(parse_poly("y^2 - x^2"), parse_poly("x^2 + y^2"), 2);
    return ratfn_equal(r, re_inv(2).scaled(fe(-1))) &&
           ratfn_equal(r.diff(Var::X), re_inv(3).scaled(fe(2))) &&
           ratfn_equal(r.diff(Var::Y), im_inv(3).scaled(fe(-2))) &&
           ratfn_equal(r.diff(Var::X).diff(Var::X), re_inv(4).scaled(fe(-6))) &&
           ratfn_equal(r.diff(Var::Y).diff(Var::Y), re_inv(4).scaled(fe(6))) &&
           ratfn_equal(r.diff(Var::X).diff(Var::Y), im_inv(4).scaled(fe(6)));
}

bool check_omega_identities() {
    RationalFunction U = lumpU(), w = omega();
    auto dxx = [](const RationalFunction& f) { return f.diff(Var::X).diff(Var::X); };
    auto dyy = [](const RationalFunction& f) { return f.diff(Var::Y).diff(Var::Y); };
    // L_U w = -6U, with the nonlocal term removed by applying dxx to both sides
    RationalFunction lhs1 = dxx(dxx(w) - w + U.scaled(fe(6)) * w + U.scaled(fe(6))) - dyy(w);
    // L_U[dx w] = -6 dx U - 6 dx U * w, same treatment
    RationalFunction v = w.diff(Var::X), Ux6 = U.diff(Var::X).scaled(fe(6));
    RationalFunction lhs2 = dxx(dxx(v) - v + U.scaled(fe(6)) * v + Ux6 + Ux6 * w) - dyy(v);
    return lhs1.is_zero() && lhs2.is_zero();
}

}  // namespace lump::catalog
