#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lump/hirota.hpp"

using namespace lump;

namespace {
std::mt19937 rng(4242);

ParamPoly random_poly(unsigned max_deg = 3, unsigned nterms = 5) {
    std::uniform_int_distribution<unsigned> ed(0, max_deg);
    std::uniform_int_distribution<long> cd(-4, 4);
    ParamPoly p(Basis::XY);
    for (unsigned t = 0; t < nterms; ++t)
        p += ParamPoly::monomial(Basis::XY, ed(rng), ed(rng), ParamScalar(cd(rng)));
    return p;
}

ParamPoly zmon(int p, int q, long c = 1) {
    if (c == 0 || p < 0 || q < 0) return ParamPoly(Basis::ZZBAR);
    return ParamPoly::monomial(Basis::ZZBAR, (unsigned)p, (unsigned)q, ParamScalar(c));
}
}  // namespace

TEST_CASE("odd-order antisymmetry") {
    for (int k = 0; k < 50; ++k) {
        ParamPoly f = random_poly();
        CHECK(hirota_apply(1, 0, f, f).is_zero());
        CHECK(hirota_apply(3, 0, f, f).is_zero());
        CHECK(hirota_apply(1, 2, f, f).is_zero());
    }
}

TEST_CASE("symmetry under slot exchange") {
    for (int k = 0; k < 50; ++k) {
        ParamPoly f = random_poly(), g = random_poly();
        for (unsigned mx = 0; mx <= 2; ++mx)
            for (unsigned my = 0; my <= 2; ++my) {
                ParamPoly fg = hirota_apply(mx, my, f, g);
                ParamPoly gf = hirota_apply(mx, my, g, f);
                CHECK(((mx + my) % 2 ? fg + gf : fg - gf).is_zero());
            }
    }
}

TEST_CASE("D_x^4 on the classical tau") {
    ParamPoly tau = parse_poly("x^2+y^2+3");
    // 2 (f f_xxxx - 4 f_x f_xxx + 3 f_xx^2) = 2 * 3 * 4 = 24
    CHECK(hirota_apply(4, 0, tau, tau) ==
          ParamPoly::constant(ParamScalar(FieldElem(24))));
}

TEST_CASE("printed bilinear product formulas on monomials") {
    // the three closed forms for D_x^2, D_x D_y, D_x^3 of z^n zb^n . z^j zb^k
    for (long n = 0; n <= 5; ++n)
        for (long j = 0; j <= 5; ++j)
            for (long k = 0; k <= 5; ++k) {
                ParamPoly f = zmon((int)n, (int)n), g = zmon((int)j, (int)k);

                ParamPoly dx2 =
                    zmon((int)(j + n - 2), (int)(n + k), n * (n - 1) - 2 * n * j + j * (j - 1)) +
                    zmon((int)(j + n - 1), (int)(n + k - 1),
                         2 * n * n - 2 * n * k - 2 * n * j + 2 * j * k) +
                    zmon((int)(j + n), (int)(n + k - 2), n * (n - 1) - 2 * n * k + k * (k - 1));
                CHECK(hirota_apply(2, 0, f, g) == dx2);

                ParamPoly dxdy =
                    (zmon((int)(j + n - 2), (int)(k + n), n * (n - 1) - 2 * n * j + j * (j - 1)) +
                     zmon((int)(j + n), (int)(k + n - 2),
                          -(n * (n - 1)) + 2 * n * k - k * (k - 1)))
                        .scaled(ParamScalar(FieldElem::i()));
                CHECK(hirota_apply(1, 1, f, g) == dxdy);

                ParamPoly dx3 =
                    zmon((int)(j + n), (int)(k + n - 3),
                         n * (n - 1) * (n - 2) - 3 * k * n * (n - 1) + 3 * n * k * (k - 1) -
                             k * (k - 1) * (k - 2)) +
                    zmon((int)(j + n - 1), (int)(k + n - 2),
                         3 * n * n * (n - 1) - 3 * j * n * (n - 1) - 6 * n * n * k +
                             6 * n * j * k + 3 * n * k * (k - 1) - 3 * j * k * (k - 1)) +
                    zmon((int)(j + n - 2), (int)(k + n - 1),
                         3 * n * n * (n - 1) - 6 * n * n * j - 3 * n * k * (n - 1) +
                             6 * n * j * k + 3 * n * j * (j - 1) - 3 * j * (j - 1) * k) +
                    zmon((int)(j + n - 3), (int)(k + n),
                         n * (n - 1) * (n - 2) - 3 * n * j * (n - 1) + 3 * n * j * (j - 1) -
                             j * (j - 1) * (j - 2));
                CHECK(hirota_apply(3, 0, f, g) == dx3);
            }
}

TEST_CASE("operator combinations") {
    ParamPoly z = ParamPoly::monomial(Basis::ZZBAR, 1, 0);
    ParamPoly one = ParamPoly::constant(ParamScalar(FieldElem::one()), Basis::ZZBAR);
    // 2 D_zb = D_x + i D_y
    BilinearOp manual = BilinearOp::dxy(1, 0) + BilinearOp::dxy(0, 1, FieldElem::i());
    CHECK(apply_op(BilinearOp::two_dzbar(), z, one) == apply_op(manual, z, one));
    CHECK(apply_op(BilinearOp(), random_poly(), random_poly()).is_zero());

    // bilinearity in each slot
    for (int k = 0; k < 30; ++k) {
        ParamPoly f = random_poly(), g = random_poly(), h = random_poly();
        BilinearOp op = BilinearOp::dxy(2, 0) + BilinearOp::dxy(0, 2, FieldElem(-1));
        CHECK(apply_op(op, f + g, h) == apply_op(op, f, h) + apply_op(op, g, h));
        CHECK(apply_op(op, f, g + h) == apply_op(op, f, g) + apply_op(op, f, h));
    }
}

TEST_CASE("boussinesq residual") {
    CHECK(boussinesq_residual(parse_poly("x^2+y^2+3")).is_zero());
    ParamPoly res = boussinesq_residual(parse_poly("x^2"));
    CHECK_FALSE(res.is_zero());
    // residual of x^2: D_x^4 term gives 2*3*(2)^2 = 24, D_x^2 gives -2*(2x^2*... )
    CHECK_FALSE(res.coeff(0, 0).is_zero());
}

TEST_CASE("operator parser") {
    BilinearOp bsq = parse_bilinear_op("D_x^4 - D_x^2 - D_y^2");
    ParamPoly tau = parse_poly("x^2+y^2+3");
    CHECK(apply_op(bsq, tau, tau) == boussinesq_residual(tau));
    BilinearOp scaled = parse_bilinear_op("3*D_x D_y^2 + i*D_y");
    ParamPoly f = random_poly(), g = random_poly();
    CHECK(apply_op(scaled, f, g) ==
          hirota_apply(1, 2, f, g).scaled(ParamScalar(3)) +
              hirota_apply(0, 1, f, g).scaled(ParamScalar(FieldElem::i())));
}
