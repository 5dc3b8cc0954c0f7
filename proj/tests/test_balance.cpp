#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lump/balance.hpp"
#include "lump/quadrature.hpp"

using namespace lump;
using balance::Complexd;

TEST_CASE("F vanishes exactly at the reference configuration") {
    auto ref = balance::reference_config();
    auto F = balance::F_map_exact(ref);
    for (auto& v : F) CHECK(v.is_zero());
}

TEST_CASE("F on a simple float configuration") {
    balance::Configuration cfg{{Complexd(0), Complexd(1), Complexd(2)}};
    auto F = balance::F_map(cfg);
    // F1 = (0-1)^-3 + (0-2)^-3 = -1 - 1/8
    CHECK(F[0].real() == doctest::Approx(-9.0 / 8.0).epsilon(1e-14));
    CHECK(F[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("F equivariance") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int k = 0; k < 50; ++k) {
        balance::Configuration cfg{{Complexd(d(rng), d(rng)), Complexd(d(rng), d(rng)),
                                    Complexd(d(rng), d(rng))}};
        if (std::abs(cfg.z[0] - cfg.z[1]) < 0.3 || std::abs(cfg.z[1] - cfg.z[2]) < 0.3 ||
            std::abs(cfg.z[0] - cfg.z[2]) < 0.3)
            continue;
        Complexd t(0.7, -1.3), c(1.4, 0.6);
        balance::Configuration shifted = cfg, scaled = cfg;
        for (int j = 0; j < 3; ++j) {
            shifted.z[j] += t;
            scaled.z[j] *= c;
        }
        auto F0 = balance::F_map(cfg), Ft = balance::F_map(shifted),
             Fc = balance::F_map(scaled);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(Ft[j] - F0[j]) < 1e-12);
            CHECK(std::abs(Fc[j] - F0[j] / (c * c * c)) < 1e-12);
        }
    }
}

TEST_CASE("Jacobian structure") {
    auto ref = balance::reference_config();
    balance::Configuration cfg;
    for (int j = 0; j < 3; ++j) cfg.z[j] = ref[j].to_complex();

    auto J = balance::F_jacobian(cfg);
    for (int j = 0; j < 3; ++j) {
        Complexd row_sum = 0, ref_dir = 0;
        for (int k = 0; k < 3; ++k) {
            row_sum += J[j][k];
            ref_dir += J[j][k] * cfg.z[k];
        }
        CHECK(std::abs(row_sum) < 1e-13);   // translation invariance
        CHECK(std::abs(ref_dir) < 1e-13);   // Lemma-vector kernel direction
    }

    // exact row sums are exactly zero
    auto Je = balance::F_jacobian_exact(ref);
    for (int j = 0; j < 3; ++j) {
        FieldElem s = Je[j][0] + Je[j][1] + Je[j][2];
        CHECK(s.is_zero());
    }

    // finite-difference cross-check at a random non-symmetric configuration
    balance::Configuration c2{{Complexd(0.1, -0.2), Complexd(1.3, 0.4), Complexd(-0.7, 1.1)}};
    auto J2 = balance::F_jacobian(c2);
    double h = 1e-5;
    for (int k = 0; k < 3; ++k) {
        balance::Configuration p = c2, m = c2;
        p.z[k] += h;
        m.z[k] -= h;
        auto Fp = balance::F_map(p), Fm = balance::F_map(m);
        for (int j = 0; j < 3; ++j) {
            Complexd fd = (Fp[j] - Fm[j]) / (2 * h);
            CHECK(std::abs(fd - J2[j][k]) < 1e-6 * (1 + std::abs(J2[j][k])));
        }
    }
}

TEST_CASE("exact kernel of the reference Jacobian") {
    auto kernel = balance::reference_kernel();  // throws unless nullity == 2
    auto ref = balance::reference_config();
    auto Je = balance::F_jacobian_exact(ref);
    for (auto& b : kernel)
        for (int j = 0; j < 3; ++j) {
            FieldElem s = Je[j][0] * b[0] + Je[j][1] * b[1] + Je[j][2] * b[2];
            CHECK(s.is_zero());
        }
}

TEST_CASE("Newton refinement") {
    auto ref = balance::reference_config();
    balance::Configuration start;
    for (int j = 0; j < 3; ++j) start.z[j] = ref[j].to_complex();
    start.z[1] += Complexd(1e-3, -2e-3);

    auto res = balance::newton_refine(start);
    CHECK(res.converged);
    CHECK(res.residual < 1e-12);
    CHECK(balance::orbit_distance(res.cfg) < 1e-9);

    // exact solution input: nothing to do
    balance::Configuration exact;
    for (int j = 0; j < 3; ++j) exact.z[j] = ref[j].to_complex();
    auto res0 = balance::newton_refine(exact);
    CHECK(res0.converged);
    CHECK(res0.iterations <= 1);
}

TEST_CASE("interaction constants") {
    auto ic = balance::interaction_constants(1e-7);
    CHECK(ic.rel_err < 1e-6);
    CHECK(std::abs(ic.bstar) < 1e-8);  // parity
    CHECK(ic.dstar > 0);
    // d* = 24 int U^2 = 64 pi (exactly, by residue calculus on the lump)
    CHECK(ic.dstar == doctest::Approx(64 * M_PI).epsilon(1e-6));
}

TEST_CASE("quadrature engine on known integrals") {
    // int 1/(x^2+y^2+3)^2 = pi/3
    auto r = quad::integrate_plane(
        [](double x, double y) {
            double L = x * x + y * y + 3;
            return 1.0 / (L * L);
        },
        6.0, 1e-9);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(M_PI / 3).epsilon(1e-8));
}
