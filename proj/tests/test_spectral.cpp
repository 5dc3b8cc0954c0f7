#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "lump/catalog.hpp"
#include "lump/spectral.hpp"

using namespace lump;
using spectral::SpectralGrid;
using spectral::SpectralProblem;

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace

TEST_CASE("free operator is diagonal with the printed symbol") {
    SpectralGrid g{10.0, 10.0, 32, 32};
    SpectralProblem p(g, [](double, double) { return 0.0; });

    // v = cos(kx x): eigenvalue kx^2 + 1 with kx = pi/Lx
    double kx = M_PI / g.Lx;
    auto v = spectral::sample(g, [kx](double x, double) { return std::cos(kx * x); });
    auto Sv = p.apply(v);
    double lam = dot(v, Sv) / dot(v, v);
    CHECK(lam == doctest::Approx(kx * kx + 1).epsilon(1e-12));

    // mixed mode (kx, ky): kx^2 + 1 + ky^2/kx^2
    double ky = 2 * M_PI / g.Ly;
    auto w = spectral::sample(
        g, [&](double x, double y) { return std::sin(kx * x) * std::cos(ky * y); });
    auto Sw = p.apply(w);
    CHECK(dot(w, Sw) / dot(w, w) ==
          doctest::Approx(kx * kx + 1 + ky * ky / (kx * kx)).epsilon(1e-12));

    // pure k_x = 0 content is projected out, then mapped to the excluded constant
    auto c = spectral::sample(g, [ky](double, double y) { return std::cos(ky * y); });
    auto copy = c;
    p.project(copy.data());
    for (double x : copy) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("operator symmetry on random pairs") {
    SpectralGrid g{8.0, 8.0, 24, 24};
    CompiledRatFn u(catalog::lumpU());
    SpectralProblem p(g, [&u](double x, double y) { return u(x, y); });
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> v(p.size()), w(p.size());
        for (auto& x : v) x = nd(rng);
        for (auto& x : w) x = nd(rng);
        auto Sv = p.apply(v);
        auto Sw = p.apply(w);
        double defect = std::abs(dot(w, Sv) - dot(v, Sw));
        CHECK(defect < 1e-10 * (1 + std::abs(dot(w, Sv))));
    }
}

TEST_CASE("iterative solver agrees with the dense oracle") {
    SpectralGrid g{10.0, 10.0, 32, 32};
    CompiledRatFn u(catalog::lumpU());
    SpectralProblem p(g, [&u](double x, double y) { return u(x, y); });

    auto dense = spectral::dense_lowest_eigs(p, 10);
    auto krylov = spectral::lowest_eigs(p, 10);
    for (int j = 0; j < 10; ++j) {
        CHECK(std::abs(dense.values[j] - krylov.values[j]) < 1e-6);
        CHECK(krylov.residuals[j] < 1e-8);
    }
}

TEST_CASE("free operator lowest eigenvalue is >= 1") {
    SpectralGrid g{10.0, 10.0, 32, 32};
    SpectralProblem p(g, [](double, double) { return 0.0; });
    auto e = spectral::lowest_eigs(p, 4);
    CHECK(e.values[0] >= 1.0 - 1e-10);
    CHECK(e.values[0] == doctest::Approx(std::pow(M_PI / 10, 2) + 1).epsilon(1e-10));
}

TEST_CASE("classical lump counts at a small box") {
    SpectralGrid g{20.0, 20.0, 64, 64};
    CompiledRatFn u(catalog::lumpU());
    SpectralProblem p(g, [&u](double x, double y) { return u(x, y); });
    auto e = spectral::lowest_eigs(p, 8);
    CHECK(spectral::morse_index(e) == 1);
    auto kr = spectral::kernel_count(e);
    CHECK(kr.conclusive);
    CHECK(kr.count == 2);
}

TEST_CASE("count helpers on synthetic spectra") {
    spectral::EigResult e;
    e.values = {-2.3, -1e-5, 2e-5, 0.68, 0.9};
    CHECK(spectral::morse_index(e) == 1);
    auto kr = spectral::kernel_count(e);
    CHECK(kr.conclusive);
    CHECK(kr.count == 2);
    CHECK(kr.gap_ratio >= 3);

    // no clear gap: inconclusive
    spectral::EigResult bad;
    bad.values = {-1.0, -0.5, -0.25, -0.125, -0.06};
    auto kb = spectral::kernel_count(bad);
    CHECK_FALSE(kb.conclusive);
}

TEST_CASE("projection defect") {
    SpectralGrid g{10.0, 10.0, 32, 32};
    CompiledRatFn u(catalog::lumpU());
    SpectralProblem p(g, [&u](double x, double y) { return u(x, y); });
    auto e = spectral::dense_lowest_eigs(p, 6);
    auto kr = spectral::kernel_count(e);
    REQUIRE(kr.conclusive);
    // a numerical kernel vector projects with (near) zero defect
    CHECK(spectral::projection_defect(e, kr, e.vectors[kr.indices[0]]) < 1e-10);
}

TEST_CASE("eigenvalue cache round trip") {
    std::string dir = "/tmp/lump_cache_test";
    std::string cmd = "mkdir -p " + dir;
    REQUIRE(std::system(cmd.c_str()) == 0);
    setenv("HLL_CACHE_DIR", dir.c_str(), 1);

    std::vector<double> vals = {-1.25, 3.5e-9, 0.875, 2.0};
    spectral::cache_store("unit-test-key", vals);
    auto back = spectral::cache_lookup("unit-test-key");
    REQUIRE(back.has_value());
    REQUIRE(back->size() == vals.size());
    for (size_t i = 0; i < vals.size(); ++i) CHECK((*back)[i] == vals[i]);

    CHECK_FALSE(spectral::cache_lookup("missing-key").has_value());
    unsetenv("HLL_CACHE_DIR");
}
