#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lump/field.hpp"

using namespace lump;

namespace {
std::mt19937 rng(12345);

FieldElem random_elem() {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    return FieldElem(rat(num(rng), den(rng)), rat(num(rng), den(rng)),
                     rat(num(rng), den(rng)), rat(num(rng), den(rng)));
}
}  // namespace

TEST_CASE("defining relations") {
    CHECK(FieldElem::sqrt3() * FieldElem::sqrt3() == FieldElem(3));
    CHECK(FieldElem::i() * FieldElem::i() == FieldElem(-1));
    CHECK(FieldElem::sqrt3_i() == FieldElem::sqrt3() * FieldElem::i());
    CHECK(FieldElem::sqrt3_i() * FieldElem::sqrt3_i() == FieldElem(-3));
}

TEST_CASE("inversion") {
    // inv(1 + i) = (1 - i)/2
    FieldElem x = FieldElem::one() + FieldElem::i();
    FieldElem expect(rat(1, 2), rat(0), rat(-1, 2), rat(0));
    CHECK(x.inv() == expect);
    CHECK(x * x.inv() == FieldElem::one());
    CHECK_THROWS(FieldElem::zero().inv());

    for (int k = 0; k < 1000; ++k) {
        FieldElem e = random_elem();
        if (e.is_zero()) continue;
        CHECK(e * e.inv() == FieldElem::one());
    }
}

TEST_CASE("conjugation") {
    CHECK(FieldElem::i().conj() == -FieldElem::i());
    FieldElem real_sub = FieldElem(2) + FieldElem::sqrt3();
    CHECK(real_sub.conj() == real_sub);

    // conj((1+i)(1+sqrt3 i)) = (1-i)(1-sqrt3 i), by brute-force expansion
    FieldElem lhs = ((FieldElem::one() + FieldElem::i()) *
                     (FieldElem::one() + FieldElem::sqrt3_i()))
                        .conj();
    FieldElem rhs = (FieldElem::one() - FieldElem::i()) *
                    (FieldElem::one() - FieldElem::sqrt3_i());
    CHECK(lhs == rhs);

    for (int k = 0; k < 200; ++k) {
        FieldElem x = random_elem(), y = random_elem();
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK(x.conj().conj() == x);
    }
}

TEST_CASE("ring axioms on random triples") {
    for (int k = 0; k < 300; ++k) {
        FieldElem x = random_elem(), y = random_elem(), z = random_elem();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("complex embedding") {
    auto c = (FieldElem(rat(1, 2)) + FieldElem(rat(0), rat(0), rat(0), rat(1, 2)))
                 .to_complex();
    CHECK(c.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.imag() == doctest::Approx(0.8660254037844386).epsilon(1e-15));
    CHECK(FieldElem::zero().to_complex() == std::complex<double>(0, 0));
    CHECK(FieldElem(-1).to_complex() == std::complex<double>(-1, 0));

    // homomorphism up to roundoff
    for (int k = 0; k < 200; ++k) {
        FieldElem x = random_elem(), y = random_elem();
        auto prod = (x * y).to_complex();
        auto sep = x.to_complex() * y.to_complex();
        CHECK(std::abs(prod - sep) <= 1e-12 * (1.0 + std::abs(prod)));
    }
}

TEST_CASE("pow") {
    CHECK(pow(FieldElem::i(), 4) == FieldElem::one());
    CHECK(pow(FieldElem::sqrt3(), 2) == FieldElem(3));
    CHECK(pow(random_elem(), 0) == FieldElem::one());
}
