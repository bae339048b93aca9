#include "doctest.h"

#include "mlt/field.hpp"

#include <random>

using namespace mlt;

namespace {

std::vector<FieldPtr> grid_fields() {
    return {FieldSpec::make(2),    FieldSpec::make(3),    FieldSpec::make(2, 2),
            FieldSpec::make(5),    FieldSpec::make(7),    FieldSpec::make(2, 3),
            FieldSpec::make(3, 2), FieldSpec::make(13),   FieldSpec::make(2, 4)};
}

}  // namespace

TEST_CASE("prime field basics over F_5") {
    auto f = FieldSpec::make(5);
    CHECK(f->add(f->element(2), f->element(4)) == f->element(1));
    CHECK(f->mul(f->element(3), f->element(4)) == f->element(2));
    CHECK(f->inv(f->element(2)) == f->element(3));
    CHECK(f->sub(f->element(1), f->element(4)) == f->element(2));
    CHECK(f->pow(f->element(2), 4) == f->element(1));
    CHECK_THROWS_AS((void)f->inv(f->zero()), std::domain_error);
    CHECK_THROWS_AS((void)f->div(f->one(), f->zero()), std::domain_error);
    CHECK_THROWS_AS((void)f->element(5), std::invalid_argument);
}

TEST_CASE("GF(4) multiplication under the digit enumeration") {
    // F_2[Y]/(Y^2+Y+1): alpha_2 = Y, alpha_3 = Y+1, Y*(Y+1) = Y^2+Y = 1
    auto f = FieldSpec::make(2, 2);
    CHECK(f->modulus() == std::vector<std::uint16_t>{1, 1, 1});
    CHECK(f->mul(f->element(2), f->element(3)) == f->element(1));
    CHECK(f->add(f->element(2), f->element(3)) == f->element(1));
}

TEST_CASE("default moduli are the expected small irreducibles") {
    CHECK(FieldSpec::make(2, 3)->modulus() == std::vector<std::uint16_t>{1, 1, 0, 1});
    CHECK(FieldSpec::make(2, 4)->modulus() == std::vector<std::uint16_t>{1, 1, 0, 0, 1});
    CHECK(FieldSpec::make(3, 2)->modulus() == std::vector<std::uint16_t>{1, 0, 1});
}

TEST_CASE("reducible modulus is rejected") {
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 0, 1}), std::invalid_argument);  // (Y+1)^2
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 1}), std::invalid_argument);     // wrong length
    CHECK_THROWS_AS(FieldSpec::make(4, 1), std::invalid_argument);             // not prime
}

TEST_CASE("binomials mod p via Lucas") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    CHECK(f2->binom(5, 2) == f2->zero());
    CHECK(f3->binom(4, 2) == f3->zero());
    CHECK(f3->binom(7, 0) == f3->one());
    CHECK(f3->binom(2, 5) == f3->zero());
    // binom(7,3) = 35 = 2 mod 3
    CHECK(f3->binom(7, 3) == f3->element(2));
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(12345);
    for (auto& f : grid_fields()) {
        std::uniform_int_distribution<std::uint32_t> pick(0, f->q() - 1);
        for (int it = 0; it < 10000; ++it) {
            auto a = f->element(pick(rng)), b = f->element(pick(rng)), c = f->element(pick(rng));
            REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
            REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
            REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            REQUIRE(f->add(a, f->neg(a)) == f->zero());
            if (!a.is_zero()) REQUIRE(f->mul(a, f->inv(a)) == f->one());
            if (!b.is_zero()) REQUIRE(f->mul(f->div(a, b), b) == a);
        }
    }
}

TEST_CASE("characteristic: p-fold addition annihilates") {
    for (auto& f : grid_fields()) {
        for (std::uint32_t j = 0; j < f->q(); ++j) {
            auto x = f->element(j);
            auto s = f->zero();
            for (std::uint32_t k = 0; k < f->p(); ++k) s = f->add(s, x);
            REQUIRE(s == f->zero());
        }
    }
}

TEST_CASE("table multiplication agrees with digit-vector multiplication") {
    for (auto& f : {FieldSpec::make(2, 4), FieldSpec::make(3, 2), FieldSpec::make(2, 3)}) {
        for (std::uint32_t a = 0; a < f->q(); ++a)
            for (std::uint32_t b = 0; b < f->q(); ++b) {
                auto fast = f->mul(f->element(a), f->element(b));
                REQUIRE(fast.idx == field_test_poly_mul(*f, (std::uint16_t)a, (std::uint16_t)b));
            }
    }
}

TEST_CASE("pow agrees with repeated multiplication") {
    std::mt19937 rng(7);
    for (auto& f : grid_fields()) {
        std::uniform_int_distribution<std::uint32_t> pick(0, f->q() - 1);
        for (int it = 0; it < 200; ++it) {
            auto a = f->element(pick(rng));
            std::uint64_t e = rng() % 50;
            auto r = f->one();
            for (std::uint64_t k = 0; k < e; ++k) r = f->mul(r, a);
            REQUIRE(f->pow(a, e) == r);
        }
    }
}

TEST_CASE("mult counter scopes attach and detach") {
    auto f = FieldSpec::make(2, 4);
    MultCounter outer;
    {
        CountScope s(outer);
        (void)f->mul(f->element(3), f->element(5));
        MultCounter inner;
        {
            CountScope s2(inner);
            (void)f->mul(f->element(3), f->element(5));
            (void)f->mul(f->element(2), f->element(7));
        }
        CHECK(inner.value == 2);
        (void)f->mul(f->element(3), f->element(5));
    }
    CHECK(outer.value == 2);
    (void)f->mul(f->element(3), f->element(5));
    CHECK(outer.value == 2);
}
