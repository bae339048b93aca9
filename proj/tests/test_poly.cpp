#include "doctest.h"

#include "mlt/poly.hpp"

#include <random>

using namespace mlt;
using polyk::Vec;

namespace {

DensePoly make_poly(const FieldPtr& f, std::vector<std::uint32_t> idx,
                    Basis basis = Basis::monomial) {
    DensePoly p{f, basis, {}};
    for (auto v : idx) p.coeffs.push_back(f->element(v));
    return p;
}

Vec random_vec(const FieldPtr& f, std::size_t n, std::mt19937& rng) {
    Vec v(n);
    for (auto& x : v) x = f->element(rng() % f->q());
    return v;
}

Vec school_mul(const FieldSpec& F, const Vec& a, const Vec& b) {
    if (polyk::logical_len(a) == 0 || polyk::logical_len(b) == 0) return {};
    Vec out(a.size() + b.size() - 1, FieldElement{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    out.resize(polyk::logical_len(out));
    return out;
}

std::vector<FieldPtr> test_fields() {
    return {FieldSpec::make(2),    FieldSpec::make(3),    FieldSpec::make(2, 2),
            FieldSpec::make(5),    FieldSpec::make(2, 3), FieldSpec::make(3, 2),
            FieldSpec::make(13),   FieldSpec::make(2, 4)};
}

}  // namespace

TEST_CASE("poly_mul spec examples") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    // (X+1)^2 over F_2 = X^2+1
    auto p = poly_mul(make_poly(f2, {1, 1}), make_poly(f2, {1, 1}));
    CHECK(p.coeffs == make_poly(f2, {1, 0, 1}).coeffs);
    // (X^2+2X)(X+1) over F_3 = X^3+2X  (wait: (X^2+2X)(X+1) = X^3+X^2+2X^2+2X = X^3+2X)
    auto p2 = poly_mul(make_poly(f3, {0, 2, 1}), make_poly(f3, {1, 1}));
    CHECK(p2.coeffs == make_poly(f3, {0, 2, 0, 1}).coeffs);
    // anything * 0 = 0
    auto z = poly_mul(make_poly(f3, {0, 2, 1}), make_poly(f3, {0}));
    CHECK_FALSE(z.degree().has_value());
    CHECK_THROWS_AS(poly_mul(make_poly(f2, {1}), make_poly(f3, {1})), std::invalid_argument);
}

TEST_CASE("multiplication agrees with schoolbook across kernels") {
    std::mt19937 rng(99);
    for (auto& f : test_fields()) {
        for (int it = 0; it < 60; ++it) {
            std::size_t la = 1 + rng() % 520, lb = 1 + rng() % 520;
            Vec a = random_vec(f, la, rng), b = random_vec(f, lb, rng);
            Vec ref = school_mul(*f, a, b);
            Vec got = polyk::mul(*f, a, b);
            got.resize(polyk::logical_len(got));
            REQUIRE(got == ref);
        }
    }
}

TEST_CASE("kernel thresholds do not change products") {
    std::mt19937 rng(5);
    auto f = FieldSpec::make(2, 4);
    Vec a = random_vec(f, 200, rng), b = random_vec(f, 173, rng);
    auto saved = mul_tuning();
    Vec r1 = polyk::mul(*f, a, b);
    mul_tuning().enable_fft = false;
    Vec r2 = polyk::mul(*f, a, b);
    mul_tuning().schoolbook_below = 4096;  // force schoolbook
    Vec r3 = polyk::mul(*f, a, b);
    mul_tuning() = saved;
    CHECK(r1 == r2);
    CHECK(r1 == r3);
}

TEST_CASE("divrem: quotient-remainder identity") {
    std::mt19937 rng(17);
    for (auto& f : test_fields()) {
        for (int it = 0; it < 40; ++it) {
            std::size_t la = 1 + rng() % 260, lb = 1 + rng() % 120;
            Vec a = random_vec(f, la, rng);
            Vec b = random_vec(f, lb, rng);
            if (polyk::logical_len(b) == 0) b[0] = f->one();
            Vec q, r;
            polyk::divrem(*f, a, b, q, r);
            REQUIRE(r.size() < std::max<std::size_t>(polyk::logical_len(b), 1));
            Vec qb = school_mul(*f, q, b);
            qb.resize(std::max(qb.size(), std::max(a.size(), r.size())), FieldElement{});
            for (std::size_t i = 0; i < r.size(); ++i) qb[i] = f->add(qb[i], r[i]);
            qb.resize(polyk::logical_len(qb));
            Vec at(a.begin(), a.begin() + polyk::logical_len(a));
            REQUIRE(qb == at);
        }
    }
}

TEST_CASE("series inverse") {
    std::mt19937 rng(31);
    for (auto& f : test_fields()) {
        for (int it = 0; it < 20; ++it) {
            std::size_t n = 1 + rng() % 200;
            Vec a = random_vec(f, n, rng);
            if (a[0].is_zero()) a[0] = f->one();
            std::size_t k = 1 + rng() % 200;
            Vec h = polyk::series_inv(*f, a, k);
            Vec prod = polyk::mul_trunc(*f, a, h, k);
            REQUIRE(prod[0] == f->one());
            for (std::size_t i = 1; i < prod.size(); ++i) REQUIRE(prod[i].is_zero());
        }
    }
}

TEST_CASE("taylor_shift spec examples") {
    auto f2 = FieldSpec::make(2);
    auto f5 = FieldSpec::make(5);
    // X^2+X over F_2 shifted by 1 is itself
    auto s = taylor_shift(make_poly(f2, {0, 1, 1}), f2->one());
    CHECK(s.coeffs == make_poly(f2, {0, 1, 1}).coeffs);
    // identity shift
    auto t = taylor_shift(make_poly(f5, {3, 1, 4}), f5->zero());
    CHECK(t.coeffs == make_poly(f5, {3, 1, 4}).coeffs);
    // X^2 over F_5 shifted by 2 -> X^2+4X+4
    auto u = taylor_shift(make_poly(f5, {0, 0, 1}), f5->element(2));
    CHECK(u.coeffs == make_poly(f5, {4, 4, 1}).coeffs);
}

TEST_CASE("taylor_shift properties: inverse pair and pointwise") {
    std::mt19937 rng(77);
    for (auto& f : test_fields()) {
        if (f->q() > 16) continue;
        for (int it = 0; it < 25; ++it) {
            std::size_t n = 1 + rng() % 150;
            Vec v = random_vec(f, n, rng);
            auto a = f->element(rng() % f->q());
            Vec s = polyk::taylor_shift(*f, v, a);
            Vec back = polyk::taylor_shift(*f, s, f->neg(a));
            REQUIRE(back == v);
            for (std::uint32_t j = 0; j < f->q(); ++j) {
                auto x = f->element(j);
                REQUIRE(polyk::eval(*f, s, x) == polyk::eval(*f, v, f->add(x, a)));
            }
        }
    }
}

TEST_CASE("basis conversion spec examples") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    // X^2 = N_1 + N_2 over F_2 and F_3
    auto c2 = monomial_to_newton(make_poly(f2, {0, 0, 1}), 3);
    CHECK(c2.coeffs == make_poly(f2, {0, 1, 1}).coeffs);
    auto c3 = monomial_to_newton(make_poly(f3, {0, 0, 1}), 3);
    CHECK(c3.coeffs == make_poly(f3, {0, 1, 1}).coeffs);
    // constants pass through
    auto cc = monomial_to_newton(make_poly(f3, {2}), 4);
    CHECK(cc.coeffs == make_poly(f3, {2, 0, 0, 0}).coeffs);
    // N_3 over F_2 = X^3+X^2
    auto n3 = newton_to_monomial(make_poly(f2, {0, 0, 0, 1}, Basis::newton));
    CHECK(n3.coeffs == make_poly(f2, {0, 0, 1, 1}).coeffs);
    // degree overflow
    CHECK_THROWS_AS(monomial_to_newton(make_poly(f2, {1, 1, 1}), 2), std::invalid_argument);
}

TEST_CASE("conversion round trips at lengths up to 4q") {
    std::mt19937 rng(123);
    for (auto& f : test_fields()) {
        for (std::size_t len : {std::size_t(1), std::size_t(f->q()), std::size_t(2 * f->q()),
                                std::size_t(4 * f->q()), std::size_t(3 * f->q() + 1)}) {
            for (int it = 0; it < 6; ++it) {
                DensePoly p{f, Basis::newton, random_vec(f, len, rng)};
                auto m = newton_to_monomial(p);
                auto back = monomial_to_newton(m, len);
                REQUIRE(back.coeffs == p.coeffs);
            }
        }
    }
}

TEST_CASE("newton basis agrees with explicit products: N_{rq+i} = N_{rq} N_i") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto f = q == 4 ? FieldSpec::make(2, 2) : FieldSpec::make(q);
        for (std::uint32_t r = 0; r <= 3; ++r) {
            for (std::uint32_t i = 0; i <= 2 * q; ++i) {
                auto lhs = newton_basis_poly(f, (std::uint64_t)r * q + i);
                auto rhs = poly_mul(newton_basis_poly(f, (std::uint64_t)r * q),
                                    newton_basis_poly(f, i));
                auto lt = lhs.coeffs;
                auto rt = rhs.coeffs;
                lt.resize(polyk::logical_len(lt));
                rt.resize(polyk::logical_len(rt));
                REQUIRE(lt == rt);
            }
        }
    }
}

TEST_CASE("trunc_pow_qm1 spec examples and subproduct root identity") {
    auto f3 = FieldSpec::make(3);
    auto f2 = FieldSpec::make(2);
    CHECK(trunc_pow_qm1(f3, 0, 5).coeffs == make_poly(f3, {1}).coeffs);
    auto u = trunc_pow_qm1(f3, 1, 1);
    CHECK(u.coeffs == make_poly(f3, {2}).coeffs);
    auto v = trunc_pow_qm1(f2, 2, 3);
    CHECK(v.coeffs == make_poly(f2, {1, 0, 1}).coeffs);

    // root of the all-multiplicity-r tree equals (X^q - X)^r
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto f = q == 4 ? FieldSpec::make(2, 2) : FieldSpec::make(q);
        for (std::uint32_t r = 1; r <= 3; ++r) {
            auto tree = build_subproduct_tree(f, std::vector<std::uint32_t>(q, r));
            DensePoly xq{f, Basis::monomial, Vec(q + 1, FieldElement{})};
            xq.coeffs[1] = f->neg(f->one());
            xq.coeffs[q] = f->one();
            DensePoly pw = make_poly(f, {1});
            for (std::uint32_t k = 0; k < r; ++k) pw = poly_mul(pw, xq);
            Vec expect = pw.coeffs;
            expect.resize(polyk::logical_len(expect));
            Vec got = tree.root_poly();
            got.resize(polyk::logical_len(got));
            REQUIRE(got == expect);
            // and equals N_{rq}
            auto nrq = newton_basis_poly(f, (std::uint64_t)r * q);
            REQUIRE(nrq.coeffs == expect);
        }
    }
}

TEST_CASE("subproduct tree spec examples") {
    auto f2 = FieldSpec::make(2);
    auto t = build_subproduct_tree(f2, {1, 1});
    CHECK(t.root_poly() == make_poly(f2, {0, 1, 1}).coeffs);  // X^2+X

    auto f5 = FieldSpec::make(5);
    auto single = build_subproduct_tree(f5, {0, 0, 1, 0, 0});
    CHECK(single.root_poly() == make_poly(f5, {3, 1}).coeffs);  // X - 2

    auto f3 = FieldSpec::make(3);
    auto t3 = build_subproduct_tree(f3, {2, 1, 0});
    CHECK(t3.root_poly() == make_poly(f3, {0, 0, 2, 1}).coeffs);  // X^3+2X^2

    CHECK_THROWS_AS(build_subproduct_tree(f3, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("rem_by_node matches generic division") {
    std::mt19937 rng(2024);
    for (auto& f : test_fields()) {
        std::vector<std::uint32_t> mults(f->q(), 0);
        for (std::uint32_t j = 0; j < f->q(); ++j) mults[j] = rng() % 4;
        std::uint32_t tot = 0;
        for (auto m : mults) tot += m;
        if (tot == 0) mults[0] = 2;
        auto tree = build_subproduct_tree(f, mults);
        const auto& root = tree.at(tree.root);
        if (root.left < 0) continue;
        Vec a = random_vec(f, root.degree, rng);
        for (int child : {root.left, root.right}) {
            Vec got = rem_by_node(tree, child, a);
            Vec q, r;
            polyk::divrem(*f, a, tree.at(child).poly, q, r);
            got.resize(polyk::logical_len(got));
            r.resize(polyk::logical_len(r));
            REQUIRE(got == r);
        }
    }
}

TEST_CASE("zero polynomial degree is flagged") {
    auto f = FieldSpec::make(3);
    DensePoly z{f, Basis::monomial, Vec(4, FieldElement{})};
    CHECK_FALSE(z.degree().has_value());
    CHECK(make_poly(f, {0, 2}).degree() == std::size_t(1));
}
