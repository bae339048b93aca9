#include "doctest.h"

#include "mlt/segment.hpp"

#include <random>
#include <set>

using namespace mlt;

namespace {

std::vector<SegmentPtr> grid_segments() {
    std::vector<SegmentPtr> out;
    for (unsigned n : {1u, 2u, 3u}) {
        for (std::uint32_t q : {2u, 3u, 5u}) {
            for (std::uint32_t s : {1u, 2u}) {
                if (deriv_size(n, s, q) <= 10000) out.push_back(InitialSegment::deriv(n, s, q));
                std::int64_t d = (std::int64_t)s * q - 1;
                if (simplex_size(n, d) <= 10000) out.push_back(InitialSegment::simplex(n, d));
            }
        }
    }
    out.push_back(InitialSegment::box({3, 2, 4}));
    out.push_back(InitialSegment::box({5, 5}));
    out.push_back(InitialSegment::interval(7));
    out.push_back(InitialSegment::custom(
        2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}, {2, 1}}));
    return out;
}

}  // namespace

TEST_CASE("spec rank examples") {
    auto c22 = InitialSegment::deriv(2, 2, 2);
    CHECK(c22->size() == 12);
    CHECK(c22->rank({1, 1}) == 4);
    CHECK(c22->rank({0, 0}) == 0);
    auto i22 = InitialSegment::simplex(2, 2);
    CHECK(i22->rank({2, 0}) == 5);
    CHECK_THROWS_AS((void)i22->rank({2, 1}), std::invalid_argument);
}

TEST_CASE("spec projection examples") {
    auto i22 = InitialSegment::simplex(2, 2);
    auto p = i22->projection(1);
    CHECK(p->kind() == InitialSegment::Kind::simplex);
    CHECK(p->n() == 1);
    CHECK(p->size() == 3);  // I_{2,1} = {0,1,2}

    auto c22 = InitialSegment::deriv(2, 2, 2);
    auto pc = c22->projection(2);
    CHECK(pc->kind() == InitialSegment::Kind::deriv);
    CHECK(pc->size() == 4);  // C_{2,1} = {0,1,2,3}

    auto iv = InitialSegment::interval(6);
    auto pi = iv->projection(1);
    CHECK(pi->size() == 1);  // {0}
    CHECK(pi->rank({0}) == 0);

    CHECK_THROWS_AS((void)i22->projection(3), std::invalid_argument);
}

TEST_CASE("spec fiber examples") {
    auto i22 = InitialSegment::simplex(2, 2);
    CHECK(i22->fiber(1, {1})->size() == 2);  // I_{1,1} = {0,1}
    auto c22 = InitialSegment::deriv(2, 2, 2);
    CHECK(c22->fiber(1, {2})->size() == 2);  // C_{1,1}
    CHECK(c22->fiber(1, {0})->size() == 4);  // full fiber
    CHECK_THROWS_AS((void)i22->fiber(1, {5}), std::invalid_argument);

    // flat index examples
    auto f = c22->fiber_indices(2, {0});
    CHECK(std::vector<std::uint32_t>(f.begin(), f.end()) == std::vector<std::uint32_t>{0, 1, 3, 6});
    auto g = i22->fiber_indices(1, {2});
    CHECK(std::vector<std::uint32_t>(g.begin(), g.end()) == std::vector<std::uint32_t>{3});
    auto iv = InitialSegment::interval(5);
    auto h = iv->fiber_indices(1, {0});
    CHECK(std::vector<std::uint32_t>(h.begin(), h.end()) ==
          std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("downward closure, exhaustively") {
    for (const auto& seg : grid_segments()) {
        auto mem = seg->members();
        std::set<MultiIndex> memset(mem.begin(), mem.end());
        for (const auto& mi : mem) {
            for (unsigned t = 0; t < seg->n(); ++t) {
                if (mi[t] == 0) continue;
                MultiIndex below = mi;
                --below[t];
                REQUIRE(memset.count(below) == 1);
                REQUIRE(seg->contains(below));
            }
        }
    }
}

TEST_CASE("rank and unrank are mutually inverse and order is graded-lex") {
    for (const auto& seg : grid_segments()) {
        MultiIndex prev;
        for (std::uint64_t r = 0; r < seg->size(); ++r) {
            MultiIndex i = seg->unrank(r);
            REQUIRE(seg->contains(i));
            REQUIRE(seg->rank(i) == r);
            if (r > 0) REQUIRE(graded_lex_less(prev, i));
            prev = i;
        }
    }
}

TEST_CASE("partition identity: fibers cover the segment") {
    for (const auto& seg : grid_segments()) {
        for (unsigned ax = 1; ax <= seg->n(); ++ax) {
            const auto& fm = seg->fibers(ax);
            std::uint64_t total = 0;
            std::vector<bool> seen(seg->size(), false);
            for (std::uint64_t kr = 0; kr < fm.proj->size(); ++kr) {
                std::uint64_t len = fm.starts[kr + 1] - fm.starts[kr];
                total += len;
                MultiIndex k = fm.proj->unrank(kr);
                auto idx = seg->fiber_indices(ax, k);
                REQUIRE(idx.size() == len);
                std::uint32_t prev_coord = 0;
                for (std::size_t t = 0; t < idx.size(); ++t) {
                    REQUIRE_FALSE(seen[idx[t]]);
                    seen[idx[t]] = true;
                    MultiIndex full = seg->unrank(idx[t]);
                    // fiber members agree with k off-axis and ascend on-axis
                    unsigned pos = 0;
                    for (unsigned c = 0; c < seg->n(); ++c) {
                        if (c + 1 == ax) continue;
                        if (seg->n() == 1) break;
                        REQUIRE(full[c] == k[pos]);
                        ++pos;
                    }
                    if (t > 0) REQUIRE(full[ax - 1] > prev_coord);
                    prev_coord = full[ax - 1];
                }
            }
            REQUIRE(total == seg->size());
        }
    }
}

TEST_CASE("residual set: order is the tail of the derivative segment") {
    for (std::uint32_t q : {2u, 3u}) {
        for (std::uint32_t s : {1u, 2u, 3u}) {
            for (unsigned n : {1u, 2u, 3u}) {
                auto c = InitialSegment::deriv(n, s, q);
                for (std::int64_t d : {std::int64_t(-1), std::int64_t(0),
                                       (std::int64_t)s * q / 2, (std::int64_t)s * q - 1}) {
                    auto r = ResidualSet::make(c, d);
                    REQUIRE(r->size() == c->size() - simplex_size(n, d));
                    for (std::uint64_t t = 0; t < r->size(); ++t) {
                        MultiIndex i = r->unrank(t);
                        REQUIRE((std::int64_t)weight(i) > d);
                        REQUIRE(c->contains(i));
                        REQUIRE(r->rank(i) == t);
                        REQUIRE(c->rank(i) == t + r->simplex_part_size());
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(ResidualSet::make(InitialSegment::deriv(2, 2, 2), 4), std::invalid_argument);
}

TEST_CASE("residual fibers are the expected one-dimensional residual sets") {
    auto c = InitialSegment::deriv(2, 2, 3);  // q=3, s=2
    std::int64_t d = 4;
    auto r = ResidualSet::make(c, d);
    for (unsigned ax = 1; ax <= 2; ++ax) {
        const auto& fm = r->fibers(ax);
        REQUIRE(fm.proj->kind() == InitialSegment::Kind::deriv);
        REQUIRE(fm.proj->size() == 6);  // C_{2,1} over q=3
        for (std::uint64_t kr = 0; kr < fm.proj->size(); ++kr) {
            MultiIndex k = fm.proj->unrank(kr);
            std::int64_t dd = d - (std::int64_t)weight(k);
            std::int64_t ss = 2 - (std::int64_t)(k[0] / 3);
            std::uint64_t expect =
                (std::uint64_t)(ss * 3 - std::max<std::int64_t>(dd + 1, 0));
            REQUIRE(fm.starts[kr + 1] - fm.starts[kr] == expect);
        }
    }
}

TEST_CASE("lambda and rho sections match brute force") {
    auto seg = InitialSegment::deriv(3, 2, 2);
    auto mem = seg->members();
    MultiIndex suffix{1, 0};
    auto lam = seg->lambda_set(suffix);
    std::vector<MultiIndex> expect;
    for (auto& mi : mem)
        if (mi[1] == 1 && mi[2] == 0) expect.push_back({mi[0]});
    REQUIRE(lam->size() == expect.size());
    for (auto& e : expect) REQUIRE(lam->contains(e));

    MultiIndex prefix{1};
    auto rho = seg->rho_set(prefix);
    std::vector<MultiIndex> expect2;
    for (auto& mi : mem)
        if (mi[0] == 1) expect2.push_back({mi[1], mi[2]});
    REQUIRE(rho->size() == expect2.size());
    for (auto& e : expect2) REQUIRE(rho->contains(e));
}

TEST_CASE("custom segments reject non-downward-closed input") {
    CHECK_THROWS_AS(InitialSegment::custom(2, {{0, 0}, {1, 1}}), std::invalid_argument);
    CHECK_NOTHROW(InitialSegment::custom(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST_CASE("sizes match the closed forms") {
    CHECK(InitialSegment::simplex(2, 2)->size() == 6);
    CHECK(InitialSegment::deriv(2, 2, 2)->size() == 12);
    CHECK(simplex_size(3, -1) == 0);
    CHECK(simplex_size(2, 3) == 10);
    CHECK(deriv_size(2, 2, 3) == 27);   // binom(3,2)*9
    CHECK(deriv_size(3, 1, 4) == 64);
}
