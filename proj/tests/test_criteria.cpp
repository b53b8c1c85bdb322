#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "divsets/criteria.hpp"
#include "oracles.hpp"

using namespace divsets;

namespace {

const std::set<int> admissible_223{21, 31, 32, 33, 42, 43, 44, 52, 53, 54, 55, 62,
                                   63, 64, 65, 66, 72, 73, 74, 75, 76, 77, 78};

bool analytic_excludes(std::uint64_t q, unsigned k, unsigned r, const Int& n) {
    return average_excludes(q, k, r, n).excluded() || quadratic_excludes(q, k, r, n).excluded();
}

}  // namespace

TEST_CASE("tau values") {
    CHECK(tau(21, 8, 4, 1) == 2016);
    CHECK(tau(24, 8, 4, 3) == -120);
    CHECK(tau(32, 8, 4, 3) == 96);
    CHECK(tau(32, 8, 4, 4) == 96);
    for (int n = 1; n < 300; ++n) {
        CHECK(tau(n, 8, 4, 0) > 0);
        CHECK(tau(n, 8, 4, 0) == Int(n) * 3 * (32 + Int(n) * 3 + 1));
        for (int m = -3; m < 12; ++m) CHECK(tau(n, 8, 4, m) == oracle::tau(n, 8, 4, m));
    }
}

TEST_CASE("tau at multiples of Delta") {
    for (unsigned q : {2u, 3u})
        for (unsigned k = 1; k <= 3; ++k)
            for (unsigned r = 1; r <= 3; ++r) {
                const Int delta = ipow(q, r);
                const Int u = ipow(q, k);
                for (Int l = 1; l <= 20; ++l)
                    CHECK(tau(delta * l, delta, u, l) == delta * l * (delta * l - delta * u + u - 1));
            }
}

TEST_CASE("average criterion") {
    const auto v22 = average_excludes(2, 2, 3, 22);
    REQUIRE(v22.excluded());
    CHECK(std::get<reason::AverageBound>(v22.reason).residue == 6);
    CHECK(v22.tag() == "average");
    CHECK_FALSE(average_excludes(2, 2, 3, 21).excluded());
    for (int l = 1; l < 30; ++l) {
        CHECK_FALSE(average_excludes(2, 2, 3, 8 * l).excluded());
        CHECK_FALSE(average_excludes(3, 2, 1, 3 * l).excluded());
    }
}

TEST_CASE("quadratic criterion") {
    const auto v24 = quadratic_excludes(2, 2, 3, 24);
    REQUIRE(v24.excluded());
    CHECK(std::get<reason::Quadratic>(v24.reason).m == 3);
    CHECK(std::get<reason::Quadratic>(v24.reason).tau == -120);

    const auto v8 = quadratic_excludes(2, 2, 3, 8);
    REQUIRE(v8.excluded());
    CHECK(std::get<reason::Quadratic>(v8.reason).m == 1);
    CHECK(std::get<reason::Quadratic>(v8.reason).tau == -168);

    CHECK_FALSE(quadratic_excludes(2, 2, 3, 32).excluded());
}

TEST_CASE("quadratic criterion agrees with a full scan") {
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned k = 1; k <= 3; ++k)
            for (unsigned r = 1; r <= 4; ++r)
                for (int n = 1; n <= 200; ++n) {
                    CAPTURE(q);
                    CAPTURE(k);
                    CAPTURE(r);
                    CAPTURE(n);
                    CHECK(quadratic_excludes(q, k, r, n).excluded() == oracle::tau_excludes(q, k, r, n));
                }
}

TEST_CASE("tau window covers every nonpositive tau") {
    for (int n = 1; n <= 120; ++n) {
        const auto rows = tau_window(2, 2, 3, n);
        std::set<Int> ms;
        for (const auto& row : rows) {
            ms.insert(row.m);
            CHECK(row.tau == tau(n, 8, 4, row.m));
        }
        for (int m = -5; m <= 40; ++m)
            if (tau(n, 8, 4, m) <= 0) CHECK(ms.contains(m));
    }
}

TEST_CASE("excluded intervals") {
    const auto iv = excluded_intervals(2, 2, 3);
    CHECK(iv.m_max == 8);
    CHECK(iv.base_end == Rat(31, 3));
    REQUIRE(!iv.intervals.empty());
    CHECK(iv.intervals.front().m == 2);
    CHECK(iv.intervals.front().omega == 833);
    CHECK(iv.intervals.front().lo == 12);
    CHECK(iv.intervals.front().hi == 20);
    for (int n = 1; n <= 10; ++n) CHECK(iv.in_base(n));
    CHECK_FALSE(iv.in_base(11));
    // tau at m = 1 is negative exactly on the base.
    for (int n = 1; n <= 40; ++n) CHECK(iv.in_base(n) == (tau(n, 8, 4, 1) < 0));
}

TEST_CASE("interval endpoints are exact") {
    for (unsigned q : {2u, 3u, 5u})
        for (unsigned k = 1; k <= 3; ++k)
            for (unsigned r = 1; r <= 3; ++r) {
                const auto iv = excluded_intervals(q, k, r);
                const Int delta = ipow(q, r);
                const Int u = ipow(q, k);
                for (const auto& e : iv.intervals) {
                    if (e.empty()) continue;
                    CHECK(tau(e.lo, delta, u, e.m) <= 0);
                    CHECK(tau(e.hi, delta, u, e.m) <= 0);
                    CHECK(tau(e.lo - 1, delta, u, e.m) > 0);
                    CHECK(tau(e.hi + 1, delta, u, e.m) > 0);
                }
            }
}

TEST_CASE("interval membership equals the tau scan") {
    struct P {
        unsigned q, k, r;
    };
    for (const P p : {P{2, 2, 3}, P{3, 1, 1}, P{2, 1, 1}, P{2, 2, 1}, P{2, 3, 2}, P{3, 2, 2}, P{4, 1, 2}}) {
        const auto iv = excluded_intervals(p.q, p.k, p.r);
        for (int n = 1; n <= 200; ++n) {
            CAPTURE(p.q);
            CAPTURE(p.k);
            CAPTURE(p.r);
            CAPTURE(n);
            CHECK(iv.contains(n) == oracle::tau_excludes(p.q, p.k, p.r, n));
        }
    }
}

TEST_CASE("the analytic criteria leave exactly the known list") {
    for (int n = 1; n <= 81; ++n) {
        CAPTURE(n);
        CHECK(analytic_excludes(2, 2, 3, n) == !admissible_223.contains(n));
    }
}

TEST_CASE("minimum cardinalities") {
    CHECK(min_cardinality(2, 2, 3) == 21);
    CHECK(min_cardinality(2, 1, 1) == 3);
    CHECK(min_cardinality(2, 2, 1) == 5);
    CHECK(min_cardinality_multiple(2, 2, 1) == 6);
    CHECK(min_cardinality_multiple(2, 2, 3) == 32);
    CHECK(min_cardinality_multiple(2, 2, 2) == 16);
    CHECK_THROWS_AS(min_cardinality(1, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(min_cardinality(2, 0, 3), std::invalid_argument);
}

TEST_CASE("minimum cardinality is sharp for the analytic criteria") {
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned k = 1; k <= 3; ++k)
            for (unsigned r = 1; r <= 5; ++r) {
                CAPTURE(q);
                CAPTURE(k);
                CAPTURE(r);
                const Int n0 = min_cardinality(q, k, r);
                CHECK_FALSE(analytic_excludes(q, k, r, n0));
                for (Int n = 1; n < n0; ++n) CHECK(analytic_excludes(q, k, r, n));
                const Int m0 = min_cardinality_multiple(q, k, r);
                const Int delta = ipow(q, r);
                CHECK(m0 % delta == 0);
                CHECK_FALSE(analytic_excludes(q, k, r, m0));
                for (Int n = delta; n < m0; n += delta) CHECK(analytic_excludes(q, k, r, n));
            }
}

TEST_CASE("tail bounds") {
    const auto iii = heden_tail_bound(2, 2, 3, true);
    CHECK(iii.tail_case == TailCase::III);
    CHECK(iii.heden_bound == 6);
    CHECK(iii.improved_bound == 6);

    const auto iv = heden_tail_bound(2, 2, 4, true);
    CHECK(iv.tail_case == TailCase::IV);
    CHECK(iv.heden_bound == 16);
    CHECK(iv.improved_bound == 16);

    const auto ii = heden_tail_bound(2, 2, 5, false);
    CHECK(ii.tail_case == TailCase::II);
    CHECK(ii.heden_bound == 16);
    CHECK(ii.heden_strict);
    CHECK(ii.improved_bound == 21);
    REQUIRE(ii.b_free_bound);
    CHECK(*ii.b_free_bound == 21);
    CHECK(*ii.b_free_bound_literal == 37);

    const auto i = heden_tail_bound(2, 2, 3, false);
    CHECK(i.tail_case == TailCase::I);
    CHECK(i.heden_bound == 5);
    CHECK(i.improved_bound == 5);

    CHECK_THROWS_AS(heden_tail_bound(2, 3, 3, false), std::invalid_argument);
}

TEST_CASE("the improved bound never undercuts Heden") {
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned d1 = 1; d1 <= 4; ++d1)
            for (unsigned d2 = d1 + 1; d2 <= d1 + 6; ++d2)
                for (bool multiple : {false, true}) {
                    const auto rep = heden_tail_bound(q, d1, d2, multiple);
                    CHECK(rep.improved_bound >= rep.heden_minimum());
                    const unsigned r = d2 - d1;
                    CHECK(rep.b_free_bound.has_value() == (rep.tail_case == TailCase::II && r % d1 != 0));
                    if (rep.b_free_bound) {
                        CHECK(*rep.b_free_bound <= rep.improved_bound);
                        if ((r + 1) % d1 == 0) CHECK(*rep.b_free_bound == rep.improved_bound);
                    }
                }
}

TEST_CASE("exclusion descriptions") {
    CHECK(ExclusionVerdict{}.tag().empty());
    CHECK_FALSE(ExclusionVerdict{}.excluded());
    CHECK(ExclusionVerdict{reason::Interval{3, 23, 30}}.describe() == "interval [23, 30] at m = 3");
    CHECK(ExclusionVerdict{reason::BelowMinimum{21}}.describe() == "below the minimum cardinality 21");
}
