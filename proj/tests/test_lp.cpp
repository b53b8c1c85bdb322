#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "divsets/constructions.hpp"
#include "divsets/criteria.hpp"
#include "divsets/lp_feasibility.hpp"
#include "oracles.hpp"

#include <functional>

using namespace divsets;

namespace {

std::vector<std::size_t> incidence_indices(const LinearSystem& sys) {
    std::vector<std::size_t> out;
    for (const auto& v : sys.variables)
        if (v.kind == LpVariable::Kind::Incidence) out.push_back(v.index);
    return out;
}

/// The measured spectra of a set as a point of its system.
std::vector<Rat> measured_point(const LinearSystem& sys, const IncidenceSpectrum& a, const TripleSpectrum& b) {
    std::vector<Rat> x;
    for (const auto& var : sys.variables)
        x.push_back(Rat(var.kind == LpVariable::Kind::Incidence ? a.at(var.index) : b.at(var.index)));
    return x;
}

}  // namespace

TEST_CASE("system variables") {
    const auto sys = build_system(2, 2, 3, 21, 6, false);
    CHECK(incidence_indices(sys) == std::vector<std::size_t>{5, 13});
    CHECK(sys.constraints.size() == 3);

    const auto with_triples = build_system(2, 2, 3, 21, 6, true);
    CHECK(with_triples.variables.size() == 5);
    CHECK(with_triples.find(LpVariable::Kind::Triple, 4).has_value());
    CHECK(with_triples.find(LpVariable::Kind::Triple, 6).has_value());
    CHECK_FALSE(with_triples.find(LpVariable::Kind::Triple, 7).has_value());
    CHECK(with_triples.constraints.size() == 5);

    CHECK(incidence_indices(build_system(2, 2, 3, 8, 6, false)) == std::vector<std::size_t>{0});

    const auto two = build_system(2, 2, 3, 2, 6, true);
    CHECK_FALSE(two.include_triples);
    CHECK(two.constraints.size() == 3);

    CHECK(incidence_indices(build_system(2, 2, 3, 21, 6, false, true)) == std::vector<std::size_t>{5, 13, 21});
    CHECK_THROWS_AS(build_system(2, 2, 3, 21, 3, false), std::invalid_argument);
    CHECK_THROWS_AS(build_system(2, 2, 3, 0, 6, false), std::invalid_argument);
    CHECK(build_system(2, 2, 3, 1, 2, false).variables.empty());
}

TEST_CASE("rhs of the identities") {
    const auto sys = build_system(2, 2, 3, 21, 6, false);
    CHECK(sys.constraints[0].rhs == 63);
    CHECK(sys.constraints[1].rhs == 21 * 15);
    CHECK(sys.constraints[2].rhs == 21 * 20 * 3);
    CHECK(sys.constraints[2].coefficients[0] == 20);
    CHECK(sys.constraints[2].coefficients[1] == 13 * 12);
}

TEST_CASE("LP examples") {
    const auto sys21 = build_system(2, 2, 3, 21, 6, false);
    const auto r21 = lp_feasible(sys21);
    REQUIRE(r21.feasible());
    CHECK(r21.point[*sys21.find(LpVariable::Kind::Incidence, 5)] == 63);
    CHECK(r21.point[*sys21.find(LpVariable::Kind::Incidence, 13)] == 0);
    CHECK(satisfies(sys21, r21.point));
    CHECK(r21.phase_one_optimum == 0);

    const auto sys13 = build_system(2, 2, 3, 13, 6, false);
    const auto r13 = lp_feasible(sys13);
    CHECK(r13.status == FeasibilityStatus::Infeasible);
    CHECK(r13.phase_one_optimum > 0);
    CHECK(certifies_infeasibility(sys13, r13.farkas));

    for (unsigned v = 4; v <= 12; ++v) {
        const auto sys = build_system(2, 2, 3, 22, v, false);
        const auto r = lp_feasible(sys);
        CHECK(r.status == FeasibilityStatus::Infeasible);
        CHECK(certifies_infeasibility(sys, r.farkas));
        const auto t = lp_feasible(build_system(2, 2, 3, 22, v, true));
        CHECK(t.status == FeasibilityStatus::Infeasible);
    }
}

TEST_CASE("certificate checks reject wrong vectors") {
    const auto sys = build_system(2, 2, 3, 21, 6, false);
    const std::vector<Rat> bad{Rat(62), Rat(0)};
    CHECK_FALSE(satisfies(sys, bad));
    const std::vector<Rat> negative{Rat(-1), Rat(0)};
    CHECK_FALSE(satisfies(sys, negative));
    const std::vector<Rat> zero(3, Rat(0));
    CHECK_FALSE(certifies_infeasibility(sys, zero));
    const std::vector<Rat> short_vec(1, Rat(1));
    CHECK_FALSE(certifies_infeasibility(sys, short_vec));
}

TEST_CASE("ILP examples") {
    const auto sys21 = build_system(2, 2, 3, 21, 6, false);
    const auto r21 = ilp_feasible(sys21);
    REQUIRE(r21.feasible());
    CHECK(r21.point[*sys21.find(LpVariable::Kind::Incidence, 5)] == 63);
    for (const Rat& x : r21.point) CHECK(denominator(x) == 1);

    CHECK(ilp_feasible(build_system(2, 2, 3, 13, 6, false)).status == FeasibilityStatus::Infeasible);

    const auto sys43 = build_system(2, 2, 3, 43, 8, false);
    REQUIRE(lp_feasible(sys43).feasible());
    const auto limited = ilp_feasible(sys43, 1);
    CHECK(limited.status == FeasibilityStatus::NodeLimit);
    CHECK(limited.nodes == 1);
}

TEST_CASE("ILP answers agree with exhaustive enumeration on tiny systems") {
    // Two or three incidence variables bounded by the hyperplane count.
    for (int n = 2; n <= 40; ++n)
        for (unsigned v = 4; v <= 6; ++v) {
            const auto sys = build_system(2, 2, 2, n, v, false);
            const auto bounds = variable_upper_bounds(sys);
            bool found = false;
            const std::size_t m = sys.variables.size();
            std::vector<Int> x(m, 0);
            std::function<void(std::size_t)> rec = [&](std::size_t j) {
                if (found) return;
                if (j == m) {
                    std::vector<Rat> p(x.begin(), x.end());
                    found = satisfies(sys, p);
                    return;
                }
                for (Int t = 0; t <= *bounds[j]; ++t) {
                    x[j] = t;
                    rec(j + 1);
                }
            };
            if (m <= 3) {
                rec(0);
                CAPTURE(n);
                CAPTURE(v);
                CHECK(ilp_feasible(sys).feasible() == found);
            }
        }
}

TEST_CASE("upper bounds") {
    // a_13 is capped by the pair identity: 156 a_13 <= 1260.
    const auto bounds = variable_upper_bounds(build_system(2, 2, 3, 21, 6, false));
    REQUIRE(bounds.size() == 2);
    CHECK(bounds[0] == Int(63));
    CHECK(bounds[1] == Int(8));
}

TEST_CASE("LP agrees with the basic-solution oracle") {
    struct P {
        unsigned q, k, r;
    };
    for (const P p : {P{2, 2, 3}, P{3, 1, 1}, P{2, 1, 2}, P{2, 2, 2}}) {
        for (int n = 2; n <= 90; ++n)
            for (unsigned v = 2 * p.k; v <= 2 * p.k + 5; ++v) {
                CAPTURE(p.q);
                CAPTURE(p.k);
                CAPTURE(p.r);
                CAPTURE(n);
                CAPTURE(v);
                const auto sys = build_system(p.q, p.k, p.r, n, v, false);
                // The oracle enumerates supports; keep it to small systems.
                if (sys.variables.size() > 16) continue;
                const auto res = lp_feasible(sys);
                CHECK(res.feasible() == oracle::lp_feasible(p.q, p.k, p.r, n, v));
                if (res.feasible())
                    CHECK(satisfies(sys, res.point));
                else
                    CHECK(certifies_infeasibility(sys, res.farkas));
            }
    }
}

TEST_CASE("relaxation dominance and analytic exclusions") {
    for (int n = 1; n <= 100; ++n)
        for (unsigned v = 4; v <= 9; ++v) {
            CAPTURE(n);
            CAPTURE(v);
            const auto sys = build_system(2, 2, 3, n, v, false);
            const auto lp = lp_feasible(sys);
            if (!lp.feasible()) CHECK(ilp_feasible(sys, 200).status == FeasibilityStatus::Infeasible);
            if (average_excludes(2, 2, 3, n).excluded() || quadratic_excludes(2, 2, 3, n).excluded())
                CHECK(lp.status == FeasibilityStatus::Infeasible);
        }
}

TEST_CASE("measured spectra satisfy their systems") {
    const Field f2(2);
    const std::vector<SubspaceSet> sets{spread(f2, 2, 3), lifted_mrd(f2, 2, 3), spread(f2, 2, 2),
                                        lifted_mrd(Field(3), 1, 1), spread(Field(3), 1, 3),
                                        direct_sum(spread(f2, 2, 2), spread(f2, 2, 2))};
    for (const auto& s : sets) {
        const auto a = hyperplane_spectrum(s);
        const auto b = triple_spectrum(s);
        const unsigned r = divisibility_exponent(s);
        const auto q = s.field().order();
        const auto v = static_cast<unsigned>(s.ambient_dim());
        const auto k = static_cast<unsigned>(s.member_dim());
        for (bool triples : {false, true}) {
            const auto sys = build_system(q, k, r, Int(s.size()), v, triples);
            CHECK(satisfies(sys, measured_point(sys, a, b)));
            CHECK(lp_feasible(sys).feasible());
            CHECK(ilp_feasible(sys).feasible());
        }
    }
}

TEST_CASE("dimension scans") {
    const auto s21 = scan_dimensions(2, 2, 3, 21, 4, 12, false);
    CHECK(s21.feasible_dims().front() == 6);
    CHECK_FALSE(s21.excluded_on_range());

    const auto s22 = scan_dimensions(2, 2, 3, 22, 4, 12, false);
    CHECK(s22.feasible_dims().empty());
    CHECK(s22.excluded_on_range());
    CHECK(s22.summary() == "LP-excluded on scanned range [4, 12] (not a proof for other v)");

    const auto s32 = scan_dimensions(2, 2, 3, 32, 7, 12, false, true);
    CHECK(s32.feasible_dims().front() == 7);

    const auto low = scan_dimensions(2, 2, 3, 21, 1, 3, false);
    CHECK(low.results.empty());
    CHECK(low.skipped == std::vector<unsigned>{1, 2, 3});
    CHECK_FALSE(low.excluded_on_range());
}

TEST_CASE("json export") {
    const auto sys = build_system(2, 2, 3, 13, 6, false);
    const auto j = to_json(sys, lp_feasible(sys));
    CHECK(j["status"] == "infeasible");
    CHECK(j["system"]["variables"] == nlohmann::json::array({"a_5"}));
    CHECK(j["system"]["constraints"].size() == 3);
    CHECK(j.contains("farkas"));
}
