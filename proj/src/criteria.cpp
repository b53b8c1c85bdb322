#include "divsets/criteria.hpp"

#include <algorithm>
#include <stdexcept>

namespace divsets {

Int tau(const Int& n, const Int& delta, const Int& u, const Int& m) {
    const Int nu = n * (u - 1);
    return delta * delta * u * u * m * (m - 1) - n * (2 * m - 1) * u * (u - 1) * delta + nu * (nu + 1);
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_params(std::uint64_t q, unsigned k, unsigned r) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    if (k < 1 || r < 1) throw std::invalid_argument("k and r must be at least 1");
}

}  // namespace

std::string ExclusionVerdict::tag() const {
    return std::visit(overloaded{[](std::monostate) { return std::string(); },
                                 [](const reason::BelowMinimum&) { return std::string("below-minimum"); },
                                 [](const reason::AverageBound&) { return std::string("average"); },
                                 [](const reason::Quadratic&) { return std::string("quadratic"); },
                                 [](const reason::Interval&) { return std::string("interval"); },
                                 [](const reason::LpRange&) { return std::string("lp"); }},
                      reason);
}

std::string ExclusionVerdict::describe() const {
    return std::visit(
        overloaded{[](std::monostate) { return std::string("not excluded"); },
                   [](const reason::BelowMinimum& b) { return "below the minimum cardinality " + b.minimum.str(); },
                   [](const reason::AverageBound& a) {
                       return "average bound: smallest hyperplane incidence " + a.residue.str() + " exceeds n/q^k";
                   },
                   [](const reason::Quadratic& t) {
                       return "quadratic criterion: tau = " + t.tau.str() + " at m = " + t.m.str();
                   },
                   [](const reason::Interval& i) {
                       return "interval [" + i.lo.str() + ", " + i.hi.str() + "] at m = " + i.m.str();
                   },
                   [](const reason::LpRange& l) {
                       return "counting LP infeasible for v in [" + std::to_string(l.vmin) + ", " +
                              std::to_string(l.vmax) + "]";
                   }},
        reason);
}

ExclusionVerdict average_excludes(std::uint64_t q, unsigned k, unsigned r, const Int& n) {
    require_params(q, k, r);
    if (n < 1) throw std::invalid_argument("average_excludes: n must be positive");
    const Int residue = n % ipow(q, r);
    if (residue * ipow(q, k) > n) return {reason::AverageBound{residue}};
    return {};
}

std::vector<TauRow> tau_window(std::uint64_t q, unsigned k, unsigned r, const Int& n) {
    require_params(q, k, r);
    const Int delta = ipow(q, r);
    const Int u = ipow(q, k);
    const Rat vertex = Rat(1, 2) + Rat(n * (u - 1), delta * u);
    Int lo = ceil(vertex - 2);
    Int hi = floor(vertex + 2);
    while (tau(n, delta, u, lo) <= 0) --lo;
    while (tau(n, delta, u, hi) <= 0) ++hi;
    std::vector<TauRow> rows;
    for (Int m = lo; m <= hi; ++m) {
        const Int t = tau(n, delta, u, m);
        rows.push_back({m, t, t < 0 || (t <= 0 && m != 0 && m != 1)});
    }
    return rows;
}

ExclusionVerdict quadratic_excludes(std::uint64_t q, unsigned k, unsigned r, const Int& n) {
    if (n < 1) throw std::invalid_argument("quadratic_excludes: n must be positive");
    std::optional<TauRow> best;
    for (const TauRow& row : tau_window(q, k, r, n))
        if (row.excludes && (!best || row.tau < best->tau)) best = row;
    if (!best) return {};
    return {reason::Quadratic{best->m, best->tau}};
}

std::optional<ExcludedInterval> IntervalExclusions::interval_for(const Int& n) const {
    for (const auto& iv : intervals)
        if (iv.contains(n)) return iv;
    return std::nullopt;
}

IntervalExclusions excluded_intervals(std::uint64_t q, unsigned k, unsigned r) {
    require_params(q, k, r);
    const Int delta = ipow(q, r);
    const Int u = ipow(q, k);
    const Int du = delta * u;

    IntervalExclusions out;
    // tau(n, Delta, u, 1) = n(u-1)(n(u-1) + 1 - Delta u) is negative exactly below this.
    out.base_end = Rat(du - 1, u - 1);
    out.m_max = floor(Rat(du, 4) + Rat(1, 2) + Rat(1, 4 * du));

    // n(u-1) lies in [(A - sqrt(omega))/2, (A + sqrt(omega))/2] with
    // A = 2 Delta u m - Delta u - 1. For integer t, t <= sqrt(omega) iff
    // t <= isqrt(omega), so the endpoints only need the integer square root.
    const Int denom = 2 * (u - 1);
    for (Int m = 2; m <= out.m_max; ++m) {
        const Int omega = (du - 2 * m) * (du - 2 * m) + (2 * du + 1 - 4 * m * m);
        if (omega < 0) continue;
        const Int s = isqrt(omega);
        const Int a = 2 * du * m - du - 1;
        out.intervals.push_back({m, omega, ceil_div(a - s, denom), floor_div(a + s, denom)});
    }
    return out;
}

Int min_cardinality(std::uint64_t q, unsigned k, unsigned r) {
    require_params(q, k, r);
    const Int qk = ipow(q, k);
    if (r < k) return qk + 1;
    if (r % k == 0) return (ipow(q, k + r) - 1) / (qk - 1);
    const unsigned a = r / k;
    return (ipow(q, (a + 2) * k) - 1) / (qk - 1);
}

Int min_cardinality_multiple(std::uint64_t q, unsigned k, unsigned r) {
    require_params(q, k, r);
    if (r < k) return ipow(q, k + r) - ipow(q, k) + ipow(q, r);
    return ipow(q, k + r);
}

std::string to_string(TailCase c) {
    switch (c) {
        case TailCase::I: return "i";
        case TailCase::II: return "ii";
        case TailCase::III: return "iii";
        case TailCase::IV: return "iv";
    }
    return "?";
}

Int TailBoundReport::heden_minimum() const {
    Int base = heden_bound + (heden_strict ? 1 : 0);
    if (heden_exception) return std::min(base, *heden_exception);
    return base;
}

TailBoundReport heden_tail_bound(std::uint64_t q, unsigned d1, unsigned d2, bool multiple) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    if (d1 < 1 || d2 <= d1) throw std::invalid_argument("need d2 > d1 >= 1");
    const unsigned r = d2 - d1;
    const Int delta = ipow(q, r);

    TailBoundReport rep;
    rep.q = q;
    rep.d1 = d1;
    rep.d2 = d2;
    rep.multiple = multiple;
    const bool short_gap = d2 < 2 * d1;
    if (!multiple) {
        rep.improved_bound = min_cardinality(q, d1, r);
        const unsigned layers = (r + d1 - 1) / d1 + 1;
        rep.attained_by = "d1-spread of GF(q)^" + std::to_string(layers * d1);
        if (short_gap) {
            rep.tail_case = TailCase::I;
            rep.heden_bound = ipow(q, d1) + 1;
        } else {
            rep.tail_case = TailCase::II;
            rep.heden_bound = 2 * delta;
            rep.heden_strict = true;
            if (d2 % d1 == 0) rep.heden_exception = gauss_number(q, d2) / gauss_number(q, d1);
            // The b-free form is only derived for d1 not dividing r.
            if (r % d1 != 0) {
                const Int qd1 = ipow(q, d1) - 1;
                rep.b_free_bound = q * delta + ceil_div(ipow(q, r + 1) - 1, qd1);
                rep.b_free_bound_literal = q * delta + ceil_div(ipow(q, d2 + 1) - 1, qd1);
            }
        }
    } else {
        rep.improved_bound = min_cardinality_multiple(q, d1, r);
        if (short_gap) {
            rep.tail_case = TailCase::III;
            rep.heden_bound = ipow(q, d2) - ipow(q, d1) + delta;
            rep.attained_by = "two-weight codes (external family, not constructed here)";
        } else {
            rep.tail_case = TailCase::IV;
            rep.heden_bound = ipow(q, d2);
            rep.attained_by = "lifted MRD code in GF(q)^" + std::to_string(2 * d1 + r);
        }
    }
    return rep;
}

}  // namespace divsets
