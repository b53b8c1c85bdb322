#ifndef DIVSETS_CRITERIA_HPP
#define DIVSETS_CRITERIA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "divsets/algebra.hpp"

// Analytic non-existence criteria and minimum cardinalities for q^r-divisible
// sets of k-subspaces. Throughout, Delta = q^r and u = q^k. None of these
// depend on the ambient dimension.

namespace divsets {

/// tau(n, Delta, u, m) = Delta^2 u^2 m(m-1) - n(2m-1) u(u-1) Delta + n(u-1)(n(u-1)+1).
Int tau(const Int& n, const Int& delta, const Int& u, const Int& m);

namespace reason {
struct BelowMinimum {
    Int minimum;
};
/// The smallest admissible hyperplane incidence `residue` exceeds n/q^k.
struct AverageBound {
    Int residue;
};
struct Quadratic {
    Int m;
    Int tau;
};
struct Interval {
    Int m;
    Int lo;
    Int hi;
};
/// The counting LP has no solution for any ambient dimension in [vmin, vmax].
struct LpRange {
    unsigned vmin;
    unsigned vmax;
};
}  // namespace reason

struct ExclusionVerdict {
    using Reason = std::variant<std::monostate, reason::BelowMinimum, reason::AverageBound, reason::Quadratic,
                                reason::Interval, reason::LpRange>;
    Reason reason;

    bool excluded() const noexcept { return !std::holds_alternative<std::monostate>(reason); }
    /// Short tag: "", "below-minimum", "average", "quadratic", "interval", "lp".
    std::string tag() const;
    std::string describe() const;
};

ExclusionVerdict average_excludes(std::uint64_t q, unsigned k, unsigned r, const Int& n);

struct TauRow {
    Int m;
    Int tau;
    bool excludes;
};

/// tau over all integers m within distance 2 of the real minimizer
/// m* = 1/2 + n(u-1)/(Delta u), widened while tau stays nonpositive. Since tau
/// is convex in m, every m with tau <= 0 appears.
std::vector<TauRow> tau_window(std::uint64_t q, unsigned k, unsigned r, const Int& n);

/// Excluded when some integer m has tau < 0, or tau <= 0 with m outside {0, 1}.
/// The witness is the m of smallest tau (ties to the smaller m).
ExclusionVerdict quadratic_excludes(std::uint64_t q, unsigned k, unsigned r, const Int& n);

struct ExcludedInterval {
    Int m;
    Int omega;
    Int lo;
    Int hi;
    bool empty() const { return lo > hi; }
    bool contains(const Int& n) const { return lo <= n && n <= hi; }
};

struct IntervalExclusions {
    /// n in [1, base_end) is excluded; this is where tau(n, Delta, u, 1) < 0.
    Rat base_end;
    Int m_max;
    std::vector<ExcludedInterval> intervals;

    bool in_base(const Int& n) const { return n >= 1 && Rat(n) < base_end; }
    /// First interval (smallest m) containing n.
    std::optional<ExcludedInterval> interval_for(const Int& n) const;
    bool contains(const Int& n) const { return in_base(n) || interval_for(n).has_value(); }
};

/// For m in [2, m_max], m_max = floor(Delta u/4 + 1/2 + 1/(4 Delta u)), the
/// integers n with tau(n, Delta, u, m) <= 0, as exact closed intervals.
IntervalExclusions excluded_intervals(std::uint64_t q, unsigned k, unsigned r);

/// Tight lower bound on the size of a nonempty q^r-divisible set of k-subspaces.
Int min_cardinality(std::uint64_t q, unsigned k, unsigned r);
/// Same, restricted to cardinalities divisible by q^r.
Int min_cardinality_multiple(std::uint64_t q, unsigned k, unsigned r);

enum class TailCase { I, II, III, IV };
std::string to_string(TailCase c);

struct TailBoundReport {
    std::uint64_t q = 2;
    unsigned d1 = 1;
    unsigned d2 = 2;
    bool multiple = false;
    TailCase tail_case = TailCase::I;
    /// The number appearing in Heden's inequality for this case.
    Int heden_bound;
    /// Case (ii) reads u1 > 2q^{d2-d1}; all other cases are ">=".
    bool heden_strict = false;
    /// Case (ii) with d1 | d2 also allows u1 = [d2;1]_q / [d1;1]_q.
    std::optional<Int> heden_exception;
    Int improved_bound;
    /// Case (ii) with d1 not dividing d2-d1 only:
    /// q*q^{d2-d1} + ceil((q^{d2-d1+1}-1)/(q^{d1}-1)), and
    /// the value of the same expression with exponent d2+1 in place of
    /// d2-d1+1 for comparison.
    std::optional<Int> b_free_bound;
    std::optional<Int> b_free_bound_literal;
    std::string attained_by;

    /// Smallest u1 allowed by Heden's statement.
    Int heden_minimum() const;
};

TailBoundReport heden_tail_bound(std::uint64_t q, unsigned d1, unsigned d2, bool multiple);

}  // namespace divsets

#endif  // DIVSETS_CRITERIA_HPP
