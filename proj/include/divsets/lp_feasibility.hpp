#ifndef DIVSETS_LP_FEASIBILITY_HPP
#define DIVSETS_LP_FEASIBILITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divsets/algebra.hpp"

namespace divsets {

struct LpVariable {
    enum class Kind { Incidence, Triple };
    Kind kind;
    /// Hyperplane incidence i for a_i, span dimension d for b_d.
    std::size_t index;
    std::string label() const;
};

/// sum_j coefficients[j] * x_j = rhs
struct LpConstraint {
    std::string label;
    std::vector<Rat> coefficients;
    Rat rhs;
};

/// Nonnegative solutions of the double-counting identities for given
/// (q, k, r, n, v). Incidence variables are a_i for i = n - h q^r, h >= 1
/// (h >= 0 when the full hyperplane is admitted).
struct LinearSystem {
    std::uint64_t q = 2;
    unsigned k = 1;
    unsigned r = 1;
    Int n;
    unsigned v = 0;
    bool include_triples = false;
    std::vector<LpVariable> variables;
    std::vector<LpConstraint> constraints;

    std::optional<std::size_t> find(LpVariable::Kind kind, std::size_t index) const;
};

/// Throws std::invalid_argument if n < 1, or n >= 2 with v < 2k.
LinearSystem build_system(std::uint64_t q, unsigned k, unsigned r, const Int& n, unsigned v,
                          bool include_triples, bool admit_full_hyperplane = false);

enum class FeasibilityStatus { Feasible, Infeasible, NodeLimit };
std::string to_string(FeasibilityStatus s);

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::Infeasible;
    /// Feasible: a point satisfying every constraint exactly.
    std::vector<Rat> point;
    /// Optimum of the phase-one objective (sum of artificial variables).
    Rat phase_one_optimum;
    /// Infeasible at the LP level: y with y^T A <= 0 and y^T b > 0.
    std::vector<Rat> farkas;
    std::size_t nodes = 0;

    bool feasible() const noexcept { return status == FeasibilityStatus::Feasible; }
};

/// Exact phase-one simplex with Bland's rule.
FeasibilityResult lp_feasible(const LinearSystem& sys);

inline constexpr std::size_t default_node_limit = 100'000;

/// Depth-first branch and bound over integer points, pruned by LP relaxations.
FeasibilityResult ilp_feasible(const LinearSystem& sys, std::size_t node_limit = default_node_limit);

/// Exact substitution check: nonnegative and every constraint holds.
bool satisfies(const LinearSystem& sys, std::span<const Rat> point);
/// Checks y^T A <= 0 componentwise and y^T b > 0.
bool certifies_infeasibility(const LinearSystem& sys, std::span<const Rat> farkas);

/// Per-variable upper bounds implied by rows with nonnegative coefficients
/// and right-hand side; nullopt where none applies.
std::vector<std::optional<Int>> variable_upper_bounds(const LinearSystem& sys);

struct DimensionResult {
    unsigned v;
    FeasibilityResult lp;
    std::optional<FeasibilityResult> ilp;

    FeasibilityStatus verdict() const { return ilp ? ilp->status : lp.status; }
};

/// Results for a finite range of ambient dimensions. Says nothing about
/// dimensions outside the range.
struct DimensionScan {
    unsigned vmin = 0;
    unsigned vmax = 0;
    std::vector<DimensionResult> results;
    /// Dimensions in the range below the minimum the system accepts.
    std::vector<unsigned> skipped;

    std::vector<unsigned> feasible_dims() const;
    bool excluded_on_range() const;
    bool undecided() const;
    std::string summary() const;
};

DimensionScan scan_dimensions(std::uint64_t q, unsigned k, unsigned r, const Int& n, unsigned vmin,
                              unsigned vmax, bool include_triples, bool use_ilp = false,
                              std::size_t node_limit = default_node_limit);

nlohmann::json to_json(const LinearSystem& sys);
nlohmann::json to_json(const LinearSystem& sys, const FeasibilityResult& result);

}  // namespace divsets

#endif  // DIVSETS_LP_FEASIBILITY_HPP
