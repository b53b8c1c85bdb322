#ifndef DIVSETS_CONSTRUCTIONS_HPP
#define DIVSETS_CONSTRUCTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "divsets/subspace_sets.hpp"

namespace divsets {

inline constexpr std::uint64_t default_member_cap = std::uint64_t{1} << 20;

/// k-spread of GF(q)^{sk}: every point of PG(s-1, q^k) expanded into the
/// k-subspace with generator [M(b_1) | ... | M(b_s)].
SubspaceSet spread(const Field& f, unsigned k, unsigned s, std::uint64_t max_members = default_member_cap);

/// Lifted punctured MRD code: rowspace(I_k | first k rows of M(alpha)) for
/// every alpha in GF(q^{k+r}). Lives in GF(q)^{2k+r}, has q^{k+r} members and
/// covers exactly the points outside {x : x_1 = ... = x_k = 0}.
SubspaceSet lifted_mrd(const Field& f, unsigned k, unsigned r, std::uint64_t max_members = default_member_cap);

/// Block-diagonal union: `left` in the first v1 coordinates, `right` in the
/// last v2. Both operands must share q and k and be span-restricted.
SubspaceSet direct_sum(const SubspaceSet& left, const SubspaceSet& right);

struct ConstructionRecipe {
    enum class Kind { Spread, LiftedMrd, DirectSum };

    Kind kind = Kind::Spread;
    std::uint64_t q = 2;
    unsigned k = 1;
    /// s for Spread, r for LiftedMrd, unused for DirectSum.
    unsigned param = 0;
    std::vector<ConstructionRecipe> parts;

    static ConstructionRecipe make_spread(std::uint64_t q, unsigned k, unsigned s);
    static ConstructionRecipe make_lifted_mrd(std::uint64_t q, unsigned k, unsigned r);
    static ConstructionRecipe make_sum(std::vector<ConstructionRecipe> parts);

    Int cardinality() const;
    std::string describe() const;
};

SubspaceSet materialize(const ConstructionRecipe& recipe);

}  // namespace divsets

#endif  // DIVSETS_CONSTRUCTIONS_HPP
