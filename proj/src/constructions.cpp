#include "divsets/constructions.hpp"

#include <stdexcept>

namespace divsets {

namespace {

std::uint64_t power_or_cap(std::uint64_t base, unsigned exponent, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (out > cap / base) return cap + 1;
        out *= base;
    }
    return out;
}

}  // namespace

SubspaceSet spread(const Field& f, unsigned k, unsigned s, std::uint64_t max_members) {
    if (k < 1) throw std::invalid_argument("spread: k must be at least 1");
    if (s < 2) throw std::invalid_argument("spread: s must be at least 2");
    const ExtensionField ext(f, k, max_members);
    const std::uint64_t big_q = ext.size();
    std::uint64_t members = 0;
    for (unsigned lead = 0; lead < s; ++lead) {
        members += power_or_cap(big_q, s - 1 - lead, max_members);
        if (members > max_members)
            throw std::length_error("spread(" + std::to_string(f.order()) + "," + std::to_string(k) + "," +
                                    std::to_string(s) + ") exceeds the member cap");
    }

    std::vector<GFMatrix> blocks;
    blocks.reserve(big_q);
    for (std::uint64_t i = 0; i < big_q; ++i) blocks.push_back(mult_matrix(ext, ext.element(i)));

    std::vector<Subspace> out;
    out.reserve(members);
    // Projective points of GF(q^k)^s with first nonzero coordinate 1.
    std::vector<std::uint64_t> coords(s);
    for (unsigned lead = 0; lead < s; ++lead) {
        std::fill(coords.begin(), coords.end(), 0);
        coords[lead] = 1;
        const std::uint64_t tails = power_or_cap(big_q, s - 1 - lead, max_members);
        for (std::uint64_t t = 0; t < tails; ++t) {
            if (t > 0) {
                std::size_t pos = s - 1;
                while (++coords[pos] == big_q) {
                    coords[pos] = 0;
                    --pos;
                }
            }
            GFMatrix gen = blocks[coords[0]];
            for (unsigned i = 1; i < s; ++i) gen = hstack(gen, blocks[coords[i]]);
            out.push_back(canonicalize(gen));
        }
    }
    return SubspaceSet(f, std::size_t{k} * s, k, std::move(out));
}

SubspaceSet lifted_mrd(const Field& f, unsigned k, unsigned r, std::uint64_t max_members) {
    if (k < 1 || r < 1) throw std::invalid_argument("lifted_mrd: k and r must be at least 1");
    const ExtensionField ext(f, k + r, max_members);
    const GFMatrix identity = GFMatrix::identity(f, k);
    std::vector<Subspace> out;
    out.reserve(ext.size());
    for (std::uint64_t i = 0; i < ext.size(); ++i) {
        // Keep rows 0..k-1 of M(alpha).
        const GFMatrix punctured = top_rows(mult_matrix(ext, ext.element(i)), k);
        out.push_back(canonicalize(hstack(identity, punctured)));
    }
    return SubspaceSet(f, 2 * std::size_t{k} + r, k, std::move(out));
}

SubspaceSet direct_sum(const SubspaceSet& left, const SubspaceSet& right) {
    if (!(left.field() == right.field())) throw std::invalid_argument("direct_sum: operands over different fields");
    if (left.member_dim() != right.member_dim())
        throw std::invalid_argument("direct_sum: operands with different member dimension");
    if (!is_span_restricted(left) || !is_span_restricted(right))
        throw std::invalid_argument("direct_sum: operands must be span-restricted");
    const Field& f = left.field();
    const std::size_t k = left.member_dim();
    const std::size_t v1 = left.ambient_dim();
    const std::size_t v2 = right.ambient_dim();
    std::vector<Subspace> out;
    out.reserve(left.size() + right.size());
    for (const Subspace& u : left) out.push_back(canonicalize(hstack(u.generator(), GFMatrix(f, k, v2))));
    for (const Subspace& u : right) out.push_back(canonicalize(hstack(GFMatrix(f, k, v1), u.generator())));
    return SubspaceSet(f, v1 + v2, k, std::move(out));
}

ConstructionRecipe ConstructionRecipe::make_spread(std::uint64_t q, unsigned k, unsigned s) {
    return {Kind::Spread, q, k, s, {}};
}

ConstructionRecipe ConstructionRecipe::make_lifted_mrd(std::uint64_t q, unsigned k, unsigned r) {
    return {Kind::LiftedMrd, q, k, r, {}};
}

ConstructionRecipe ConstructionRecipe::make_sum(std::vector<ConstructionRecipe> parts) {
    if (parts.empty()) throw std::invalid_argument("a direct sum needs at least one part");
    const std::uint64_t q = parts.front().q;
    const unsigned k = parts.front().k;
    for (const auto& p : parts)
        if (p.q != q || p.k != k) throw std::invalid_argument("direct sum parts must share q and k");
    return {Kind::DirectSum, q, k, 0, std::move(parts)};
}

Int ConstructionRecipe::cardinality() const {
    switch (kind) {
        case Kind::Spread: return gauss_number(q, k * param) / gauss_number(q, k);
        case Kind::LiftedMrd: return ipow(q, k + param);
        case Kind::DirectSum: {
            Int total = 0;
            for (const auto& p : parts) total += p.cardinality();
            return total;
        }
    }
    return 0;
}

std::string ConstructionRecipe::describe() const {
    const std::string qk = "q=" + std::to_string(q) + ",k=" + std::to_string(k);
    switch (kind) {
        case Kind::Spread: return "spread(" + qk + ",s=" + std::to_string(param) + ")";
        case Kind::LiftedMrd: return "lifted_mrd(" + qk + ",r=" + std::to_string(param) + ")";
        case Kind::DirectSum: {
            std::string out = "sum(";
            for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i].describe();
            return out + ")";
        }
    }
    return "unknown";
}

SubspaceSet materialize(const ConstructionRecipe& recipe) {
    const Field f(recipe.q);
    switch (recipe.kind) {
        case ConstructionRecipe::Kind::Spread: return spread(f, recipe.k, recipe.param);
        case ConstructionRecipe::Kind::LiftedMrd: return lifted_mrd(f, recipe.k, recipe.param);
        case ConstructionRecipe::Kind::DirectSum: {
            SubspaceSet acc = materialize(recipe.parts.front());
            for (std::size_t i = 1; i < recipe.parts.size(); ++i) acc = direct_sum(acc, materialize(recipe.parts[i]));
            return acc;
        }
    }
    throw std::logic_error("unknown recipe kind");
}

}  // namespace divsets
