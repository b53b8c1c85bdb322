#ifndef DIVSETS_SUBSPACE_SETS_HPP
#define DIVSETS_SUBSPACE_SETS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "divsets/algebra.hpp"

namespace divsets {

/// Thrown when rows handed to canonicalize do not have full rank.
class RankError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an incidence spectrum contradicts a classification lemma.
class InconsistentSpectrum : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A k-subspace of GF(q)^v, stored as its RREF generator matrix.
class Subspace {
public:
    /// Canonical form of the row space; throws RankError if the rows are
    /// linearly dependent.
    static Subspace from_rows(const GFMatrix& rows);

    std::size_t ambient_dim() const noexcept { return generator_.cols(); }
    std::size_t dim() const noexcept { return generator_.rows(); }
    const GFMatrix& generator() const noexcept { return generator_; }
    const Field& field() const noexcept { return generator_.field(); }

    /// True if the functional annihilates every generator row.
    bool annihilated_by(std::span<const Elem> functional) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.generator_ == b.generator_; }
    friend bool operator<(const Subspace& a, const Subspace& b) {
        return a.generator_.data() < b.generator_.data();
    }

private:
    explicit Subspace(GFMatrix generator) : generator_(std::move(generator)) {}
    GFMatrix generator_;
};

Subspace canonicalize(const GFMatrix& rows);

/// Equidimensional set of distinct k-subspaces of GF(q)^v, in insertion order.
class SubspaceSet {
public:
    /// Throws std::invalid_argument on mismatched q, v, k or duplicates.
    SubspaceSet(Field field, std::size_t v, std::size_t k, std::vector<Subspace> members);

    const Field& field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return v_; }
    std::size_t member_dim() const noexcept { return k_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<Subspace>& members() const noexcept { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    Field field_;
    std::size_t v_;
    std::size_t k_;
    std::vector<Subspace> members_;
};

bool pairwise_disjoint(const SubspaceSet& s);

struct Restriction {
    SubspaceSet set;
    std::size_t effective_v;
};

/// Re-coordinatizes every member in the RREF basis of the joint span.
Restriction span_and_restrict(const SubspaceSet& s);
bool is_span_restricted(const SubspaceSet& s);

/// a_i = number of hyperplanes containing exactly i members.
struct IncidenceSpectrum {
    std::size_t v = 0;
    std::size_t n = 0;
    std::map<std::size_t, Int> counts;

    Int total() const;
    Int at(std::size_t i) const;
    friend bool operator==(const IncidenceSpectrum&, const IncidenceSpectrum&) = default;
};

/// b_d = number of ordered triples of distinct members spanning dimension d,
/// for d in [2k, 3k]. Empty when n < 3.
struct TripleSpectrum {
    std::size_t n = 0;
    std::map<std::size_t, Int> counts;

    Int total() const;
    Int at(std::size_t d) const;
    friend bool operator==(const TripleSpectrum&, const TripleSpectrum&) = default;
};

inline constexpr std::uint64_t default_hyperplane_cap = 1'000'000;

/// Enumerates the [v;1]_q hyperplanes of the declared ambient space as
/// functionals whose first nonzero coordinate is 1. Throws std::length_error
/// above `max_hyperplanes`.
IncidenceSpectrum hyperplane_spectrum(const SubspaceSet& s,
                                      std::uint64_t max_hyperplanes = default_hyperplane_cap);

TripleSpectrum triple_spectrum(const SubspaceSet& s);

/// Largest r with q^r | n - i for every i with a_i > 0, where i = n is
/// ignored. Returns 0 when no positive r works.
unsigned divisibility_exponent(const IncidenceSpectrum& a, std::uint64_t q);

/// Span-restricts first, then measures. Throws std::invalid_argument for an
/// empty or non-disjoint set.
unsigned divisibility_exponent(const SubspaceSet& s,
                               std::uint64_t max_hyperplanes = default_hyperplane_cap);

struct IdentityCheck {
    std::string name;
    Int lhs;
    Int rhs;
    bool skipped = false;
    bool holds = false;
};

/// The five double-counting identities relating a_i, b_d and Gaussian
/// numbers. An identity whose Gaussian argument would be negative is only
/// evaluated when its coefficient vanishes; otherwise it fails.
std::vector<IdentityCheck> counting_identities(const IncidenceSpectrum& a, const TripleSpectrum& b,
                                               std::uint64_t q, std::size_t v, std::size_t k,
                                               std::size_t n);
bool check_counting_identities(const IncidenceSpectrum& a, const TripleSpectrum& b, std::uint64_t q,
                               std::size_t v, std::size_t k, std::size_t n);

enum class SpectrumClass { Spread, PartitionOf2k, Unclassified };

struct Classification {
    SpectrumClass kind = SpectrumClass::Unclassified;
    /// Spread: v = s*k.
    std::size_t layers = 0;
    /// Spread: members per hyperplane, (q^{v-k}-1)/(q^k-1).
    Int incidence = 0;
};

std::string to_string(SpectrumClass c);

/// Applies the single-hyperplane-type and q^k+1 classifications. Spectra of
/// non-spanning sets (a_n > 0) are Unclassified. Throws InconsistentSpectrum
/// if a spectrum matches a hypothesis but not its conclusion.
Classification classify_spectrum(const IncidenceSpectrum& a, std::uint64_t q, std::size_t v,
                                 std::size_t k);

/// Number of members covering each projective point of GF(q)^v, indexed as in
/// point_index. Requires [v;1]_q <= max_points.
std::vector<std::uint32_t> point_cover_counts(const SubspaceSet& s,
                                              std::uint64_t max_points = default_hyperplane_cap);

/// Index of the projective point spanned by a nonzero vector: points with
/// leading coordinate at position p come after all points led earlier, and
/// are ordered by their remaining coordinates read as a base-q number.
std::uint64_t point_index(const Field& f, std::span<const Elem> vec);
std::vector<Elem> point_from_index(const Field& f, std::size_t v, std::uint64_t index);

// Subspace-set file format.
std::string write_subspace_set(const SubspaceSet& s);
SubspaceSet read_subspace_set(std::string_view text);

}  // namespace divsets

#endif  // DIVSETS_SUBSPACE_SETS_HPP
