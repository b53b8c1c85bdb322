#ifndef DIVSETS_SPECTRUM_HPP
#define DIVSETS_SPECTRUM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divsets/constructions.hpp"
#include "divsets/criteria.hpp"

namespace divsets {

struct SpectrumEntry {
    enum class Verdict { Excluded, OpenPossible, Constructible };

    Int n;
    Verdict verdict = Verdict::OpenPossible;
    ExclusionVerdict exclusion;
    std::optional<ConstructionRecipe> recipe;
};

std::string to_string(SpectrumEntry::Verdict v);

struct SpectrumOptions {
    bool use_lp = false;
    unsigned vmin = 0;
    unsigned vmax = 0;
    bool include_triples = false;
};

struct SpectrumReport {
    std::uint64_t q = 2;
    unsigned k = 1;
    unsigned r = 1;
    Int nmax;
    SpectrumOptions options;
    /// One entry per n in [1, nmax], ascending.
    std::vector<SpectrumEntry> entries;
    /// Largest excluded n <= nmax; a lower bound on F_q(k, r) when present.
    std::optional<Int> largest_excluded;

    std::vector<Int> not_excluded() const;
    std::vector<Int> with_verdict(SpectrumEntry::Verdict v) const;
};

/// Sieves n = 1..nmax: minimum cardinality, average bound, quadratic
/// criterion, then (optionally) the counting LP over [vmin, vmax]. The first
/// criterion that fires is recorded.
SpectrumReport admissible_set(std::uint64_t q, unsigned k, unsigned r, const Int& nmax,
                              const SpectrumOptions& options = {});

struct Constructible {
    /// Sizes of the two generating constructions: the smallest q^r-divisible
    /// spread and the lifted MRD set.
    Int spread_size;
    Int mrd_size;
    unsigned spread_layers = 0;
    /// n -> (copies of the spread, copies of the MRD set), fewest spreads first.
    std::map<Int, std::pair<unsigned, unsigned>> witnesses;
    Int gcd;
    /// Largest integer not representable when gcd == 1.
    std::optional<Int> frobenius;

    ConstructionRecipe recipe(std::uint64_t q, unsigned k, unsigned r, const Int& n) const;
};

Constructible constructible_set(std::uint64_t q, unsigned k, unsigned r, const Int& nmax);

/// Merges the sieve with the constructible semigroup. Throws std::logic_error
/// if a constructible n is excluded.
SpectrumReport report(std::uint64_t q, unsigned k, unsigned r, const Int& nmax, const SpectrumOptions& options = {});

nlohmann::json to_json(const SpectrumReport& rep);
/// Aligned text table with one line per n plus a summary.
std::string format_table(const SpectrumReport& rep);

}  // namespace divsets

#endif  // DIVSETS_SPECTRUM_HPP
