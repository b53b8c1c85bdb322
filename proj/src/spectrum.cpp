#include "divsets/spectrum.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "divsets/lp_feasibility.hpp"

namespace divsets {

std::string to_string(SpectrumEntry::Verdict v) {
    switch (v) {
        case SpectrumEntry::Verdict::Excluded: return "excluded";
        case SpectrumEntry::Verdict::OpenPossible: return "open";
        case SpectrumEntry::Verdict::Constructible: return "constructible";
    }
    return "unknown";
}

std::vector<Int> SpectrumReport::not_excluded() const {
    std::vector<Int> out;
    for (const auto& e : entries)
        if (e.verdict != SpectrumEntry::Verdict::Excluded) out.push_back(e.n);
    return out;
}

std::vector<Int> SpectrumReport::with_verdict(SpectrumEntry::Verdict v) const {
    std::vector<Int> out;
    for (const auto& e : entries)
        if (e.verdict == v) out.push_back(e.n);
    return out;
}

namespace {

ExclusionVerdict sieve(std::uint64_t q, unsigned k, unsigned r, const Int& n, const Int& minimum,
                       const IntervalExclusions& intervals, const SpectrumOptions& options) {
    if (n < minimum) return {reason::BelowMinimum{minimum}};
    if (auto v = average_excludes(q, k, r, n); v.excluded()) return v;
    if (auto v = quadratic_excludes(q, k, r, n); v.excluded()) {
        // Report the closed interval when the witness m is one of them.
        const auto& quad = std::get<reason::Quadratic>(v.reason);
        for (const auto& iv : intervals.intervals)
            if (iv.m == quad.m && iv.contains(n)) return {reason::Interval{iv.m, iv.lo, iv.hi}};
        return v;
    }
    if (options.use_lp) {
        const DimensionScan scan = scan_dimensions(q, k, r, n, options.vmin, options.vmax, options.include_triples);
        if (scan.excluded_on_range()) return {reason::LpRange{options.vmin, options.vmax}};
    }
    return {};
}

}  // namespace

SpectrumReport admissible_set(std::uint64_t q, unsigned k, unsigned r, const Int& nmax, const SpectrumOptions& options) {
    if (nmax < 1) throw std::invalid_argument("nmax must be positive");
    if (options.use_lp && options.vmin > options.vmax) throw std::invalid_argument("empty dimension range");
    SpectrumReport rep;
    rep.q = q;
    rep.k = k;
    rep.r = r;
    rep.nmax = nmax;
    rep.options = options;
    const Int minimum = min_cardinality(q, k, r);
    const IntervalExclusions intervals = excluded_intervals(q, k, r);
    for (Int n = 1; n <= nmax; ++n) {
        SpectrumEntry e;
        e.n = n;
        e.exclusion = sieve(q, k, r, n, minimum, intervals, options);
        if (e.exclusion.excluded()) {
            e.verdict = SpectrumEntry::Verdict::Excluded;
            rep.largest_excluded = n;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

namespace {

void refresh_largest_excluded(SpectrumReport& rep) {
    rep.largest_excluded.reset();
    for (const auto& e : rep.entries)
        if (e.verdict == SpectrumEntry::Verdict::Excluded) rep.largest_excluded = e.n;
}

}  // namespace

ConstructionRecipe Constructible::recipe(std::uint64_t q, unsigned k, unsigned r, const Int& n) const {
    const auto it = witnesses.find(n);
    if (it == witnesses.end()) throw std::invalid_argument("n = " + n.str() + " is not constructible here");
    std::vector<ConstructionRecipe> parts;
    for (unsigned i = 0; i < it->second.first; ++i) parts.push_back(ConstructionRecipe::make_spread(q, k, spread_layers));
    for (unsigned i = 0; i < it->second.second; ++i) parts.push_back(ConstructionRecipe::make_lifted_mrd(q, k, r));
    if (parts.size() == 1) return parts.front();
    return ConstructionRecipe::make_sum(std::move(parts));
}

Constructible constructible_set(std::uint64_t q, unsigned k, unsigned r, const Int& nmax) {
    Constructible c;
    // The spread of GF(q)^{sk} is q^{(s-1)k}-divisible; take the fewest layers reaching q^r.
    c.spread_layers = (r + k - 1) / k + 1;
    c.spread_size = gauss_number(q, c.spread_layers * k) / gauss_number(q, k);
    c.mrd_size = ipow(q, k + r);
    c.gcd = boost::multiprecision::gcd(c.spread_size, c.mrd_size);
    if (c.gcd == 1) c.frobenius = c.spread_size * c.mrd_size - c.spread_size - c.mrd_size;
    for (unsigned a = 0; Int(a) * c.spread_size <= nmax; ++a)
        for (unsigned b = 0; Int(a) * c.spread_size + Int(b) * c.mrd_size <= nmax; ++b) {
            if (a == 0 && b == 0) continue;
            c.witnesses.emplace(Int(a) * c.spread_size + Int(b) * c.mrd_size, std::make_pair(a, b));
        }
    return c;
}

SpectrumReport report(std::uint64_t q, unsigned k, unsigned r, const Int& nmax, const SpectrumOptions& options) {
    SpectrumReport rep = admissible_set(q, k, r, nmax, options);
    const Constructible c = constructible_set(q, k, r, nmax);
    for (auto& e : rep.entries) {
        if (!c.witnesses.contains(e.n)) continue;
        // An LP verdict only covers the scanned dimensions, so a construction outranks it.
        if (std::holds_alternative<reason::LpRange>(e.exclusion.reason)) e.exclusion = {};
        if (e.exclusion.excluded())
            throw std::logic_error("constructible n = " + e.n.str() + " was excluded: " + e.exclusion.describe());
        e.verdict = SpectrumEntry::Verdict::Constructible;
        e.recipe = c.recipe(q, k, r, e.n);
    }
    refresh_largest_excluded(rep);
    return rep;
}

namespace {

nlohmann::json reason_json(const ExclusionVerdict& v) {
    nlohmann::json j;
    j["criterion"] = v.tag();
    std::visit(
        [&j](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, reason::BelowMinimum>) {
                j["minimum"] = r.minimum.str();
            } else if constexpr (std::is_same_v<T, reason::AverageBound>) {
                j["residue"] = r.residue.str();
            } else if constexpr (std::is_same_v<T, reason::Quadratic>) {
                j["m"] = r.m.str();
                j["tau"] = r.tau.str();
            } else if constexpr (std::is_same_v<T, reason::Interval>) {
                j["m"] = r.m.str();
                j["lo"] = r.lo.str();
                j["hi"] = r.hi.str();
            } else if constexpr (std::is_same_v<T, reason::LpRange>) {
                j["vmin"] = r.vmin;
                j["vmax"] = r.vmax;
            }
        },
        v.reason);
    return j;
}

std::string join(const std::vector<Int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + xs[i].str();
    return out;
}

}  // namespace

nlohmann::json to_json(const SpectrumReport& rep) {
    nlohmann::json j;
    j["q"] = rep.q;
    j["k"] = rep.k;
    j["r"] = rep.r;
    j["nmax"] = rep.nmax.str();
    j["lp"] = rep.options.use_lp;
    if (rep.options.use_lp) {
        j["vmin"] = rep.options.vmin;
        j["vmax"] = rep.options.vmax;
    }
    j["entries"] = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        nlohmann::json x;
        x["n"] = e.n.str();
        x["verdict"] = to_string(e.verdict);
        if (e.exclusion.excluded()) x["reason"] = reason_json(e.exclusion);
        if (e.recipe) x["recipe"] = e.recipe->describe();
        j["entries"].push_back(std::move(x));
    }
    j["admissible"] = nlohmann::json::array();
    for (const Int& n : rep.not_excluded()) j["admissible"].push_back(n.str());
    j["largest_excluded"] = rep.largest_excluded ? nlohmann::json(rep.largest_excluded->str()) : nlohmann::json();
    return j;
}

std::string format_table(const SpectrumReport& rep) {
    std::ostringstream out;
    out << "q=" << rep.q << " k=" << rep.k << " r=" << rep.r << " nmax=" << rep.nmax
        << (rep.options.use_lp ? " (with LP on v in [" + std::to_string(rep.options.vmin) + ", " +
                                     std::to_string(rep.options.vmax) + "])"
                               : " (analytic criteria)")
        << "\n";
    out << std::left << std::setw(6) << "n" << std::setw(15) << "verdict" << "detail\n";
    for (const auto& e : rep.entries) {
        std::string detail;
        if (e.exclusion.excluded())
            detail = e.exclusion.describe();
        else if (e.recipe)
            detail = e.recipe->describe();
        out << std::left << std::setw(6) << e.n.str() << std::setw(15) << to_string(e.verdict) << detail << "\n";
    }
    out << "admissible: " << join(rep.not_excluded()) << "\n";
    out << "constructible: " << join(rep.with_verdict(SpectrumEntry::Verdict::Constructible)) << "\n";
    out << "open: " << join(rep.with_verdict(SpectrumEntry::Verdict::OpenPossible)) << "\n";
    out << "largest excluded: " << (rep.largest_excluded ? rep.largest_excluded->str() : "none") << "\n";
    return out.str();
}

}  // namespace divsets
