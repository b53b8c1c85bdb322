#include "divsets/subspace_sets.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace divsets {

// ---------------------------------------------------------------------------
// Subspace and SubspaceSet

Subspace Subspace::from_rows(const GFMatrix& rows) {
    if (rows.rows() == 0) throw std::invalid_argument("a subspace needs at least one generator row");
    RrefResult r = rref(rows);
    if (r.rank != rows.rows())
        throw RankError("generator rows have rank " + std::to_string(r.rank) + ", expected " +
                        std::to_string(rows.rows()));
    return Subspace(std::move(r.matrix));
}

Subspace canonicalize(const GFMatrix& rows) { return Subspace::from_rows(rows); }

bool Subspace::annihilated_by(std::span<const Elem> functional) const {
    const Field& f = field();
    for (std::size_t r = 0; r < generator_.rows(); ++r) {
        Elem acc = 0;
        const auto row = generator_.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0 && functional[c] != 0) acc = f.add(acc, f.mul(row[c], functional[c]));
        if (acc != 0) return false;
    }
    return true;
}

SubspaceSet::SubspaceSet(Field field, std::size_t v, std::size_t k, std::vector<Subspace> members)
    : field_(std::move(field)), v_(v), k_(k), members_(std::move(members)) {
    if (k_ == 0) throw std::invalid_argument("member dimension k must be positive");
    for (const Subspace& u : members_) {
        if (!(u.field() == field_)) throw std::invalid_argument("member over a different field");
        if (u.ambient_dim() != v_) throw std::invalid_argument("member in a different ambient dimension");
        if (u.dim() != k_) throw std::invalid_argument("member of dimension other than k");
    }
    std::vector<const Subspace*> sorted;
    sorted.reserve(members_.size());
    for (const Subspace& u : members_) sorted.push_back(&u);
    std::sort(sorted.begin(), sorted.end(), [](const Subspace* a, const Subspace* b) { return *a < *b; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (*sorted[i - 1] == *sorted[i]) throw std::invalid_argument("duplicate member in subspace set");
}

bool pairwise_disjoint(const SubspaceSet& s) {
    const auto& m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (rank(vstack(m[i].generator(), m[j].generator())) != 2 * s.member_dim()) return false;
    return true;
}

namespace {

std::uint64_t checked_count(std::uint64_t q, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) out *= q;
    return out;
}

// Base-q increment with the digit at `last` varying fastest.
void advance(std::vector<Elem>& digits, std::uint64_t q, std::size_t last) {
    std::size_t pos = last;
    while (++digits[pos] == q) {
        digits[pos] = 0;
        --pos;
    }
}

GFMatrix stacked_generators(const SubspaceSet& s) {
    std::vector<Elem> data;
    data.reserve(s.size() * s.member_dim() * s.ambient_dim());
    for (const Subspace& u : s) data.insert(data.end(), u.generator().data().begin(), u.generator().data().end());
    return GFMatrix(s.field(), s.size() * s.member_dim(), s.ambient_dim(), std::move(data));
}

}  // namespace

Restriction span_and_restrict(const SubspaceSet& s) {
    if (s.empty()) return {SubspaceSet(s.field(), 0, s.member_dim(), {}), 0};
    const RrefResult basis = rref(stacked_generators(s));
    // Coordinates with respect to an RREF basis are the entries in the pivot columns.
    std::vector<Subspace> members;
    members.reserve(s.size());
    for (const Subspace& u : s) members.push_back(canonicalize(select_columns(u.generator(), basis.pivots)));
    return {SubspaceSet(s.field(), basis.rank, s.member_dim(), std::move(members)), basis.rank};
}

bool is_span_restricted(const SubspaceSet& s) {
    if (s.empty()) return s.ambient_dim() == 0;
    return rank(stacked_generators(s)) == s.ambient_dim();
}

// ---------------------------------------------------------------------------
// Spectra

Int IncidenceSpectrum::total() const {
    Int t = 0;
    for (const auto& [i, c] : counts) t += c;
    return t;
}

Int IncidenceSpectrum::at(std::size_t i) const {
    auto it = counts.find(i);
    return it == counts.end() ? Int(0) : it->second;
}

Int TripleSpectrum::total() const {
    Int t = 0;
    for (const auto& [d, c] : counts) t += c;
    return t;
}

Int TripleSpectrum::at(std::size_t d) const {
    auto it = counts.find(d);
    return it == counts.end() ? Int(0) : it->second;
}

IncidenceSpectrum hyperplane_spectrum(const SubspaceSet& s, std::uint64_t max_hyperplanes) {
    const std::size_t v = s.ambient_dim();
    const std::uint64_t q = s.field().order();
    const Int total = gauss_number(q, static_cast<unsigned>(v));
    if (total > max_hyperplanes)
        throw std::length_error("GF(" + std::to_string(q) + ")^" + std::to_string(v) + " has " + total.str() +
                                " hyperplanes, above the cap of " + std::to_string(max_hyperplanes));

    std::vector<std::uint64_t> histogram(s.size() + 1, 0);
    std::vector<Elem> functional(v, 0);
    for (std::size_t lead = 0; lead < v; ++lead) {
        std::fill(functional.begin(), functional.end(), 0);
        functional[lead] = 1;
        const std::uint64_t tails = checked_count(q, v - 1 - lead);
        for (std::uint64_t t = 0; t < tails; ++t) {
            if (t > 0) advance(functional, q, v - 1);
            std::size_t contained = 0;
            for (const Subspace& u : s)
                if (u.annihilated_by(functional)) ++contained;
            ++histogram[contained];
        }
    }

    IncidenceSpectrum a;
    a.v = v;
    a.n = s.size();
    for (std::size_t i = 0; i < histogram.size(); ++i)
        if (histogram[i] != 0) a.counts[i] = histogram[i];
    return a;
}

TripleSpectrum triple_spectrum(const SubspaceSet& s) {
    TripleSpectrum b;
    b.n = s.size();
    if (s.size() < 3) return b;
    const std::size_t k = s.member_dim();
    for (std::size_t d = 2 * k; d <= 3 * k; ++d) b.counts[d] = 0;
    std::map<std::size_t, std::uint64_t> unordered;
    const auto& m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const GFMatrix pair = vstack(m[i].generator(), m[j].generator());
            for (std::size_t l = j + 1; l < m.size(); ++l) ++unordered[rank(vstack(pair, m[l].generator()))];
        }
    for (const auto& [d, c] : unordered) b.counts[d] = Int(c) * 6;
    return b;
}

unsigned divisibility_exponent(const IncidenceSpectrum& a, std::uint64_t q) {
    Int g = 0;
    for (const auto& [i, c] : a.counts) {
        if (c == 0 || i == a.n) continue;
        g = boost::multiprecision::gcd(g, Int(a.n) - Int(i));
    }
    if (g == 0) throw std::invalid_argument("spectrum has no hyperplane missing a member");
    unsigned r = 0;
    while (g % q == 0) {
        g /= q;
        ++r;
    }
    return r;
}

unsigned divisibility_exponent(const SubspaceSet& s, std::uint64_t max_hyperplanes) {
    if (s.empty()) throw std::invalid_argument("divisibility exponent of an empty set");
    if (!pairwise_disjoint(s)) throw std::invalid_argument("divisibility exponent requires pairwise disjoint members");
    const Restriction restricted = span_and_restrict(s);
    return divisibility_exponent(hyperplane_spectrum(restricted.set, max_hyperplanes), s.field().order());
}

std::vector<IdentityCheck> counting_identities(const IncidenceSpectrum& a, const TripleSpectrum& b,
                                               std::uint64_t q, std::size_t v, std::size_t k,
                                               std::size_t n) {
    const Int nn = n;
    const Int pairs = nn * (nn - 1);
    const Int triples = pairs * (nn - 2);
    // [m;1]_q scaled by coef; a negative m with nonzero coef has no meaning.
    auto scaled_gauss = [q](const Int& coef, long m) -> std::optional<Int> {
        if (coef == 0) return Int(0);
        if (m < 0) return std::nullopt;
        return coef * gauss_number(q, static_cast<unsigned>(m));
    };
    auto moment = [&a](unsigned order) {
        Int sum = 0;
        for (const auto& [i, c] : a.counts) {
            Int f = 1;
            for (unsigned t = 0; t < order; ++t) f *= Int(i) - t;
            sum += f * c;
        }
        return sum;
    };
    auto make = [](std::string name, Int lhs, std::optional<Int> rhs, bool skipped) {
        IdentityCheck check{std::move(name), std::move(lhs), rhs.value_or(-1), skipped, false};
        check.holds = rhs.has_value() && check.lhs == *rhs;
        return check;
    };
    const long sv = static_cast<long>(v);
    const long sk = static_cast<long>(k);

    std::vector<IdentityCheck> out;
    out.push_back(make("sum a_i = [v;1]", moment(0), scaled_gauss(1, sv), false));
    out.push_back(make("sum i a_i = n[v-k;1]", moment(1), scaled_gauss(nn, sv - sk), false));
    out.push_back(make("sum i(i-1) a_i = n(n-1)[v-2k;1]", moment(2), scaled_gauss(pairs, sv - 2 * sk), pairs == 0));

    std::optional<Int> weighted = Int(0);
    for (const auto& [d, c] : b.counts) {
        auto term = scaled_gauss(c, sv - static_cast<long>(d));
        if (!term) {
            weighted.reset();
            break;
        }
        *weighted += *term;
    }
    out.push_back(make("sum i(i-1)(i-2) a_i = sum b_d [v-d;1]", moment(3), weighted, triples == 0));
    out.push_back(make("sum b_d = n(n-1)(n-2)", b.total(), triples, triples == 0));
    return out;
}

bool check_counting_identities(const IncidenceSpectrum& a, const TripleSpectrum& b, std::uint64_t q,
                               std::size_t v, std::size_t k, std::size_t n) {
    const auto checks = counting_identities(a, b, q, v, k, n);
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

std::string to_string(SpectrumClass c) {
    switch (c) {
        case SpectrumClass::Spread: return "spread";
        case SpectrumClass::PartitionOf2k: return "partition-of-2k";
        case SpectrumClass::Unclassified: return "unclassified";
    }
    return "unknown";
}

Classification classify_spectrum(const IncidenceSpectrum& a, std::uint64_t q, std::size_t v, std::size_t k) {
    std::vector<std::size_t> support;
    for (const auto& [i, c] : a.counts)
        if (c != 0) support.push_back(i);
    const Int n = a.n;
    if (support.empty() || a.at(a.n) != 0 || a.n == 0) return {};

    const Int qk = ipow(q, static_cast<unsigned>(k));
    const Int points = gauss_number(q, static_cast<unsigned>(v));

    const bool q_divisible =
        std::all_of(support.begin(), support.end(), [&](std::size_t i) { return (n - Int(i)) % q == 0; });
    if (q_divisible && n == qk + 1) {
        if (v != 2 * k || n * gauss_number(q, static_cast<unsigned>(k)) != points)
            throw InconsistentSpectrum("q-divisible set of q^k+1 members does not partition GF(q)^{2k}");
        return {SpectrumClass::PartitionOf2k, 2, 1};
    }

    if (support.size() == 1 && support.front() > 0 && k < v) {
        const std::size_t r = support.front();
        if (v % k != 0 || v / k < 2)
            throw InconsistentSpectrum("single hyperplane type but k does not divide v");
        const Int expected_n = (ipow(q, static_cast<unsigned>(v)) - 1) / (qk - 1);
        const Int expected_r = (ipow(q, static_cast<unsigned>(v - k)) - 1) / (qk - 1);
        if (n != expected_n || Int(r) != expected_r || a.at(r) != points)
            throw InconsistentSpectrum("single hyperplane type inconsistent with a k-spread of GF(q)^v");
        return {SpectrumClass::Spread, v / k, expected_r};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Points

std::uint64_t point_index(const Field& f, std::span<const Elem> vec) {
    const std::uint64_t q = f.order();
    std::size_t lead = 0;
    while (lead < vec.size() && vec[lead] == 0) ++lead;
    if (lead == vec.size()) throw std::invalid_argument("the zero vector spans no point");
    const Elem scale = f.inv(vec[lead]);
    std::uint64_t offset = 0;
    for (std::size_t p = 0; p < lead; ++p) {
        std::uint64_t block = 1;
        for (std::size_t j = p + 1; j < vec.size(); ++j) block *= q;
        offset += block;
    }
    std::uint64_t tail = 0;
    for (std::size_t j = lead + 1; j < vec.size(); ++j) tail = tail * q + f.mul(vec[j], scale);
    return offset + tail;
}

std::vector<Elem> point_from_index(const Field& f, std::size_t v, std::uint64_t index) {
    const std::uint64_t q = f.order();
    for (std::size_t lead = 0; lead < v; ++lead) {
        std::uint64_t block = 1;
        for (std::size_t j = lead + 1; j < v; ++j) block *= q;
        if (index < block) {
            std::vector<Elem> vec(v, 0);
            vec[lead] = 1;
            for (std::size_t j = v; j-- > lead + 1;) {
                vec[j] = static_cast<Elem>(index % q);
                index /= q;
            }
            return vec;
        }
        index -= block;
    }
    throw std::out_of_range("point index out of range");
}

std::vector<std::uint32_t> point_cover_counts(const SubspaceSet& s, std::uint64_t max_points) {
    const std::uint64_t q = s.field().order();
    const std::size_t v = s.ambient_dim();
    const Int total = gauss_number(q, static_cast<unsigned>(v));
    if (total > max_points) throw std::length_error("too many points to enumerate");
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(total), 0);
    const Field& f = s.field();
    const std::size_t k = s.member_dim();
    std::vector<Elem> coeff(k), vec(v);
    for (const Subspace& u : s) {
        // Coefficient vectors with leading entry 1 hit every point of u once.
        for (std::size_t lead = 0; lead < k; ++lead) {
            std::fill(coeff.begin(), coeff.end(), 0);
            coeff[lead] = 1;
            const std::uint64_t tails = checked_count(q, k - 1 - lead);
            for (std::uint64_t t = 0; t < tails; ++t) {
                if (t > 0) advance(coeff, q, k - 1);
                std::fill(vec.begin(), vec.end(), 0);
                for (std::size_t r = 0; r < k; ++r) {
                    if (coeff[r] == 0) continue;
                    const auto row = u.generator().row(r);
                    for (std::size_t c = 0; c < v; ++c) vec[c] = f.add(vec[c], f.mul(coeff[r], row[c]));
                }
                ++counts[point_index(f, vec)];
            }
        }
    }
    return counts;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::string encode_entry(const Field& f, Elem x) {
    if (f.is_prime()) return std::to_string(x);
    const auto c = f.coefficients(x);
    std::string digits = "\"";
    for (std::size_t i = c.size(); i-- > 0;) digits += std::to_string(c[i]);
    return digits + "\"";
}

Elem decode_entry(const Field& f, const nlohmann::json& j) {
    if (f.is_prime()) {
        if (!j.is_number_unsigned()) throw std::invalid_argument("entries over a prime field must be integers");
        const auto x = j.get<std::uint64_t>();
        if (x >= f.order()) throw std::invalid_argument("entry " + std::to_string(x) + " outside GF(q)");
        return static_cast<Elem>(x);
    }
    if (!j.is_string()) throw std::invalid_argument("entries over GF(p^e) must be digit strings");
    const auto s = j.get<std::string>();
    if (s.size() != f.degree())
        throw std::invalid_argument("entry \"" + s + "\" must have " + std::to_string(f.degree()) + " digits");
    if (f.characteristic() > 10) throw std::invalid_argument("digit strings need characteristic at most 10");
    std::vector<std::uint32_t> c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[s.size() - 1 - i];
        if (ch < '0' || ch > '9') throw std::invalid_argument("entry \"" + s + "\" is not a digit string");
        c[i] = static_cast<std::uint32_t>(ch - '0');
    }
    return f.from_coefficients(c);
}

}  // namespace

std::string write_subspace_set(const SubspaceSet& s) {
    std::ostringstream out;
    out << "{\n"
        << "  \"q\": " << s.field().order() << ",\n"
        << "  \"v\": " << s.ambient_dim() << ",\n"
        << "  \"k\": " << s.member_dim() << ",\n"
        << "  \"subspaces\": [";
    for (std::size_t m = 0; m < s.size(); ++m) {
        const GFMatrix& g = s.members()[m].generator();
        out << (m == 0 ? "\n    [" : ",\n    [");
        for (std::size_t r = 0; r < g.rows(); ++r) {
            out << (r == 0 ? "[" : ", [");
            for (std::size_t c = 0; c < g.cols(); ++c) out << (c == 0 ? "" : ",") << encode_entry(s.field(), g(r, c));
            out << "]";
        }
        out << "]";
    }
    out << (s.empty() ? "]\n" : "\n  ]\n") << "}\n";
    return out.str();
}

SubspaceSet read_subspace_set(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("subspace-set file is not valid JSON: ") + e.what());
    }
    for (const char* key : {"q", "v", "k", "subspaces"})
        if (!doc.contains(key)) throw std::invalid_argument(std::string("subspace-set file lacks field \"") + key + "\"");
    if (!doc["q"].is_number_unsigned() || !doc["v"].is_number_unsigned() || !doc["k"].is_number_unsigned())
        throw std::invalid_argument("q, v and k must be nonnegative integers");
    if (!doc["subspaces"].is_array()) throw std::invalid_argument("\"subspaces\" must be an array");
    const Field f(doc["q"].get<std::uint64_t>());
    const auto v = doc["v"].get<std::size_t>();
    const auto k = doc["k"].get<std::size_t>();
    std::vector<Subspace> members;
    for (const auto& mat : doc["subspaces"]) {
        if (!mat.is_array() || mat.size() != k) throw std::invalid_argument("each subspace needs exactly k rows");
        GFMatrix g(f, k, v);
        for (std::size_t r = 0; r < k; ++r) {
            if (!mat[r].is_array() || mat[r].size() != v) throw std::invalid_argument("each row needs exactly v entries");
            for (std::size_t c = 0; c < v; ++c) g(r, c) = decode_entry(f, mat[r][c]);
        }
        members.push_back(canonicalize(g));
    }
    return SubspaceSet(f, v, k, std::move(members));
}

}  // namespace divsets
