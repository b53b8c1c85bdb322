#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "divsets/constructions.hpp"
#include "divsets/criteria.hpp"
#include "divsets/lp_feasibility.hpp"
#include "divsets/spectrum.hpp"
#include "divsets/subspace_sets.hpp"

namespace divsets::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::uint64_t q = 0;
    unsigned d1 = 0;
    unsigned d2 = 0;
    bool multiple = false;
    bool json = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    const TailBoundReport rep = heden_tail_bound(a.q, a.d1, a.d2, a.multiple);
    if (a.json) {
        json j{{"q", rep.q},
               {"d1", rep.d1},
               {"d2", rep.d2},
               {"multiple", rep.multiple},
               {"case", to_string(rep.tail_case)},
               {"heden_bound", rep.heden_bound.str()},
               {"heden_strict", rep.heden_strict},
               {"heden_minimum", rep.heden_minimum().str()},
               {"improved_bound", rep.improved_bound.str()},
               {"attained_by", rep.attained_by}};
        j["heden_exception"] = rep.heden_exception ? json(rep.heden_exception->str()) : json();
        j["b_free_bound"] = rep.b_free_bound ? json(rep.b_free_bound->str()) : json();
        j["b_free_bound_d2_exponent"] = rep.b_free_bound_literal ? json(rep.b_free_bound_literal->str()) : json();
        emit_json(out, j);
        return ok;
    }
    out << "case (" << to_string(rep.tail_case) << "): q=" << rep.q << " d1=" << rep.d1 << " d2=" << rep.d2
        << ", u1 " << (rep.multiple ? "divisible" : "not divisible") << " by q^(d2-d1)\n";
    out << "heden: u1 " << (rep.heden_strict ? "> " : ">= ") << rep.heden_bound;
    if (rep.heden_exception) out << " unless u1 = " << *rep.heden_exception;
    out << "\n";
    out << "improved: u1 >= " << rep.improved_bound << "\n";
    out << "attained by: " << rep.attained_by << "\n";
    if (rep.b_free_bound) {
        out << "b-free bound: u1 >= " << *rep.b_free_bound << " (with exponent d2+1 instead of d2-d1+1 it would read "
            << *rep.b_free_bound_literal
            << (*rep.b_free_bound_literal > rep.improved_bound ? ", above the attained minimum" : "") << ")\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    std::uint64_t q = 0;
    unsigned k = 0;
    unsigned r = 0;
    std::uint64_t nmax = 0;
    bool lp = false;
    bool triples = false;
    unsigned vmin = 0;
    unsigned vmax = 0;
    bool json = false;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
    SpectrumOptions opts;
    opts.use_lp = a.lp;
    opts.include_triples = a.triples;
    opts.vmin = a.vmin == 0 ? 2 * a.k : a.vmin;
    opts.vmax = a.vmax == 0 ? opts.vmin + 6 : a.vmax;
    const SpectrumReport rep = report(a.q, a.k, a.r, Int(a.nmax), opts);
    if (a.json) {
        json j = to_json(rep);
        const Constructible c = constructible_set(a.q, a.k, a.r, Int(a.nmax));
        j["generators"] = {c.spread_size.str(), c.mrd_size.str()};
        j["frobenius_of_generators"] = c.frobenius ? json(c.frobenius->str()) : json();
        emit_json(out, j);
    } else {
        out << format_table(rep);
        const Constructible c = constructible_set(a.q, a.k, a.r, Int(a.nmax));
        out << "generators: " << c.spread_size << " (spread) and " << c.mrd_size << " (lifted MRD)";
        if (c.frobenius) out << ", every n > " << *c.frobenius << " is constructible";
        out << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::uint64_t q = 0;
    unsigned k = 0;
    unsigned s = 0;
    unsigned r = 0;
    std::vector<std::string> files;
    std::string output;
};

int write_set(const SubspaceSet& s, const std::string& path, std::ostream& out) {
    const std::string text = write_subspace_set(s);
    if (path.empty() || path == "-") {
        out << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write " + path);
        f << text;
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::optional<unsigned> r;
    std::string file;
    bool skip_triples = false;
    bool json = false;
};

std::string spectrum_text(const std::map<std::size_t, Int>& counts) {
    std::string s;
    for (const auto& [i, c] : counts) s += (s.empty() ? "" : " ") + std::to_string(i) + ":" + c.str();
    return s.empty() ? "(empty)" : s;
}

json spectrum_json(const std::map<std::size_t, Int>& counts) {
    json j = json::object();
    for (const auto& [i, c] : counts) j[std::to_string(i)] = c.str();
    return j;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const SubspaceSet input = read_subspace_set(read_file(a.file));
    const bool disjoint = pairwise_disjoint(input);
    const Restriction restricted = span_and_restrict(input);
    const SubspaceSet& s = restricted.set;
    const std::uint64_t q = s.field().order();

    json j{{"q", q}, {"v", input.ambient_dim()}, {"k", input.member_dim()}, {"n", input.size()},
           {"pairwise_disjoint", disjoint}, {"effective_v", restricted.effective_v}};
    bool passed = disjoint && !s.empty();
    std::vector<std::string> lines;
    lines.push_back("set: q=" + std::to_string(q) + " v=" + std::to_string(input.ambient_dim()) +
                    " k=" + std::to_string(input.member_dim()) + " n=" + std::to_string(input.size()));
    lines.push_back(std::string("pairwise disjoint: ") + (disjoint ? "yes" : "no"));
    lines.push_back("effective dimension: " + std::to_string(restricted.effective_v));

    if (disjoint && !s.empty()) {
        const IncidenceSpectrum incidence = hyperplane_spectrum(s);
        const TripleSpectrum triples = a.skip_triples ? TripleSpectrum{s.size(), {}} : triple_spectrum(s);
        lines.push_back("hyperplane spectrum: " + spectrum_text(incidence.counts));
        j["hyperplane_spectrum"] = spectrum_json(incidence.counts);
        if (!a.skip_triples) {
            lines.push_back("triple spectrum (ordered): " + spectrum_text(triples.counts));
            j["triple_spectrum"] = spectrum_json(triples.counts);
        }
        j["identities"] = json::array();
        for (const IdentityCheck& c :
             counting_identities(incidence, triples, q, s.ambient_dim(), s.member_dim(), s.size())) {
            const bool triple_identity = c.name.find("b_d") != std::string::npos;
            if (a.skip_triples && triple_identity) continue;
            lines.push_back("identity " + c.name + ": " + c.lhs.str() + " vs " + c.rhs.str() +
                            (c.holds ? " ok" : " FAILED") + (c.skipped ? " (trivial)" : ""));
            j["identities"].push_back(
                {{"name", c.name}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"holds", c.holds}, {"trivial", c.skipped}});
            passed = passed && c.holds;
        }
        const unsigned exponent = divisibility_exponent(incidence, q);
        j["exponent"] = exponent;
        std::string line = "divisibility exponent: " + std::to_string(exponent);
        if (a.r) {
            const bool enough = exponent >= *a.r;
            line += " (required " + std::to_string(*a.r) + ": " + (enough ? "ok" : "FAILED") + ")";
            passed = passed && enough;
        }
        lines.push_back(line);
        try {
            const Classification cls = classify_spectrum(incidence, q, s.ambient_dim(), s.member_dim());
            std::string text = to_string(cls.kind);
            if (cls.kind != SpectrumClass::Unclassified)
                text += " (v = " + std::to_string(cls.layers) + "k, " + cls.incidence.str() + " members per hyperplane)";
            lines.push_back("classification: " + text);
            j["classification"] = {{"kind", to_string(cls.kind)}};
            if (cls.kind != SpectrumClass::Unclassified) {
                j["classification"]["layers"] = cls.layers;
                j["classification"]["members_per_hyperplane"] = cls.incidence.str();
            }
        } catch (const InconsistentSpectrum& e) {
            lines.push_back(std::string("classification: inconsistent (") + e.what() + ")");
            j["classification"] = {{"kind", "inconsistent"}, {"detail", e.what()}};
            passed = false;
        }
    }
    if (a.r) j["required_r"] = *a.r;
    j["verified"] = passed;
    lines.push_back(std::string("verdict: ") + (passed ? "verified" : "verification failed"));
    if (a.json)
        emit_json(out, j);
    else
        for (const auto& l : lines) out << l << "\n";
    return passed ? ok : negative;
}

// ---------------------------------------------------------------------------

struct FeasibleArgs {
    std::uint64_t q = 0;
    unsigned k = 0;
    unsigned r = 0;
    std::uint64_t n = 0;
    unsigned v = 0;
    std::optional<unsigned> vmax;
    bool ilp = false;
    bool triples = false;
    std::size_t node_limit = default_node_limit;
    bool json = false;
};

void print_result(const LinearSystem& sys, const FeasibilityResult& res, std::ostream& out) {
    out << "v=" << sys.v << ": " << to_string(res.status);
    if (res.feasible()) {
        out << " with";
        for (std::size_t i = 0; i < res.point.size(); ++i)
            if (res.point[i] != 0) out << " " << sys.variables[i].label() << "=" << res.point[i].str();
    } else if (res.status == FeasibilityStatus::Infeasible && !res.farkas.empty()) {
        out << " (phase-one optimum " << res.phase_one_optimum.str() << ", certificate y =";
        for (const Rat& y : res.farkas) out << " " << y.str();
        out << ")";
    } else if (res.status == FeasibilityStatus::NodeLimit) {
        out << " after " << res.nodes << " nodes";
    }
    out << "\n";
}

int cmd_feasible(const FeasibleArgs& a, std::ostream& out) {
    const unsigned vmax = a.vmax.value_or(a.v);
    if (vmax < a.v) throw std::invalid_argument("--vmax must not be below --v");
    json results = json::array();
    FeasibilityStatus overall = FeasibilityStatus::Infeasible;
    bool any_feasible = false;
    if (!a.json)
        out << "q=" << a.q << " k=" << a.k << " r=" << a.r << " n=" << a.n << (a.ilp ? " (integer)" : " (rational)")
            << (a.triples ? " with triple identities" : "") << "\n";
    for (unsigned v = a.v; v <= vmax; ++v) {
        const LinearSystem sys = build_system(a.q, a.k, a.r, Int(a.n), v, a.triples);
        FeasibilityResult res = lp_feasible(sys);
        if (a.ilp && res.feasible()) res = ilp_feasible(sys, a.node_limit);
        if (res.feasible()) any_feasible = true;
        if (res.status == FeasibilityStatus::NodeLimit) overall = FeasibilityStatus::NodeLimit;
        if (a.json)
            results.push_back(to_json(sys, res));
        else
            print_result(sys, res, out);
    }
    if (any_feasible) overall = FeasibilityStatus::Feasible;
    if (a.json)
        emit_json(out, {{"status", to_string(overall)}, {"results", results}});
    else if (vmax > a.v)
        out << "summary: " << to_string(overall) << " on v in [" << a.v << ", " << vmax << "]\n";
    switch (overall) {
        case FeasibilityStatus::Feasible: return ok;
        case FeasibilityStatus::Infeasible: return negative;
        case FeasibilityStatus::NodeLimit: return undecided;
    }
    return usage;
}

// ---------------------------------------------------------------------------

struct TauArgs {
    std::uint64_t q = 0;
    unsigned k = 0;
    unsigned r = 0;
    std::uint64_t n = 0;
    std::optional<std::int64_t> m;
    bool json = false;
};

int cmd_tau(const TauArgs& a, std::ostream& out) {
    std::vector<TauRow> rows;
    if (a.m) {
        const Int t = tau(Int(a.n), ipow(a.q, a.r), ipow(a.q, a.k), Int(*a.m));
        rows.push_back({Int(*a.m), t, t < 0 || (t <= 0 && *a.m != 0 && *a.m != 1)});
    } else {
        rows = tau_window(a.q, a.k, a.r, Int(a.n));
    }
    const bool excluded = std::any_of(rows.begin(), rows.end(), [](const TauRow& t) { return t.excludes; });
    if (a.json) {
        json j{{"q", a.q}, {"k", a.k}, {"r", a.r}, {"n", std::to_string(a.n)},
                {"delta", ipow(a.q, a.r).str()}, {"u", ipow(a.q, a.k).str()}, {"excluded", excluded}};
        j["rows"] = json::array();
        for (const auto& t : rows) j["rows"].push_back({{"m", t.m.str()}, {"tau", t.tau.str()}, {"excludes", t.excludes}});
        emit_json(out, j);
    } else {
        out << "tau(n=" << a.n << ", Delta=" << ipow(a.q, a.r) << ", u=" << ipow(a.q, a.k) << ", m)\n";
        out << std::right << std::setw(8) << "m" << std::setw(16) << "tau" << "  excludes\n";
        for (const auto& t : rows)
            out << std::setw(8) << t.m.str() << std::setw(16) << t.tau.str() << "  " << (t.excludes ? "yes" : "no")
                << "\n";
        out << "verdict: " << (excluded ? "excluded" : "not excluded") << "\n";
    }
    return excluded ? negative : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analyze, bound, construct and verify q^r-divisible sets of k-subspaces", "divsets"};
    app.require_subcommand(1);

    BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "Tail-length bound for a vector space partition");
    bounds->add_option("--q", bounds_args.q, "field order")->required();
    bounds->add_option("--d1", bounds_args.d1, "smallest member dimension")->required();
    bounds->add_option("--d2", bounds_args.d2, "second smallest member dimension")->required();
    bounds->add_flag("--multiple", bounds_args.multiple, "q^(d2-d1) divides the tail length");
    bounds->add_flag("--json", bounds_args.json);

    SpectrumArgs spectrum_args;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Admissible and constructible cardinalities up to nmax");
    spectrum_cmd->add_option("--q", spectrum_args.q)->required();
    spectrum_cmd->add_option("--k", spectrum_args.k)->required();
    spectrum_cmd->add_option("--r", spectrum_args.r)->required();
    spectrum_cmd->add_option("--nmax", spectrum_args.nmax)->required();
    spectrum_cmd->add_flag("--lp", spectrum_args.lp, "also sieve with the counting LP");
    spectrum_cmd->add_flag("--triples", spectrum_args.triples, "include the triple identities in the LP");
    spectrum_cmd->add_option("--vmin", spectrum_args.vmin, "smallest ambient dimension for --lp (default 2k)");
    spectrum_cmd->add_option("--vmax", spectrum_args.vmax, "largest ambient dimension for --lp (default vmin+6)");
    spectrum_cmd->add_flag("--json", spectrum_args.json);

    ConstructArgs construct_args;
    auto* construct = app.add_subcommand("construct", "Write a constructed subspace set");
    construct->require_subcommand(1);
    construct->add_option("-o,--output", construct_args.output, "output file (default stdout)");
    auto* c_spread = construct->add_subcommand("spread", "k-spread of GF(q)^(sk)");
    c_spread->add_option("--q", construct_args.q)->required();
    c_spread->add_option("--k", construct_args.k)->required();
    c_spread->add_option("--s", construct_args.s)->required();
    auto* c_mrd = construct->add_subcommand("mrd", "lifted MRD set in GF(q)^(2k+r)");
    c_mrd->add_option("--q", construct_args.q)->required();
    c_mrd->add_option("--k", construct_args.k)->required();
    c_mrd->add_option("--r", construct_args.r)->required();
    auto* c_sum = construct->add_subcommand("sum", "direct sum of two subspace-set files");
    c_sum->add_option("files", construct_args.files)->required()->expected(2);
    for (auto* sub : {c_spread, c_mrd, c_sum})
        sub->add_option("-o,--output", construct_args.output, "output file (default stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check a subspace-set file");
    verify->add_option("--r", verify_args.r, "required divisibility exponent");
    verify->add_option("file", verify_args.file)->required();
    verify->add_flag("--skip-triples", verify_args.skip_triples, "skip the triple spectrum");
    verify->add_flag("--json", verify_args.json);

    FeasibleArgs feasible_args;
    auto* feasible = app.add_subcommand("feasible", "Counting LP / ILP feasibility");
    feasible->add_option("--q", feasible_args.q)->required();
    feasible->add_option("--k", feasible_args.k)->required();
    feasible->add_option("--r", feasible_args.r)->required();
    feasible->add_option("--n", feasible_args.n)->required();
    feasible->add_option("--v", feasible_args.v, "ambient dimension (start of range with --vmax)")->required();
    feasible->add_option("--vmax", feasible_args.vmax, "scan v up to this dimension");
    feasible->add_flag("--ilp", feasible_args.ilp, "require integer solutions");
    feasible->add_flag("--triples", feasible_args.triples, "include the triple identities");
    feasible->add_option("--node-limit", feasible_args.node_limit, "branch-and-bound node limit");
    feasible->add_flag("--json", feasible_args.json);

    TauArgs tau_args;
    auto* tau_cmd = app.add_subcommand("tau", "Quadratic criterion table");
    tau_cmd->add_option("--q", tau_args.q)->required();
    tau_cmd->add_option("--k", tau_args.k)->required();
    tau_cmd->add_option("--r", tau_args.r)->required();
    tau_cmd->add_option("--n", tau_args.n)->required();
    tau_cmd->add_option("--m", tau_args.m, "evaluate a single m");
    tau_cmd->add_flag("--json", tau_args.json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        // Every command is over GF(q); this rejects q that is not a prime power.
        for (std::uint64_t q : {bounds_args.q, spectrum_args.q, feasible_args.q, tau_args.q, construct_args.q})
            if (q != 0) Field{q};
        if (*bounds) return cmd_bounds(bounds_args, out);
        if (*spectrum_cmd) return cmd_spectrum(spectrum_args, out);
        if (*construct) {
            if (*c_spread) return write_set(spread(Field(construct_args.q), construct_args.k, construct_args.s),
                                            construct_args.output, out);
            if (*c_mrd) return write_set(lifted_mrd(Field(construct_args.q), construct_args.k, construct_args.r),
                                         construct_args.output, out);
            // Operands are span-restricted first so any valid file can be summed.
            const SubspaceSet left = span_and_restrict(read_subspace_set(read_file(construct_args.files[0]))).set;
            const SubspaceSet right = span_and_restrict(read_subspace_set(read_file(construct_args.files[1]))).set;
            return write_set(direct_sum(left, right), construct_args.output, out);
        }
        if (*verify) return cmd_verify(verify_args, out);
        if (*feasible) return cmd_feasible(feasible_args, out);
        if (*tau_cmd) return cmd_tau(tau_args, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace divsets::cli
