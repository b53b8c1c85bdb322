#include "divsets/lp_feasibility.hpp"

#include <stdexcept>

namespace divsets {

std::string LpVariable::label() const {
    return (kind == Kind::Incidence ? "a_" : "b_") + std::to_string(index);
}

std::optional<std::size_t> LinearSystem::find(LpVariable::Kind kind, std::size_t index) const {
    for (std::size_t j = 0; j < variables.size(); ++j)
        if (variables[j].kind == kind && variables[j].index == index) return j;
    return std::nullopt;
}

std::string to_string(FeasibilityStatus s) {
    switch (s) {
        case FeasibilityStatus::Feasible: return "feasible";
        case FeasibilityStatus::Infeasible: return "infeasible";
        case FeasibilityStatus::NodeLimit: return "node-limit";
    }
    return "unknown";
}

LinearSystem build_system(std::uint64_t q, unsigned k, unsigned r, const Int& n, unsigned v,
                          bool include_triples, bool admit_full_hyperplane) {
    if (q < 2 || k < 1 || r < 1) throw std::invalid_argument("build_system: need q >= 2 and k, r >= 1");
    if (n < 1) throw std::invalid_argument("build_system: n must be positive");
    if (n >= 2 && v < 2 * k)
        throw std::invalid_argument("build_system: two disjoint " + std::to_string(k) + "-subspaces need v >= " +
                                    std::to_string(2 * k));
    if (v < k) throw std::invalid_argument("build_system: v must be at least k");

    LinearSystem sys;
    sys.q = q;
    sys.k = k;
    sys.r = r;
    sys.n = n;
    sys.v = v;
    const Int delta = ipow(q, r);
    // Ascending i = n - h Delta.
    for (Int i = n % delta; i <= n; i += delta) {
        if (i == n && !admit_full_hyperplane) break;
        sys.variables.push_back({LpVariable::Kind::Incidence, static_cast<std::size_t>(i)});
    }
    const bool triples = include_triples && n >= 3;
    sys.include_triples = triples;
    if (triples)
        for (std::size_t d = 2 * k; d <= std::min<std::size_t>(3 * k, v); ++d)
            sys.variables.push_back({LpVariable::Kind::Triple, d});

    const std::size_t width = sys.variables.size();
    auto incidence_row = [&](std::string label, unsigned order, Rat rhs) {
        LpConstraint c{std::move(label), std::vector<Rat>(width, Rat(0)), std::move(rhs)};
        for (std::size_t j = 0; j < width; ++j) {
            if (sys.variables[j].kind != LpVariable::Kind::Incidence) continue;
            Int f = 1;
            for (unsigned t = 0; t < order; ++t) f *= Int(sys.variables[j].index) - t;
            c.coefficients[j] = Rat(f);
        }
        return c;
    };
    const Int pairs = n * (n - 1);
    sys.constraints.push_back(incidence_row("hyperplanes", 0, Rat(gauss_number(q, v))));
    sys.constraints.push_back(incidence_row("incidences", 1, Rat(n * gauss_number(q, v - k))));
    sys.constraints.push_back(
        incidence_row("pairs", 2, Rat(pairs == 0 ? Int(0) : pairs * gauss_number(q, v - 2 * k))));
    if (triples) {
        LpConstraint t = incidence_row("triples", 3, Rat(0));
        LpConstraint total{"triple-count", std::vector<Rat>(width, Rat(0)), Rat(pairs * (n - 2))};
        for (std::size_t j = 0; j < width; ++j) {
            if (sys.variables[j].kind != LpVariable::Kind::Triple) continue;
            t.coefficients[j] = -Rat(gauss_number(q, v - static_cast<unsigned>(sys.variables[j].index)));
            total.coefficients[j] = 1;
        }
        sys.constraints.push_back(std::move(t));
        sys.constraints.push_back(std::move(total));
    }
    return sys;
}

namespace {

using Matrix = std::vector<std::vector<Rat>>;

struct PhaseOne {
    bool feasible = false;
    std::vector<Rat> x;
    Rat optimum;
    std::vector<Rat> farkas;
};

// Minimizes the sum of artificials for A x = b, x >= 0. The tableau keeps the
// artificial columns so that B^{-1} and the duals can be read off at the end.
PhaseOne phase_one(const Matrix& a, const std::vector<Rat>& b, std::size_t cols) {
    const std::size_t rows = a.size();
    const std::size_t width = cols + rows;
    std::vector<int> sign(rows, 1);
    Matrix t(rows, std::vector<Rat>(width + 1, Rat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        sign[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = sign[i] * a[i][j];
        t[i][cols + i] = 1;
        t[i][width] = sign[i] * b[i];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;
    std::vector<Rat> reduced(width, Rat(0));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) reduced[j] -= t[i][j];

    while (true) {
        // Bland: lowest-index improving column, lowest-index basic variable on ties.
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j)
            if (reduced[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = rows;
        Rat best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rat ratio = t[i][width] / t[i][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        if (leave == rows) throw std::logic_error("phase-one simplex reported unbounded");

        const Rat pivot = t[leave][enter];
        for (auto& x : t[leave]) x /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rat factor = t[i][enter];
            for (std::size_t j = 0; j <= width; ++j)
                if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
        }
        const Rat factor = reduced[enter];
        for (std::size_t j = 0; j < width; ++j)
            if (t[leave][j] != 0) reduced[j] -= factor * t[leave][j];
        basis[leave] = enter;
    }

    PhaseOne out;
    out.optimum = 0;
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] >= cols) out.optimum += t[i][width];
    out.feasible = out.optimum == 0;
    if (out.feasible) {
        out.x.assign(cols, Rat(0));
        for (std::size_t i = 0; i < rows; ++i)
            if (basis[i] < cols) out.x[basis[i]] = t[i][width];
    } else {
        out.farkas.assign(rows, Rat(0));
        for (std::size_t l = 0; l < rows; ++l) {
            Rat y = 0;
            for (std::size_t i = 0; i < rows; ++i)
                if (basis[i] >= cols) y += t[i][cols + l];
            out.farkas[l] = sign[l] * y;
        }
    }
    return out;
}

Matrix coefficient_matrix(const LinearSystem& sys) {
    Matrix a;
    for (const auto& c : sys.constraints) a.push_back(c.coefficients);
    return a;
}

std::vector<Rat> rhs_vector(const LinearSystem& sys) {
    std::vector<Rat> b;
    for (const auto& c : sys.constraints) b.push_back(c.rhs);
    return b;
}

bool is_integral(const Rat& x) { return boost::multiprecision::denominator(x) == 1; }

}  // namespace

bool satisfies(const LinearSystem& sys, std::span<const Rat> point) {
    if (point.size() != sys.variables.size()) return false;
    for (const Rat& x : point)
        if (x < 0) return false;
    for (const auto& c : sys.constraints) {
        Rat lhs = 0;
        for (std::size_t j = 0; j < point.size(); ++j) lhs += c.coefficients[j] * point[j];
        if (lhs != c.rhs) return false;
    }
    return true;
}

bool certifies_infeasibility(const LinearSystem& sys, std::span<const Rat> farkas) {
    if (farkas.size() != sys.constraints.size()) return false;
    Rat yb = 0;
    for (std::size_t i = 0; i < farkas.size(); ++i) yb += farkas[i] * sys.constraints[i].rhs;
    if (yb <= 0) return false;
    for (std::size_t j = 0; j < sys.variables.size(); ++j) {
        Rat col = 0;
        for (std::size_t i = 0; i < farkas.size(); ++i) col += farkas[i] * sys.constraints[i].coefficients[j];
        if (col > 0) return false;
    }
    return true;
}

FeasibilityResult lp_feasible(const LinearSystem& sys) {
    const PhaseOne p = phase_one(coefficient_matrix(sys), rhs_vector(sys), sys.variables.size());
    FeasibilityResult out;
    out.nodes = 1;
    out.phase_one_optimum = p.optimum;
    if (p.feasible) {
        if (!satisfies(sys, p.x)) throw std::logic_error("simplex returned a point that fails re-verification");
        out.status = FeasibilityStatus::Feasible;
        out.point = p.x;
    } else {
        if (!certifies_infeasibility(sys, p.farkas))
            throw std::logic_error("simplex returned an invalid infeasibility certificate");
        out.status = FeasibilityStatus::Infeasible;
        out.farkas = p.farkas;
    }
    return out;
}

std::vector<std::optional<Int>> variable_upper_bounds(const LinearSystem& sys) {
    std::vector<std::optional<Int>> ub(sys.variables.size());
    for (const auto& c : sys.constraints) {
        int orientation = 0;
        bool usable = true;
        for (const Rat& x : c.coefficients) {
            const int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
            if (s == 0) continue;
            if (orientation == 0) orientation = s;
            if (s != orientation) usable = false;
        }
        if (!usable || orientation == 0) continue;
        const Rat rhs = orientation * c.rhs;
        if (rhs < 0) continue;
        for (std::size_t j = 0; j < ub.size(); ++j) {
            const Rat coef = orientation * c.coefficients[j];
            if (coef <= 0) continue;
            const Int bound = floor(rhs / coef);
            if (!ub[j] || bound < *ub[j]) ub[j] = bound;
        }
    }
    return ub;
}

FeasibilityResult ilp_feasible(const LinearSystem& sys, std::size_t node_limit) {
    const std::size_t cols = sys.variables.size();
    const Matrix a = coefficient_matrix(sys);
    const std::vector<Rat> b = rhs_vector(sys);

    struct Node {
        std::vector<Int> lower;
        std::vector<std::optional<Int>> upper;
    };
    std::vector<Node> stack{{std::vector<Int>(cols, 0), variable_upper_bounds(sys)}};

    FeasibilityResult out;
    out.status = FeasibilityStatus::Infeasible;
    while (!stack.empty()) {
        if (out.nodes >= node_limit) {
            out.status = FeasibilityStatus::NodeLimit;
            return out;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        ++out.nodes;

        bool empty_box = false;
        for (std::size_t j = 0; j < cols; ++j)
            if (node.upper[j] && *node.upper[j] < node.lower[j]) empty_box = true;
        if (empty_box) continue;

        // Shift x = lower + x' and add x'_j + s_j = upper_j - lower_j.
        std::vector<std::size_t> bounded;
        for (std::size_t j = 0; j < cols; ++j)
            if (node.upper[j]) bounded.push_back(j);
        const std::size_t width = cols + bounded.size();
        Matrix na;
        std::vector<Rat> nb;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::vector<Rat> row(width, Rat(0));
            Rat rhs = b[i];
            for (std::size_t j = 0; j < cols; ++j) {
                row[j] = a[i][j];
                rhs -= a[i][j] * node.lower[j];
            }
            na.push_back(std::move(row));
            nb.push_back(rhs);
        }
        for (std::size_t t = 0; t < bounded.size(); ++t) {
            std::vector<Rat> row(width, Rat(0));
            row[bounded[t]] = 1;
            row[cols + t] = 1;
            na.push_back(std::move(row));
            nb.push_back(Rat(*node.upper[bounded[t]] - node.lower[bounded[t]]));
        }
        const PhaseOne relax = phase_one(na, nb, width);
        if (out.nodes == 1) out.phase_one_optimum = relax.optimum;
        if (!relax.feasible) {
            // A root certificate is stated in terms of the original rows only.
            if (out.nodes == 1 && bounded.empty()) out.farkas = relax.farkas;
            continue;
        }
        std::vector<Rat> x(cols);
        std::optional<std::size_t> fractional;
        for (std::size_t j = 0; j < cols; ++j) {
            x[j] = Rat(node.lower[j]) + relax.x[j];
            if (!fractional && !is_integral(x[j])) fractional = j;
        }
        if (!fractional) {
            if (!satisfies(sys, x)) throw std::logic_error("branch and bound produced an invalid point");
            out.status = FeasibilityStatus::Feasible;
            out.point = std::move(x);
            return out;
        }
        const std::size_t j = *fractional;
        Node up = node;
        up.lower[j] = ceil(x[j]);
        Node down = std::move(node);
        down.upper[j] = floor(x[j]);
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
    }
    return out;
}

std::vector<unsigned> DimensionScan::feasible_dims() const {
    std::vector<unsigned> dims;
    for (const auto& r : results)
        if (r.verdict() == FeasibilityStatus::Feasible) dims.push_back(r.v);
    return dims;
}

bool DimensionScan::excluded_on_range() const {
    if (results.empty()) return false;
    for (const auto& r : results)
        if (r.verdict() != FeasibilityStatus::Infeasible) return false;
    return true;
}

bool DimensionScan::undecided() const {
    for (const auto& r : results)
        if (r.verdict() == FeasibilityStatus::NodeLimit) return true;
    return false;
}

std::string DimensionScan::summary() const {
    const std::string range = "[" + std::to_string(vmin) + ", " + std::to_string(vmax) + "]";
    if (results.empty()) return "no admissible dimension in " + range;
    const auto dims = feasible_dims();
    if (!dims.empty()) {
        std::string s = "feasible at v =";
        for (unsigned v : dims) s += " " + std::to_string(v);
        return s;
    }
    if (undecided()) return "undecided on " + range + " (node limit reached)";
    return "LP-excluded on scanned range " + range + " (not a proof for other v)";
}

DimensionScan scan_dimensions(std::uint64_t q, unsigned k, unsigned r, const Int& n, unsigned vmin,
                              unsigned vmax, bool include_triples, bool use_ilp, std::size_t node_limit) {
    DimensionScan scan;
    scan.vmin = vmin;
    scan.vmax = vmax;
    const unsigned floor_dim = n >= 2 ? 2 * k : k;
    for (unsigned v = vmin; v <= vmax; ++v) {
        if (v < floor_dim) {
            scan.skipped.push_back(v);
            continue;
        }
        const LinearSystem sys = build_system(q, k, r, n, v, include_triples);
        DimensionResult res{v, lp_feasible(sys), std::nullopt};
        if (use_ilp) {
            if (res.lp.feasible())
                res.ilp = ilp_feasible(sys, node_limit);
            else
                res.ilp = res.lp;
        }
        scan.results.push_back(std::move(res));
    }
    return scan;
}

namespace {

nlohmann::json rationals(std::span<const Rat> xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const Rat& x : xs) out.push_back(x.str());
    return out;
}

}  // namespace

nlohmann::json to_json(const LinearSystem& sys) {
    nlohmann::json j;
    j["q"] = sys.q;
    j["k"] = sys.k;
    j["r"] = sys.r;
    j["n"] = sys.n.str();
    j["v"] = sys.v;
    j["include_triples"] = sys.include_triples;
    j["variables"] = nlohmann::json::array();
    for (const auto& var : sys.variables) j["variables"].push_back(var.label());
    j["constraints"] = nlohmann::json::array();
    for (const auto& c : sys.constraints)
        j["constraints"].push_back({{"label", c.label}, {"coefficients", rationals(c.coefficients)}, {"rhs", c.rhs.str()}});
    return j;
}

nlohmann::json to_json(const LinearSystem& sys, const FeasibilityResult& result) {
    nlohmann::json j;
    j["system"] = to_json(sys);
    j["status"] = to_string(result.status);
    j["nodes"] = result.nodes;
    j["phase_one_optimum"] = result.phase_one_optimum.str();
    if (!result.point.empty()) {
        nlohmann::json point = nlohmann::json::object();
        for (std::size_t i = 0; i < result.point.size(); ++i) point[sys.variables[i].label()] = result.point[i].str();
        j["point"] = point;
    }
    if (!result.farkas.empty()) {
        nlohmann::json y = nlohmann::json::object();
        for (std::size_t i = 0; i < result.farkas.size(); ++i) y[sys.constraints[i].label] = result.farkas[i].str();
        j["farkas"] = y;
    }
    return j;
}

}  // namespace divsets
