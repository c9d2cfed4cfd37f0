#include "treelap/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "treelap/shortest_path.hpp"

namespace treelap {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string pad(const std::string& s, size_t width) {
    std::string out = s;
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

// Accumulates terms, merging repeated variables, preserving first-insertion
// order so emitted rows are deterministic and readable.
class ExprBuilder {
public:
    void add(double coef, const std::string& var) {
        auto it = index_.find(var);
        if (it == index_.end()) {
            index_.emplace(var, terms_.size());
            terms_.push_back({coef, var});
        } else {
            terms_[it->second].coef += coef;
        }
    }

    std::vector<LinearTerm> take() { return std::move(terms_); }

private:
    std::vector<LinearTerm> terms_;
    std::map<std::string, size_t> index_;
};

BilinearTerm make_product(int eu, int ev, int pu, int pv) {
    if (eu > ev) std::swap(eu, ev);
    if (pu > pv) std::swap(pu, pv);
    return BilinearTerm{eu, ev, pu, pv};
}

struct SymbolicRow {
    int i = 0, j = 0;  // 1-indexed entry of the matrix equation
    std::vector<std::pair<double, BilinearTerm>> products;
    std::vector<std::pair<int, int>> x_terms;  // unit-coefficient degree terms
    double rhs = 0.0;
};

// Entrywise expansion of L D + 2 I = (2*1 - deg) 1^T with W = M .* X,
// L = diag(W 1) - W and deg = X 1 substituted, D symmetric with zero diagonal.
// Row (i,j) reads
//   sum_{k != i} mu_ik x_ik (D_ij - D_kj) + sum_{k != i} x_ik = 2 - 2*[i==j].
std::vector<SymbolicRow> characterization_rows(int n, const DenseMatrix& mu, Formulation f) {
    std::vector<SymbolicRow> rows;
    for (int i = 1; i <= n; ++i) {
        int j_begin = (f == Formulation::Full) ? 1 : i + 1;
        for (int j = j_begin; j <= n; ++j) {
            SymbolicRow row;
            row.i = i;
            row.j = j;
            row.rhs = (i == j) ? 0.0 : 2.0;
            for (int k = 1; k <= n; ++k) {
                if (k == i) continue;
                double m = mu(i - 1, k - 1);
                if (j != i) row.products.push_back({m, make_product(i, k, i, j)});
                if (k != j) row.products.push_back({-m, make_product(i, k, k, j)});
                row.x_terms.push_back({std::min(i, k), std::max(i, k)});
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void validate_mu(int n, const DenseMatrix& mu) {
    if (n < 2) throw std::invalid_argument("model needs n >= 2");
    if (mu.rows() != n || mu.cols() != n)
        throw std::invalid_argument("mu must be an n x n matrix");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (mu(i, j) != mu(j, i)) throw std::invalid_argument("mu must be symmetric");
            if (i != j && !(mu(i, j) > 0.0 && std::isfinite(mu(i, j))))
                throw std::invalid_argument("mu off-diagonal entries must be positive");
        }
}

std::string mc_name(int which, const BilinearTerm& t) {
    std::string y = y_var_name(t);
    return "mc" + std::to_string(which) + y.substr(1);  // strip the leading 'y'
}

std::vector<int> split_indices(const std::string& name) {
    std::vector<int> out;
    size_t pos = name.find('_');
    while (pos != std::string::npos) {
        size_t next = name.find('_', pos + 1);
        std::string tok = name.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
        out.push_back(std::stoi(tok));
        pos = next;
    }
    return out;
}

}  // namespace

std::string x_var_name(int i, int j) {
    return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

std::string d_var_name(int i, int j) {
    return "d_" + std::to_string(i) + "_" + std::to_string(j);
}

std::string y_var_name(const BilinearTerm& t) {
    // Shared vertex in the middle: y_u_s_w stands for x_{us} * d_{sw}. The
    // own-edge product x_ij * d_ij is written y_i_j_i.
    int u, s, w;
    if (t.x_u == t.d_u && t.x_v == t.d_v) {
        u = t.x_u;
        s = t.x_v;
        w = t.x_u;
    } else if (t.x_u == t.d_u || t.x_u == t.d_v) {
        s = t.x_u;
        u = t.x_v;
        w = (t.d_u == s) ? t.d_v : t.d_u;
    } else {
        s = t.x_v;
        u = t.x_u;
        w = (t.d_u == s) ? t.d_v : t.d_u;
    }
    return "y_" + std::to_string(u) + "_" + std::to_string(s) + "_" + std::to_string(w);
}

const Variable* MilpModel::find_variable(const std::string& name) const {
    for (const Variable& v : variables)
        if (v.name == name) return &v;
    return nullptr;
}

long long chain_pattern_aux_count(int n) {
    return static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
}

std::vector<BilinearTerm> bilinear_inventory(int n, Formulation f) {
    DenseMatrix unit(n, n, 1.0);
    std::set<BilinearTerm> seen;
    for (const SymbolicRow& row : characterization_rows(n, unit, f))
        for (const auto& [coef, product] : row.products) seen.insert(product);
    return {seen.begin(), seen.end()};
}

double distance_upper_bound_for(const DenseMatrix& mu) {
    const int n = mu.rows();
    std::vector<double> recip;
    recip.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) recip.push_back(1.0 / mu(i, j));
    std::sort(recip.begin(), recip.end(), std::greater<>());
    double bound = 0.0;
    for (int k = 0; k < n - 1 && k < static_cast<int>(recip.size()); ++k) bound += recip[k];
    return bound;
}

MilpModel build_model(int n, const DenseMatrix& mu, Formulation f) {
    validate_mu(n, mu);

    MilpModel model;
    model.n = n;
    model.formulation = f;
    model.mu = mu;
    model.distance_upper_bound = distance_upper_bound_for(mu);
    const double ub = model.distance_upper_bound;

    auto rows = characterization_rows(n, mu, f);
    std::set<BilinearTerm> seen;
    for (const SymbolicRow& row : rows)
        for (const auto& [coef, product] : row.products) seen.insert(product);
    model.products.assign(seen.begin(), seen.end());

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            model.variables.push_back({x_var_name(i, j), VarKind::Binary, 0.0, 1.0});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            model.variables.push_back({d_var_name(i, j), VarKind::Continuous, 0.0, ub});
    for (const BilinearTerm& t : model.products)
        model.variables.push_back({y_var_name(t), VarKind::Continuous, 0.0, ub});

    for (const SymbolicRow& row : rows) {
        ExprBuilder expr;
        for (const auto& [coef, product] : row.products) expr.add(coef, y_var_name(product));
        for (const auto& [u, v] : row.x_terms) expr.add(1.0, x_var_name(u, v));
        model.constraints.push_back({"char_" + std::to_string(row.i) + "_" + std::to_string(row.j),
                                     expr.take(), ConstraintSense::Equal, row.rhs});
    }

    if (f == Formulation::Reduced) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                LinearConstraint c;
                c.name = "elb_" + std::to_string(i) + "_" + std::to_string(j);
                c.terms = {{1.0, d_var_name(i, j)}, {-1.0 / mu(i - 1, j - 1), x_var_name(i, j)}};
                c.sense = ConstraintSense::GreaterEqual;
                c.rhs = 0.0;
                model.constraints.push_back(std::move(c));
            }
    }

    // McCormick envelope: exact for a product of a binary and a variable in
    // [0, ub].
    for (const BilinearTerm& t : model.products) {
        std::string y = y_var_name(t);
        std::string x = x_var_name(t.x_u, t.x_v);
        std::string d = d_var_name(t.d_u, t.d_v);
        model.constraints.push_back(
            {mc_name(1, t), {{1.0, y}, {-ub, x}}, ConstraintSense::LessEqual, 0.0});
        model.constraints.push_back({mc_name(2, t), {{1.0, y}}, ConstraintSense::GreaterEqual, 0.0});
        model.constraints.push_back(
            {mc_name(3, t), {{1.0, y}, {-1.0, d}}, ConstraintSense::LessEqual, 0.0});
        model.constraints.push_back(
            {mc_name(4, t), {{1.0, y}, {-1.0, d}, {-ub, x}}, ConstraintSense::GreaterEqual, -ub});
    }

    long long chain = chain_pattern_aux_count(n);
    if (static_cast<long long>(model.products.size()) != chain) {
        model.aux_note =
            "auxiliary count " + std::to_string(model.products.size()) +
            " differs from the ascending-chain estimate " + std::to_string(chain) +
            ": the entrywise expansion also needs the own-edge products x_ij*d_ij and, per "
            "vertex triple, every orientation of x_e*d_f that shares one vertex (4 for the "
            "reduced rows, 6 for the full rows)";
    }
    return model;
}

MilpModel attach_objective(MilpModel m, ObjectiveKind kind, ObjectiveSense sense,
                           const DenseMatrix* demand, const DenseMatrix* cost) {
    auto check_matrix = [&](const DenseMatrix* mat, const char* what) {
        if (mat == nullptr)
            throw std::invalid_argument(std::string("objective needs a ") + what + " matrix");
        if (mat->rows() != m.n || mat->cols() != m.n)
            throw std::invalid_argument(std::string(what) + " matrix has wrong dimension");
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j) {
                if ((*mat)(i, j) != (*mat)(j, i))
                    throw std::invalid_argument(std::string(what) + " matrix must be symmetric");
                if ((*mat)(i, j) < 0.0 || !std::isfinite((*mat)(i, j)))
                    throw std::invalid_argument(std::string(what) + " matrix must be nonnegative");
            }
    };

    Objective obj;
    obj.sense = sense;
    if (kind == ObjectiveKind::Wiener) {
        for (int i = 1; i <= m.n; ++i)
            for (int j = i + 1; j <= m.n; ++j) obj.terms.push_back({1.0, d_var_name(i, j)});
    } else if (kind == ObjectiveKind::WeightedWiener) {
        check_matrix(demand, "demand");
        for (int i = 1; i <= m.n; ++i)
            for (int j = i + 1; j <= m.n; ++j)
                if ((*demand)(i - 1, j - 1) != 0.0)
                    obj.terms.push_back({(*demand)(i - 1, j - 1), d_var_name(i, j)});
    } else {
        check_matrix(cost, "cost");
        check_matrix(demand, "demand");
        for (int i = 1; i <= m.n; ++i)
            for (int j = i + 1; j <= m.n; ++j) {
                if ((*cost)(i - 1, j - 1) != 0.0)
                    obj.terms.push_back({(*cost)(i - 1, j - 1), x_var_name(i, j)});
                if ((*demand)(i - 1, j - 1) != 0.0)
                    obj.terms.push_back({(*demand)(i - 1, j - 1), d_var_name(i, j)});
            }
    }
    m.objective = std::move(obj);
    return m;
}

MilpModel attach_side_constraints(MilpModel m, const SideConstraints& sc) {
    auto canonical = [&](std::pair<int, int> e) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 1 || e.second > m.n || e.first == e.second)
            throw std::invalid_argument("side constraint edge {" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) + "} out of range");
        return e;
    };

    std::set<std::pair<int, int>> forced, banned;
    for (auto e : sc.forced_edges) forced.insert(canonical(e));
    for (auto e : sc.banned_edges) banned.insert(canonical(e));
    for (const auto& e : forced)
        if (banned.count(e))
            throw std::invalid_argument("edge {" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) + "} is both forced and banned");

    for (const auto& [u, v] : forced)
        m.constraints.push_back({"force_" + std::to_string(u) + "_" + std::to_string(v),
                                 {{1.0, x_var_name(u, v)}},
                                 ConstraintSense::Equal,
                                 1.0});
    for (const auto& [u, v] : banned)
        m.constraints.push_back({"ban_" + std::to_string(u) + "_" + std::to_string(v),
                                 {{1.0, x_var_name(u, v)}},
                                 ConstraintSense::Equal,
                                 0.0});

    auto degree_terms = [&](int v) {
        std::vector<LinearTerm> terms;
        for (int u = 1; u <= m.n; ++u)
            if (u != v) terms.push_back({1.0, x_var_name(std::min(u, v), std::max(u, v))});
        return terms;
    };

    for (const DegreeBound& b : sc.degree_bounds) {
        if (b.vertex < 1 || b.vertex > m.n)
            throw std::invalid_argument("degree bound vertex out of range");
        if (b.lo < 0 || b.lo > b.hi)
            throw std::invalid_argument("degree bound lo/hi inconsistent");
        if (b.lo > 0)
            m.constraints.push_back({"deg_lo_" + std::to_string(b.vertex), degree_terms(b.vertex),
                                     ConstraintSense::GreaterEqual, static_cast<double>(b.lo)});
        m.constraints.push_back({"deg_hi_" + std::to_string(b.vertex), degree_terms(b.vertex),
                                 ConstraintSense::LessEqual, static_cast<double>(b.hi)});
    }
    if (sc.max_degree) {
        if (*sc.max_degree < 0) throw std::invalid_argument("max degree must be nonnegative");
        for (int v = 1; v <= m.n; ++v)
            m.constraints.push_back({"degcap_" + std::to_string(v), degree_terms(v),
                                     ConstraintSense::LessEqual,
                                     static_cast<double>(*sc.max_degree)});
    }
    if (sc.diameter) {
        if (!(*sc.diameter > 0.0)) throw std::invalid_argument("diameter bound must be positive");
        for (Variable& v : m.variables)
            if (v.kind == VarKind::Continuous && v.name.rfind("d_", 0) == 0)
                v.upper = std::min(v.upper, *sc.diameter);
    }
    return m;
}

namespace {

double lookup(const SolutionAssignment& s, const std::string& name) {
    auto it = s.find(name);
    if (it == s.end()) throw MissingVariableError("assignment misses variable " + name);
    return it->second;
}

}  // namespace

ViolationReport check_solution(const MilpModel& m, const SolutionAssignment& s, double tol) {
    ViolationReport report;

    for (const Variable& v : m.variables) {
        double val = lookup(s, v.name);
        if (val < v.lower - tol || val > v.upper + tol)
            report.violations.push_back(
                {"bound", v.name, std::max(v.lower - val, val - v.upper),
                 "value " + fmt17(val) + " outside [" + fmt17(v.lower) + ", " + fmt17(v.upper) + "]"});
        if (v.kind == VarKind::Binary && std::abs(val) > 1e-6 && std::abs(val - 1.0) > 1e-6)
            report.violations.push_back(
                {"binary", v.name, std::min(std::abs(val), std::abs(val - 1.0)),
                 "value " + fmt17(val) + " is not 0/1"});
    }

    for (const LinearConstraint& c : m.constraints) {
        long double lhs = 0.0L;
        for (const LinearTerm& t : c.terms) lhs += static_cast<long double>(t.coef) * lookup(s, t.var);
        double gap = static_cast<double>(lhs) - c.rhs;
        bool bad = (c.sense == ConstraintSense::Equal && std::abs(gap) > tol) ||
                   (c.sense == ConstraintSense::LessEqual && gap > tol) ||
                   (c.sense == ConstraintSense::GreaterEqual && gap < -tol);
        if (bad)
            report.violations.push_back({"constraint", c.name, std::abs(gap),
                                         "lhs " + fmt17(static_cast<double>(lhs)) + " vs rhs " +
                                             fmt17(c.rhs)});
    }

    std::vector<Edge> edges;
    for (int i = 1; i <= m.n; ++i)
        for (int j = i + 1; j <= m.n; ++j)
            if (lookup(s, x_var_name(i, j)) > 0.5)
                edges.push_back({i, j, 1.0 / m.mu(i - 1, j - 1)});
    WeightedGraph support(m.n, edges);
    report.reconstructed_tree = support;
    report.reconstructed_tree_ok = is_tree(support);
    if (!report.reconstructed_tree_ok) {
        report.violations.push_back({"structure", "tree",
                                     static_cast<double>(support.edge_count()),
                                     "x-support is not a spanning tree"});
    } else {
        DenseMatrix dist = distance_matrix(support);
        for (int i = 1; i <= m.n; ++i)
            for (int j = i + 1; j <= m.n; ++j) {
                double got = lookup(s, d_var_name(i, j));
                double want = dist(i - 1, j - 1);
                if (std::abs(got - want) > tol)
                    report.violations.push_back({"distance", d_var_name(i, j), std::abs(got - want),
                                                 "value " + fmt17(got) + " vs tree distance " +
                                                     fmt17(want)});
            }
    }
    return report;
}

double evaluate_objective(const MilpModel& m, const SolutionAssignment& s) {
    long double acc = 0.0L;
    for (const LinearTerm& t : m.objective.terms)
        acc += static_cast<long double>(t.coef) * lookup(s, t.var);
    return static_cast<double>(acc);
}

SolutionAssignment tree_induced_assignment(const MilpModel& m, const WeightedGraph& tree) {
    if (tree.vertex_count() != m.n)
        throw std::invalid_argument("tree size does not match the model");
    DenseMatrix dist = distance_matrix(tree);
    SolutionAssignment s;
    for (int i = 1; i <= m.n; ++i)
        for (int j = i + 1; j <= m.n; ++j) {
            s[x_var_name(i, j)] = tree.has_edge(i, j) ? 1.0 : 0.0;
            s[d_var_name(i, j)] = dist(i - 1, j - 1);
        }
    for (const BilinearTerm& t : m.products)
        s[y_var_name(t)] =
            tree.has_edge(t.x_u, t.x_v) ? dist(t.d_u - 1, t.d_v - 1) : 0.0;
    return s;
}

namespace {

std::string sense_text(ConstraintSense s) {
    switch (s) {
        case ConstraintSense::LessEqual: return "<=";
        case ConstraintSense::Equal: return "=";
        default: return ">=";
    }
}

std::string lp_expr(const std::vector<LinearTerm>& terms) {
    std::string out;
    int on_line = 0;
    for (size_t i = 0; i < terms.size(); ++i) {
        double c = terms[i].coef;
        bool neg = c < 0.0;
        double mag = std::abs(c);
        if (i == 0)
            out += neg ? " -" : "";
        else
            out += neg ? " -" : " +";
        if (mag != 1.0) out += " " + fmt17(mag);
        out += " " + terms[i].var;
        if (++on_line == 12 && i + 1 < terms.size()) {
            out += "\n   ";
            on_line = 0;
        }
    }
    return out;
}

std::string emit_lp(const MilpModel& m) {
    std::string out;
    out += "\\ treelap model: n=" + std::to_string(m.n) + " formulation=" +
           (m.formulation == Formulation::Full ? "full" : "reduced") + "\n";
    out += m.objective.sense == ObjectiveSense::Maximize ? "Maximize\n" : "Minimize\n";
    out += " obj:" + lp_expr(m.objective.terms) + "\n";
    out += "Subject To\n";
    for (const LinearConstraint& c : m.constraints)
        out += " " + c.name + ":" + lp_expr(c.terms) + " " + sense_text(c.sense) + " " +
               fmt17(c.rhs) + "\n";
    out += "Bounds\n";
    for (const Variable& v : m.variables)
        if (v.kind == VarKind::Continuous)
            out += " " + fmt17(v.lower) + " <= " + v.name + " <= " + fmt17(v.upper) + "\n";
    out += "Binaries\n";
    int on_line = 0;
    for (const Variable& v : m.variables) {
        if (v.kind != VarKind::Binary) continue;
        out += " " + v.name;
        if (++on_line == 12) {
            out += "\n";
            on_line = 0;
        }
    }
    if (on_line != 0) out += "\n";
    out += "End\n";
    return out;
}

std::string emit_mps(const MilpModel& m) {
    std::string out;
    out += "* treelap model: n=" + std::to_string(m.n) + " formulation=" +
           (m.formulation == Formulation::Full ? "full" : "reduced") + "\n";
    out += "NAME          TREELAP\n";
    out += "OBJSENSE\n    " +
           std::string(m.objective.sense == ObjectiveSense::Maximize ? "MAX" : "MIN") + "\n";
    out += "ROWS\n N  obj\n";
    for (const LinearConstraint& c : m.constraints) {
        char type = c.sense == ConstraintSense::Equal ? 'E'
                    : c.sense == ConstraintSense::LessEqual ? 'L'
                                                            : 'G';
        out += std::string(" ") + type + "  " + c.name + "\n";
    }

    // Column-major nonzeros: objective first, then constraint rows in order.
    std::map<std::string, std::vector<std::pair<std::string, double>>> columns;
    for (const LinearTerm& t : m.objective.terms) columns[t.var].push_back({"obj", t.coef});
    for (const LinearConstraint& c : m.constraints)
        for (const LinearTerm& t : c.terms) columns[t.var].push_back({c.name, t.coef});

    out += "COLUMNS\n";
    bool in_integer = false;
    int marker = 0;
    for (const Variable& v : m.variables) {
        bool integer = v.kind == VarKind::Binary;
        if (integer != in_integer) {
            out += "    " + pad("MARKER" + std::to_string(marker++), 14) + pad("'MARKER'", 17) +
                   (integer ? "'INTORG'" : "'INTEND'") + "\n";
            in_integer = integer;
        }
        auto it = columns.find(v.name);
        if (it == columns.end()) continue;
        for (const auto& [row, coef] : it->second)
            out += "    " + pad(v.name, 14) + pad(row, 14) + fmt17(coef) + "\n";
    }
    if (in_integer) out += "    " + pad("MARKER" + std::to_string(marker++), 14) + pad("'MARKER'", 17) +
                           "'INTEND'\n";

    out += "RHS\n";
    for (const LinearConstraint& c : m.constraints)
        if (c.rhs != 0.0) out += "    " + pad("RHS", 14) + pad(c.name, 14) + fmt17(c.rhs) + "\n";

    out += "BOUNDS\n";
    for (const Variable& v : m.variables) {
        if (v.kind == VarKind::Binary)
            out += " BV " + pad("BND", 11) + v.name + "\n";
        else
            out += " UP " + pad("BND", 11) + pad(v.name, 14) + fmt17(v.upper) + "\n";
    }
    out += "ENDATA\n";
    return out;
}

std::string emit_json(const MilpModel& m) {
    nlohmann::ordered_json j;
    j["n"] = m.n;
    j["formulation"] = m.formulation == Formulation::Full ? "full" : "reduced";
    j["distance_upper_bound"] = m.distance_upper_bound;
    j["aux_count"] = m.products.size();
    j["aux_count_chain_pattern"] = chain_pattern_aux_count(m.n);
    if (!m.aux_note.empty()) j["aux_note"] = m.aux_note;
    nlohmann::ordered_json mu = nlohmann::ordered_json::array();
    for (int i = 0; i < m.mu.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < m.mu.cols(); ++k) row.push_back(m.mu(i, k));
        mu.push_back(row);
    }
    j["mu"] = mu;
    nlohmann::ordered_json vars = nlohmann::ordered_json::array();
    for (const Variable& v : m.variables)
        vars.push_back({{"name", v.name},
                        {"kind", v.kind == VarKind::Binary ? "binary" : "continuous"},
                        {"lower", v.lower},
                        {"upper", v.upper}});
    j["variables"] = vars;
    nlohmann::ordered_json cons = nlohmann::ordered_json::array();
    for (const LinearConstraint& c : m.constraints) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const LinearTerm& t : c.terms) terms.push_back({t.coef, t.var});
        cons.push_back(
            {{"name", c.name}, {"terms", terms}, {"sense", sense_text(c.sense)}, {"rhs", c.rhs}});
    }
    j["constraints"] = cons;
    nlohmann::ordered_json obj_terms = nlohmann::ordered_json::array();
    for (const LinearTerm& t : m.objective.terms) obj_terms.push_back({t.coef, t.var});
    j["objective"] = {{"sense", m.objective.sense == ObjectiveSense::Maximize ? "max" : "min"},
                      {"terms", obj_terms}};
    return j.dump(2) + "\n";
}

}  // namespace

std::string emit(const MilpModel& m, ModelFormat format) {
    switch (format) {
        case ModelFormat::Lp: return emit_lp(m);
        case ModelFormat::Mps: return emit_mps(m);
        default: return emit_json(m);
    }
}

MilpModel parse_model_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MilpModel m;
    m.n = j.at("n").get<int>();
    m.formulation = j.at("formulation").get<std::string>() == "full" ? Formulation::Full
                                                                     : Formulation::Reduced;
    m.distance_upper_bound = j.at("distance_upper_bound").get<double>();
    if (j.contains("aux_note")) m.aux_note = j["aux_note"].get<std::string>();
    const auto& mu = j.at("mu");
    int rows = static_cast<int>(mu.size());
    m.mu = DenseMatrix(rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < rows; ++k) m.mu(i, k) = mu.at(i).at(k).get<double>();
    for (const auto& v : j.at("variables")) {
        Variable var;
        var.name = v.at("name").get<std::string>();
        var.kind = v.at("kind").get<std::string>() == "binary" ? VarKind::Binary
                                                               : VarKind::Continuous;
        var.lower = v.at("lower").get<double>();
        var.upper = v.at("upper").get<double>();
        m.variables.push_back(std::move(var));
    }
    for (const auto& c : j.at("constraints")) {
        LinearConstraint con;
        con.name = c.at("name").get<std::string>();
        for (const auto& t : c.at("terms"))
            con.terms.push_back({t.at(0).get<double>(), t.at(1).get<std::string>()});
        std::string s = c.at("sense").get<std::string>();
        con.sense = s == "<=" ? ConstraintSense::LessEqual
                    : s == "=" ? ConstraintSense::Equal
                               : ConstraintSense::GreaterEqual;
        con.rhs = c.at("rhs").get<double>();
        m.constraints.push_back(std::move(con));
    }
    m.objective.sense = j.at("objective").at("sense").get<std::string>() == "max"
                            ? ObjectiveSense::Maximize
                            : ObjectiveSense::Minimize;
    for (const auto& t : j.at("objective").at("terms"))
        m.objective.terms.push_back({t.at(0).get<double>(), t.at(1).get<std::string>()});

    // The product inventory is recoverable from the y variable names.
    for (const Variable& v : m.variables) {
        if (v.name.rfind("y_", 0) != 0) continue;
        std::vector<int> idx = split_indices(v.name);
        if (idx.size() != 3) throw std::runtime_error("malformed auxiliary name " + v.name);
        m.products.push_back(make_product(idx[0], idx[1], idx[1], idx[2]));
    }
    return m;
}

SolutionAssignment parse_solution(const std::string& text) {
    SolutionAssignment s;
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_object()) throw std::runtime_error("solution JSON must be an object");
        for (auto it = j.begin(); it != j.end(); ++it) s[it.key()] = it.value().get<double>();
        return s;
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        double value;
        if (!(ls >> value))
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": expected 'name value'");
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": trailing token '" + extra + "'");
        s[name] = value;
    }
    return s;
}

}  // namespace treelap
