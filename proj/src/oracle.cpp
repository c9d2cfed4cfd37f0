#include "treelap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "treelap/identity.hpp"
#include "treelap/shortest_path.hpp"

namespace treelap {

namespace {

constexpr long long kMaxStoredOptimizers = 200000;

void check_enumeration_size(int n, int ceiling) {
    if (n < 2) throw std::invalid_argument("tree enumeration needs n >= 2");
    if (n > ceiling)
        throw std::invalid_argument("tree enumeration for n=" + std::to_string(n) +
                                    " exceeds the ceiling " + std::to_string(ceiling));
}

}  // namespace

long long labeled_tree_count(int n) {
    long long count = 1;
    for (int i = 0; i < n - 2; ++i) count *= n;
    return count;
}

PruferCode code_from_index(int n, long long index) {
    PruferCode code;
    code.labels.assign(std::max(0, n - 2), 1);
    for (int pos = n - 3; pos >= 0; --pos) {
        code.labels[pos] = static_cast<int>(index % n) + 1;
        index /= n;
    }
    return code;
}

WeightedGraph tree_from_code(const PruferCode& code, WeightMode mode, const DenseMatrix* mu) {
    WeightedGraph tree = prufer_decode(code);
    if (mode == WeightMode::Unit) return tree;
    if (mu == nullptr) throw std::invalid_argument("reciprocal weight mode needs a mu matrix");
    std::vector<Edge> edges = tree.edges();
    for (Edge& e : edges) e.weight = 1.0 / (*mu)(e.u - 1, e.v - 1);
    return WeightedGraph(tree.vertex_count(), std::move(edges));
}

void enumerate_trees(int n, WeightMode mode, const DenseMatrix* mu,
                     const std::function<void(const WeightedGraph&, const PruferCode&)>& fn,
                     int ceiling) {
    check_enumeration_size(n, ceiling);
    const long long total = labeled_tree_count(n);
    for (long long index = 0; index < total; ++index) {
        PruferCode code = code_from_index(n, index);
        fn(tree_from_code(code, mode, mu), code);
    }
}

double tree_objective(const ObjectiveSpec& spec, const WeightedGraph& tree,
                      const DenseMatrix& dists) {
    if (spec.kind == ObjectiveKind::Wiener) return wiener_index(dists);
    if (!spec.demand) throw std::invalid_argument("objective needs a demand matrix");
    double value = weighted_distance_sum(dists, *spec.demand);
    if (spec.kind == ObjectiveKind::RoadDesign) {
        if (!spec.cost) throw std::invalid_argument("road objective needs a cost matrix");
        for (const Edge& e : tree.edges()) value += (*spec.cost)(e.u - 1, e.v - 1);
    }
    return value;
}

bool satisfies_side_constraints(const WeightedGraph& tree, const DenseMatrix& dists,
                                const SideConstraints& sc) {
    for (auto [u, v] : sc.forced_edges)
        if (!tree.has_edge(u, v)) return false;
    for (auto [u, v] : sc.banned_edges)
        if (tree.has_edge(u, v)) return false;
    if (!sc.degree_bounds.empty() || sc.max_degree) {
        std::vector<int> deg = degree_sequence(tree);
        for (const DegreeBound& b : sc.degree_bounds)
            if (deg[b.vertex - 1] < b.lo || deg[b.vertex - 1] > b.hi) return false;
        if (sc.max_degree)
            for (int d : deg)
                if (d > *sc.max_degree) return false;
    }
    if (sc.diameter) {
        for (int i = 0; i < dists.rows(); ++i)
            for (int j = i + 1; j < dists.cols(); ++j)
                if (dists(i, j) > *sc.diameter + 1e-9) return false;
    }
    return true;
}

namespace {

struct ChunkResult {
    bool any = false;
    double best = 0.0;
    long long evaluated = 0;
    std::vector<long long> optimizer_indexes;
};

ChunkResult scan_chunk(int n, long long begin, long long end, const ObjectiveSpec& spec,
                       ObjectiveSense sense, const SideConstraints& sc, WeightMode mode,
                       const DenseMatrix* mu) {
    ChunkResult r;
    for (long long index = begin; index < end; ++index) {
        WeightedGraph tree = tree_from_code(code_from_index(n, index), mode, mu);
        DenseMatrix dists = tree_distance_matrix(tree);
        if (!satisfies_side_constraints(tree, dists, sc)) continue;
        ++r.evaluated;
        double value = tree_objective(spec, tree, dists);
        bool better = !r.any || (sense == ObjectiveSense::Minimize ? value < r.best : value > r.best);
        if (better) {
            r.any = true;
            r.best = value;
            r.optimizer_indexes.assign(1, index);
        } else if (value == r.best) {
            r.optimizer_indexes.push_back(index);
        }
    }
    return r;
}

}  // namespace

OptimizationResult brute_force_optimize(int n, const ObjectiveSpec& spec, ObjectiveSense sense,
                                        const SideConstraints& sc, WeightMode mode,
                                        const DenseMatrix* mu, int workers, int ceiling) {
    check_enumeration_size(n, ceiling);
    if (workers < 1) throw std::invalid_argument("worker count must be positive");
    const long long total = labeled_tree_count(n);
    workers = static_cast<int>(std::min<long long>(workers, total));

    std::vector<ChunkResult> chunks(workers);
    {
        std::vector<std::thread> pool;
        long long per = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long long begin = w * per;
            long long end = std::min(total, begin + per);
            pool.emplace_back([&, w, begin, end] {
                chunks[w] = scan_chunk(n, begin, end, spec, sense, sc, mode, mu);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Chunks cover ascending index ranges, so merging in order keeps the
    // lexicographically smallest optimizer first. Tie detection uses exact
    // equality: a given tree's objective is computed identically in every
    // partitioning.
    ChunkResult merged;
    for (const ChunkResult& c : chunks) {
        merged.evaluated += c.evaluated;
        if (!c.any) continue;
        bool better =
            !merged.any || (sense == ObjectiveSense::Minimize ? c.best < merged.best : c.best > merged.best);
        if (better) {
            merged.any = true;
            merged.best = c.best;
            merged.optimizer_indexes = c.optimizer_indexes;
        } else if (c.best == merged.best) {
            merged.optimizer_indexes.insert(merged.optimizer_indexes.end(),
                                            c.optimizer_indexes.begin(), c.optimizer_indexes.end());
        }
    }
    if (!merged.any) throw NoFeasibleTreeError("no tree satisfies the side constraints");

    OptimizationResult result;
    result.best_value = merged.best;
    result.ties = static_cast<long long>(merged.optimizer_indexes.size());
    result.evaluated = merged.evaluated;
    result.best_code = code_from_index(n, merged.optimizer_indexes.front());
    result.best_tree = tree_from_code(result.best_code, mode, mu);
    long long keep = std::min<long long>(result.ties, kMaxStoredOptimizers);
    result.optimizer_codes.reserve(keep);
    for (long long i = 0; i < keep; ++i)
        result.optimizer_codes.push_back(code_from_index(n, merged.optimizer_indexes[i]));
    result.optimizer_codes_truncated = keep < result.ties;
    return result;
}

ConverseCheckReport exhaustive_converse_check(int n) {
    if (n < 2 || n > 5)
        throw std::invalid_argument("exhaustive converse check supports 2 <= n <= 5");

    ConverseCheckReport report;
    report.n = n;
    // Potential edges in lexicographic order index the subset bitmask.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});

    const long long total = 1LL << pairs.size();
    for (long long mask = 0; mask < total; ++mask) {
        std::vector<Edge> edges;
        for (size_t b = 0; b < pairs.size(); ++b)
            if (mask & (1LL << b)) edges.push_back({pairs[b].first, pairs[b].second, 1.0});
        WeightedGraph g(n, std::move(edges));
        bool tree = is_tree(g);
        auto solved = solve_distance_from_laplacian(g);

        ++report.graphs;
        if (tree) ++report.trees;
        if (solved) ++report.solvable;

        if (solved.has_value() != tree) {
            report.counterexamples.push_back("mask " + std::to_string(mask) + ": solvable=" +
                                             (solved ? "yes" : "no") + " but is_tree=" +
                                             (tree ? "yes" : "no"));
            continue;
        }
        if (solved) {
            DenseMatrix expected = distance_matrix(reciprocal(g));
            if (max_abs(*solved - expected) > 1e-9)
                report.counterexamples.push_back("mask " + std::to_string(mask) +
                                                 ": recovered matrix differs from distances by " +
                                                 std::to_string(max_abs(*solved - expected)));
        }
    }
    return report;
}

CrossValidationReport cross_validate_model(int n, const ObjectiveSpec& spec, ObjectiveSense sense,
                                           const DenseMatrix& mu, Formulation formulation) {
    MilpModel model = build_model(n, mu, formulation);
    model = attach_objective(model, spec.kind, sense,
                             spec.demand ? &*spec.demand : nullptr,
                             spec.cost ? &*spec.cost : nullptr);

    CrossValidationReport report;
    bool any = false;
    double extreme = 0.0;
    enumerate_trees(n, WeightMode::ReciprocalOfMu, &mu, [&](const WeightedGraph& tree,
                                                            const PruferCode& code) {
        ++report.trees_checked;
        DenseMatrix dists = tree_distance_matrix(tree);
        double oracle_value = tree_objective(spec, tree, dists);
        SolutionAssignment assignment = tree_induced_assignment(model, tree);
        ViolationReport violations = check_solution(model, assignment, 1e-6);
        double model_value = evaluate_objective(model, assignment);

        auto flag = [&](const std::string& what) {
            ++report.mismatches;
            if (report.details.size() < 20) {
                std::string code_text;
                for (int label : code.labels) code_text += std::to_string(label) + " ";
                report.details.push_back("code [" + code_text + "]: " + what);
            }
        };
        if (!violations.feasible())
            flag("induced assignment infeasible (" + violations.violations.front().name + ")");
        if (std::abs(model_value - oracle_value) > 1e-9)
            flag("model objective " + std::to_string(model_value) + " != oracle " +
                 std::to_string(oracle_value));

        bool better = !any ||
                      (sense == ObjectiveSense::Minimize ? model_value < extreme : model_value > extreme);
        if (better) {
            any = true;
            extreme = model_value;
        }
    });

    OptimizationResult oracle =
        brute_force_optimize(n, spec, sense, {}, WeightMode::ReciprocalOfMu, &mu);
    report.model_optimum = extreme;
    report.oracle_optimum = oracle.best_value;
    report.optimum_consistent = std::abs(extreme - oracle.best_value) <= 1e-9;
    return report;
}

std::pair<DenseMatrix, DenseMatrix> distance_system_for_fixed_x(const MilpModel& m,
                                                                const std::vector<int>& x_bits) {
    const int n = m.n;
    const int pair_count = n * (n - 1) / 2;
    if (static_cast<int>(x_bits.size()) != pair_count)
        throw std::invalid_argument("x_bits must cover every vertex pair");

    std::map<std::string, int> x_value;
    std::map<std::string, int> d_column;
    std::map<std::string, const BilinearTerm*> product_of;
    {
        int idx = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j, ++idx) {
                x_value[x_var_name(i, j)] = x_bits[idx];
                d_column[d_var_name(i, j)] = idx;
            }
        for (const BilinearTerm& t : m.products) product_of[y_var_name(t)] = &t;
    }

    std::vector<const LinearConstraint*> rows;
    for (const LinearConstraint& c : m.constraints)
        if (c.name.rfind("char_", 0) == 0) rows.push_back(&c);

    DenseMatrix a(static_cast<int>(rows.size()), pair_count);
    DenseMatrix b(static_cast<int>(rows.size()), 1);
    for (size_t r = 0; r < rows.size(); ++r) {
        b(static_cast<int>(r), 0) = rows[r]->rhs;
        for (const LinearTerm& term : rows[r]->terms) {
            if (auto xit = x_value.find(term.var); xit != x_value.end()) {
                b(static_cast<int>(r), 0) -= term.coef * xit->second;
            } else if (auto dit = d_column.find(term.var); dit != d_column.end()) {
                a(static_cast<int>(r), dit->second) += term.coef;
            } else {
                const BilinearTerm* t = product_of.at(term.var);
                if (x_value.at(x_var_name(t->x_u, t->x_v)) == 1)
                    a(static_cast<int>(r), d_column.at(d_var_name(t->d_u, t->d_v))) += term.coef;
            }
        }
    }
    return {a, b};
}

}  // namespace treelap
