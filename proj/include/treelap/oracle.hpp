#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treelap/graph.hpp"
#include "treelap/matrix.hpp"
#include "treelap/milp.hpp"

namespace treelap {

struct NoFeasibleTreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultEnumerationCeiling = 9;

enum class WeightMode { Unit, ReciprocalOfMu };

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::Wiener;
    std::optional<DenseMatrix> demand;  // M, required for weighted / road objectives
    std::optional<DenseMatrix> cost;    // C, required for the road objective
};

long long labeled_tree_count(int n);  // n^(n-2)
PruferCode code_from_index(int n, long long index);
WeightedGraph tree_from_code(const PruferCode& code, WeightMode mode, const DenseMatrix* mu);

// Visit every labeled tree on n vertices exactly once, in lexicographic code
// order.
void enumerate_trees(int n, WeightMode mode, const DenseMatrix* mu,
                     const std::function<void(const WeightedGraph&, const PruferCode&)>& fn,
                     int ceiling = kDefaultEnumerationCeiling);

double tree_objective(const ObjectiveSpec& spec, const WeightedGraph& tree,
                      const DenseMatrix& dists);

// Feasibility of a tree under side constraints, decided on the tree itself
// (degrees, forced/banned edges, distances) so the oracle stays independent
// of the model builder.
bool satisfies_side_constraints(const WeightedGraph& tree, const DenseMatrix& dists,
                                const SideConstraints& sc);

struct OptimizationResult {
    double best_value = 0.0;
    PruferCode best_code;
    WeightedGraph best_tree{1};
    long long ties = 0;       // number of optimal trees
    long long evaluated = 0;  // number of feasible trees scored
    std::vector<PruferCode> optimizer_codes;
    bool optimizer_codes_truncated = false;
};

// Exhaustive optimization over all labeled trees. Deterministic regardless of
// the worker count: chunks of the code range are reduced independently and
// merged in order, ties broken by the lexicographically smallest code.
OptimizationResult brute_force_optimize(int n, const ObjectiveSpec& spec, ObjectiveSense sense,
                                        const SideConstraints& sc = {},
                                        WeightMode mode = WeightMode::Unit,
                                        const DenseMatrix* mu = nullptr, int workers = 1,
                                        int ceiling = kDefaultEnumerationCeiling);

struct ConverseCheckReport {
    int n = 0;
    long long graphs = 0;
    long long solvable = 0;
    long long trees = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

// For every unit-weight graph on n labeled vertices, the constrained linear
// system in D is solvable exactly when the graph is a tree, and then the
// solution is the distance matrix. n <= 5.
ConverseCheckReport exhaustive_converse_check(int n);

struct CrossValidationReport {
    long long trees_checked = 0;
    long long mismatches = 0;
    std::vector<std::string> details;
    double model_optimum = 0.0;
    double oracle_optimum = 0.0;
    bool optimum_consistent = false;

    bool ok() const { return mismatches == 0 && optimum_consistent; }
};

// Every enumerated tree must induce a feasible model assignment whose model
// objective matches the oracle objective; the oracle optimum must equal the
// extreme of those values.
CrossValidationReport cross_validate_model(int n, const ObjectiveSpec& spec, ObjectiveSense sense,
                                           const DenseMatrix& mu, Formulation formulation);

// Linear system in the distance variables obtained from the model's
// characterization rows once the binaries are fixed (McCormick resolves each
// auxiliary to 0 or to its distance variable). Columns follow the d variables
// in lexicographic pair order.
std::pair<DenseMatrix, DenseMatrix> distance_system_for_fixed_x(const MilpModel& m,
                                                                const std::vector<int>& x_bits);

}  // namespace treelap
