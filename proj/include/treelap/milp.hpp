#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treelap/graph.hpp"
#include "treelap/matrix.hpp"

namespace treelap {

struct MissingVariableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VarKind { Binary, Continuous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const Variable&) const = default;
};

enum class ConstraintSense { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
    double coef = 0.0;
    std::string var;

    bool operator==(const LinearTerm&) const = default;
};

struct LinearConstraint {
    std::string name;
    std::vector<LinearTerm> terms;
    ConstraintSense sense = ConstraintSense::Equal;
    double rhs = 0.0;

    bool operator==(const LinearConstraint&) const = default;
};

enum class ObjectiveSense { Minimize, Maximize };

struct Objective {
    ObjectiveSense sense = ObjectiveSense::Minimize;
    std::vector<LinearTerm> terms;

    bool operator==(const Objective&) const = default;
};

enum class Formulation { Full, Reduced };

// One bilinear product x_{edge} * d_{pair}; both index pairs sorted ascending
// and sharing at least one vertex. edge == pair is the own-edge product
// x_ij * d_ij.
struct BilinearTerm {
    int x_u = 0, x_v = 0;
    int d_u = 0, d_v = 0;

    bool operator==(const BilinearTerm&) const = default;
    auto operator<=>(const BilinearTerm&) const = default;
};

std::string x_var_name(int i, int j);
std::string d_var_name(int i, int j);
std::string y_var_name(const BilinearTerm& t);

// Solver-agnostic mixed-integer linear model. Immutable after build; the
// attach_* functions return modified copies.
struct MilpModel {
    int n = 0;
    Formulation formulation = Formulation::Reduced;
    DenseMatrix mu;
    double distance_upper_bound = 0.0;
    std::vector<Variable> variables;
    std::vector<LinearConstraint> constraints;
    Objective objective;
    // Product inventory, aligned with the y variables in declaration order.
    std::vector<BilinearTerm> products;
    // Set when the derived product inventory disagrees with the
    // chain-pattern count n(n-1)(n-2)/6.
    std::string aux_note;

    bool operator==(const MilpModel&) const = default;

    const Variable* find_variable(const std::string& name) const;
};

// n(n-1)(n-2)/6: products x_ik*d_kj with ascending i<k<j only.
long long chain_pattern_aux_count(int n);

// Exact set of distinct products x_e*d_f appearing in the characterization
// rows, derived by expanding them entrywise. Sorted ascending.
std::vector<BilinearTerm> bilinear_inventory(int n, Formulation f);

// Upper bound on any tree distance under reciprocal weights: the sum of the
// n-1 largest entries of 1/mu over the strict upper triangle.
double distance_upper_bound_for(const DenseMatrix& mu);

// Characterization model over C(n,2) binary adjacency variables and C(n,2)
// continuous distance variables; every bilinear product gets one auxiliary
// variable tied down by a four-inequality McCormick envelope. The reduced
// formulation keeps the strict upper triangle of the equality system plus the
// edge lower bounds d_ij >= x_ij / mu_ij; the full formulation keeps all n^2
// equalities.
MilpModel build_model(int n, const DenseMatrix& mu, Formulation f);

enum class ObjectiveKind { Wiener, WeightedWiener, RoadDesign };

// Wiener: sum of d_ij. WeightedWiener: sum of demand_ij * d_ij. RoadDesign:
// sum of cost_ij * x_ij + demand_ij * d_ij. Zero coefficients are dropped.
MilpModel attach_objective(MilpModel m, ObjectiveKind kind, ObjectiveSense sense,
                           const DenseMatrix* demand = nullptr, const DenseMatrix* cost = nullptr);

struct DegreeBound {
    int vertex = 0;
    int lo = 0;
    int hi = 0;

    bool operator==(const DegreeBound&) const = default;
};

struct SideConstraints {
    std::vector<std::pair<int, int>> forced_edges;
    std::vector<std::pair<int, int>> banned_edges;
    std::vector<DegreeBound> degree_bounds;
    std::optional<int> max_degree;      // cap applied to every vertex
    std::optional<double> diameter;     // tightens the distance variable bounds

    bool empty() const {
        return forced_edges.empty() && banned_edges.empty() && degree_bounds.empty() &&
               !max_degree && !diameter;
    }
};

// Degree bounds become rows on sum_j x_ij, forced/banned edges fix binaries
// via equality rows, a diameter bound tightens the d-variable upper bounds.
// Throws on contradictory fixings.
MilpModel attach_side_constraints(MilpModel m, const SideConstraints& sc);

using SolutionAssignment = std::map<std::string, double>;

struct Violation {
    std::string kind;    // constraint | bound | binary | structure | distance
    std::string name;
    double amount = 0.0;
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> violations;
    bool reconstructed_tree_ok = false;
    std::optional<WeightedGraph> reconstructed_tree;

    bool feasible() const { return violations.empty(); }
};

// Check every constraint and bound of the model against the assignment, then
// rebuild the graph from the x-values (edge weights 1/mu_ij) and compare the
// d-values with its distance matrix. Throws MissingVariableError when the
// assignment does not cover the model.
ViolationReport check_solution(const MilpModel& m, const SolutionAssignment& s, double tol);

double evaluate_objective(const MilpModel& m, const SolutionAssignment& s);

// Assignment induced by a spanning tree: x from the edge set, d from the
// tree's distance matrix, y = x * d. The tree must carry weights 1/mu_ij for
// the result to be feasible.
SolutionAssignment tree_induced_assignment(const MilpModel& m, const WeightedGraph& tree);

enum class ModelFormat { Lp, Mps, Json };

// Deterministic serialization; floats carry 17 significant digits so
// emit -> parse round-trips are exact.
std::string emit(const MilpModel& m, ModelFormat format);

MilpModel parse_model_json(const std::string& text);

// Accepts a JSON object of name -> value or plain "name value" lines
// ('#'-prefixed lines are comments).
SolutionAssignment parse_solution(const std::string& text);

}  // namespace treelap
