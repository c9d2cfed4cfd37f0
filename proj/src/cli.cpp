#include "treelap/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treelap/identity.hpp"
#include "treelap/io.hpp"
#include "treelap/milp.hpp"
#include "treelap/oracle.hpp"
#include "treelap/shortest_path.hpp"

namespace treelap {

namespace {

using nlohmann::ordered_json;

struct CliConfig {
    // verify
    std::string graph_path;
    std::string distance_path;
    // emit / oracle
    int n = 0;
    std::string mu_path;
    std::string demand_path;
    std::string cost_path;
    std::string formulation = "reduced";
    std::string objective = "wiener";
    std::string sense = "min";
    std::string format = "lp";
    std::string out_path = "-";
    std::vector<std::string> force_edges;
    std::vector<std::string> ban_edges;
    std::vector<std::string> degree_bounds;
    int max_degree = -1;
    double diameter = 0.0;
    double tol = 0.0;
    int workers = 1;
    int max_n = kDefaultEnumerationCeiling;
    // check
    std::string model_path;
    std::string solution_path;
};

std::pair<int, int> parse_edge_flag(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("edge flag must look like i,j: " + text);
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

SideConstraints side_constraints_from(const CliConfig& cfg) {
    SideConstraints sc;
    for (const std::string& e : cfg.force_edges) sc.forced_edges.push_back(parse_edge_flag(e));
    for (const std::string& e : cfg.ban_edges) sc.banned_edges.push_back(parse_edge_flag(e));
    for (const std::string& b : cfg.degree_bounds) {
        std::istringstream in(b);
        std::string v, lo, hi;
        if (!std::getline(in, v, ':') || !std::getline(in, lo, ':') || !std::getline(in, hi, ':'))
            throw std::invalid_argument("degree bound must look like vertex:lo:hi: " + b);
        sc.degree_bounds.push_back({std::stoi(v), std::stoi(lo), std::stoi(hi)});
    }
    if (cfg.max_degree >= 0) sc.max_degree = cfg.max_degree;
    if (cfg.diameter > 0.0) sc.diameter = cfg.diameter;
    return sc;
}

DenseMatrix unit_mu(int n) {
    DenseMatrix mu(n, n, 1.0);
    for (int i = 0; i < n; ++i) mu(i, i) = 0.0;
    return mu;
}

ObjectiveKind objective_kind_from(const std::string& name) {
    if (name == "wiener") return ObjectiveKind::Wiener;
    if (name == "weighted") return ObjectiveKind::WeightedWiener;
    return ObjectiveKind::RoadDesign;
}

ordered_json graph_json(const WeightedGraph& g) {
    return ordered_json::parse(graph_to_json(g));
}

ordered_json code_json(const PruferCode& code) {
    ordered_json arr = ordered_json::array();
    for (int label : code.labels) arr.push_back(label);
    return arr;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    WeightedGraph g = read_graph_json(cfg.graph_path);
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("the identities are degenerate for a single vertex");
    const bool tree = is_tree(g);

    ordered_json report;
    report["is_tree"] = tree;
    std::vector<std::string> failures;
    if (!tree) failures.push_back("input graph is not a tree");

    std::optional<DenseMatrix> candidate;
    if (!cfg.distance_path.empty()) {
        DenseMatrix d = read_matrix_csv(cfg.distance_path);
        if (d.rows() != n || d.cols() != n)
            throw std::invalid_argument("distance matrix must be " + std::to_string(n) + " x " +
                                        std::to_string(n));
        candidate = std::move(d);
        report["distance_source"] = "file";
    } else if (is_connected(g)) {
        candidate = distance_matrix(reciprocal(g));
        report["distance_source"] = "computed";
    } else {
        failures.push_back("graph is disconnected; no finite distance matrix exists");
        report["distance_source"] = nullptr;
    }

    double tol = cfg.tol;
    if (candidate) {
        IdentityReport ir = check_identity(g, *candidate, cfg.tol);
        tol = ir.tolerance;
        report["tolerance"] = ir.tolerance;
        report["identity"] = {{"residual_full", ir.residual_full},
                              {"residual_upper", ir.residual_upper},
                              {"residual_ldl", ir.residual_ldl},
                              {"holds_full", ir.holds_full},
                              {"holds_upper", ir.holds_upper},
                              {"holds_ldl", ir.holds_ldl}};
        if (!(ir.holds_full && ir.holds_upper && ir.holds_ldl))
            failures.push_back("characterization residual exceeds tolerance");
    }

    auto recovered = solve_distance_from_laplacian(g, cfg.tol);
    ordered_json recovery;
    recovery["solvable"] = recovered.has_value();
    if (!recovered && !tree)
        failures.push_back("no zero-diagonal distance matrix satisfies the characterization");
    if (recovered.has_value() != tree)
        failures.push_back("distance recovery disagrees with the tree predicate");
    if (recovered && tree) {
        double gap = max_abs(*recovered - distance_matrix(reciprocal(g)));
        recovery["max_error"] = gap;
        if (gap > std::max(tol, 1e-9)) failures.push_back("recovered distance matrix is off");
    }
    report["distance_recovery"] = recovery;

    if (tree) {
        DenseMatrix dists = distance_matrix(reciprocal(g));
        double check_tol = std::max(tol, 1e-9);

        double inv_residual =
            max_abs(matmul(dists, graham_lovasz_inverse(g)) - DenseMatrix::identity(n));
        report["inverse_formula"] = {{"residual", inv_residual},
                                     {"holds", inv_residual <= check_tol}};
        if (inv_residual > check_tol) failures.push_back("closed-form distance inverse is off");

        DenseMatrix centering = DenseMatrix::identity(n) - (1.0 / n) * DenseMatrix::constant(n, n, 1.0);
        double gl_residual = max_abs(matmul(generalized_inverse_laplacian(g), laplacian(g)) - centering);
        report["generalized_inverse"] = {{"residual", gl_residual},
                                         {"holds", gl_residual <= check_tol}};
        if (gl_residual > check_tol) failures.push_back("generalized inverse contract is off");

        double total_weight = 0.0;
        for (const Edge& e : g.edges()) total_weight += e.weight;
        double value = spherical_edm_check(g);
        double expected = 2.0 / total_weight;
        bool holds = std::abs(value - expected) <= check_tol && value > 0.0;
        report["spherical_edm"] = {{"value", value}, {"expected", expected}, {"holds", holds}};
        if (!holds) failures.push_back("sphericity value is off");
    }

    bool all_hold = failures.empty();
    report["all_hold"] = all_hold;
    report["failures"] = failures;
    out << report.dump(2) << "\n";
    err << (all_hold ? "verify: all checks hold\n" : "verify: FAILED\n");
    for (const std::string& f : failures) err << "  - " << f << "\n";
    return all_hold ? 0 : 1;
}

int cmd_emit(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.n < 2) throw std::invalid_argument("emit needs --n >= 2");
    DenseMatrix mu = cfg.mu_path.empty() ? unit_mu(cfg.n) : read_matrix_csv(cfg.mu_path);
    Formulation f = cfg.formulation == "full" ? Formulation::Full : Formulation::Reduced;
    MilpModel model = build_model(cfg.n, mu, f);

    std::optional<DenseMatrix> demand, cost;
    if (!cfg.demand_path.empty()) demand = read_matrix_csv(cfg.demand_path);
    if (!cfg.cost_path.empty()) cost = read_matrix_csv(cfg.cost_path);
    ObjectiveKind kind = objective_kind_from(cfg.objective);
    ObjectiveSense sense = cfg.sense == "max" ? ObjectiveSense::Maximize : ObjectiveSense::Minimize;
    model = attach_objective(model, kind, sense, demand ? &*demand : nullptr,
                             cost ? &*cost : nullptr);
    model = attach_side_constraints(model, side_constraints_from(cfg));

    ModelFormat format = cfg.format == "mps"    ? ModelFormat::Mps
                         : cfg.format == "json" ? ModelFormat::Json
                                                : ModelFormat::Lp;
    std::string text = emit(model, format);

    long long binaries = 0, continuous = 0;
    for (const Variable& v : model.variables)
        (v.kind == VarKind::Binary ? binaries : continuous) += 1;
    err << "emit: n=" << model.n << " " << cfg.formulation << " binaries=" << binaries
        << " continuous=" << continuous << " auxiliaries=" << model.products.size()
        << " constraints=" << model.constraints.size() << "\n";
    if (!model.aux_note.empty()) err << "note: " << model.aux_note << "\n";

    if (cfg.out_path == "-") {
        out << text;
    } else {
        write_file(cfg.out_path, text);
        ordered_json summary;
        summary["out"] = cfg.out_path;
        summary["format"] = cfg.format;
        summary["binaries"] = binaries;
        summary["continuous"] = continuous;
        summary["auxiliaries"] = model.products.size();
        summary["constraints"] = model.constraints.size();
        if (!model.aux_note.empty()) summary["aux_note"] = model.aux_note;
        out << summary.dump(2) << "\n";
    }
    return 0;
}

MilpModel load_model(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_model_json(text);
    } catch (const std::exception& e) {
        throw IoError("model JSON: " + std::string(e.what()));
    }
}

SolutionAssignment load_solution(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_solution(text);
    } catch (const std::exception& e) {
        throw IoError("solution file: " + std::string(e.what()));
    }
}

int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    MilpModel model = load_model(cfg.model_path);
    SolutionAssignment solution = load_solution(cfg.solution_path);
    double tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;
    ViolationReport result = check_solution(model, solution, tol);

    ordered_json report;
    report["feasible"] = result.feasible();
    report["tolerance"] = tol;
    ordered_json violations = ordered_json::array();
    for (const Violation& v : result.violations)
        violations.push_back(
            {{"kind", v.kind}, {"name", v.name}, {"amount", v.amount}, {"detail", v.detail}});
    report["violations"] = violations;
    report["tree_ok"] = result.reconstructed_tree_ok;
    if (result.reconstructed_tree) report["support"] = graph_json(*result.reconstructed_tree);
    bool distances_ok = result.reconstructed_tree_ok;
    for (const Violation& v : result.violations)
        if (v.kind == "distance") distances_ok = false;
    report["distances_match"] = distances_ok;
    out << report.dump(2) << "\n";
    err << (result.feasible() ? "check: feasible\n"
                              : "check: " + std::to_string(result.violations.size()) +
                                    " violation(s)\n");
    return result.feasible() ? 0 : 1;
}

int cmd_oracle(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.n < 2) throw std::invalid_argument("oracle needs --n >= 2");
    std::optional<DenseMatrix> mu;
    if (!cfg.mu_path.empty()) mu = read_matrix_csv(cfg.mu_path);

    ObjectiveSpec spec;
    spec.kind = objective_kind_from(cfg.objective);
    if (!cfg.demand_path.empty()) spec.demand = read_matrix_csv(cfg.demand_path);
    if (!cfg.cost_path.empty()) spec.cost = read_matrix_csv(cfg.cost_path);
    ObjectiveSense sense = cfg.sense == "max" ? ObjectiveSense::Maximize : ObjectiveSense::Minimize;

    OptimizationResult result = brute_force_optimize(
        cfg.n, spec, sense, side_constraints_from(cfg),
        mu ? WeightMode::ReciprocalOfMu : WeightMode::Unit, mu ? &*mu : nullptr, cfg.workers,
        cfg.max_n);

    ordered_json report;
    report["n"] = cfg.n;
    report["objective"] = cfg.objective;
    report["sense"] = cfg.sense;
    report["best_value"] = result.best_value;
    report["ties"] = result.ties;
    report["evaluated"] = result.evaluated;
    report["best_code"] = code_json(result.best_code);
    report["best_tree"] = graph_json(result.best_tree);
    constexpr long long kListCap = 10000;
    ordered_json codes = ordered_json::array();
    long long listed = std::min<long long>(result.ties, kListCap);
    for (long long i = 0; i < listed && i < static_cast<long long>(result.optimizer_codes.size());
         ++i)
        codes.push_back(code_json(result.optimizer_codes[i]));
    report["optimizer_codes"] = codes;
    report["optimizer_codes_truncated"] =
        result.optimizer_codes_truncated || listed < result.ties;
    out << report.dump(2) << "\n";
    err << "oracle: best=" << result.best_value << " ties=" << result.ties
        << " evaluated=" << result.evaluated << "\n";
    return 0;
}

int cmd_converse_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    ConverseCheckReport result = exhaustive_converse_check(cfg.n);
    ordered_json report;
    report["n"] = result.n;
    report["graphs"] = result.graphs;
    report["solvable"] = result.solvable;
    report["trees"] = result.trees;
    report["counterexamples"] = result.counterexamples;
    report["ok"] = result.ok();
    out << report.dump(2) << "\n";
    err << "converse-check: " << result.graphs << " graphs, " << result.solvable << " solvable, "
        << result.trees << " trees, " << result.counterexamples.size() << " counterexample(s)\n";
    return result.ok() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"weighted-tree characterization toolkit: verify the Laplacian/distance identity, "
                 "emit MILP models for extremal tree problems, check solutions, run the "
                 "brute-force oracle"};
    app.require_subcommand(1);

    CLI::App* verify = app.add_subcommand("verify", "verify the identity for a graph file");
    verify->add_option("graph", cfg.graph_path, "graph JSON file")->required();
    verify->add_option("--distance", cfg.distance_path, "candidate distance matrix CSV");
    verify->add_option("--tol", cfg.tol, "residual tolerance (default: scaled automatically)");

    CLI::App* emit_cmd = app.add_subcommand("emit", "emit a MILP model");
    emit_cmd->add_option("--n", cfg.n, "vertex count")->required();
    emit_cmd->add_option("--mu", cfg.mu_path, "edge weight selection matrix CSV (default: unit)");
    emit_cmd->add_option("--formulation", cfg.formulation, "constraint system")
        ->check(CLI::IsMember({"full", "reduced"}));
    emit_cmd->add_option("--objective", cfg.objective, "objective kind")
        ->check(CLI::IsMember({"wiener", "weighted", "road"}));
    emit_cmd->add_option("--sense", cfg.sense, "optimization sense")
        ->check(CLI::IsMember({"min", "max"}));
    emit_cmd->add_option("--demand", cfg.demand_path, "demand matrix CSV (weighted/road)");
    emit_cmd->add_option("--cost", cfg.cost_path, "construction cost matrix CSV (road)");
    emit_cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"lp", "mps", "json"}));
    emit_cmd->add_option("--out", cfg.out_path, "output path, - for stdout");
    emit_cmd->add_option("--force-edge", cfg.force_edges, "force edge i,j (repeatable)");
    emit_cmd->add_option("--ban-edge", cfg.ban_edges, "ban edge i,j (repeatable)");
    emit_cmd->add_option("--degree-bound", cfg.degree_bounds, "vertex:lo:hi (repeatable)");
    emit_cmd->add_option("--max-degree", cfg.max_degree, "degree cap for every vertex");
    emit_cmd->add_option("--diameter", cfg.diameter, "upper bound on tree distances");

    CLI::App* check = app.add_subcommand("check", "check a solution against a model");
    check->add_option("model", cfg.model_path, "model JSON file")->required();
    check->add_option("solution", cfg.solution_path, "solution file (JSON or name value lines)")
        ->required();
    check->add_option("--tol", cfg.tol, "feasibility tolerance (default 1e-6)");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force extremal tree search");
    oracle->add_option("--n", cfg.n, "vertex count")->required();
    oracle->add_option("--mu", cfg.mu_path, "weight selection matrix CSV (trees get weights 1/mu)");
    oracle->add_option("--objective", cfg.objective, "objective kind")
        ->check(CLI::IsMember({"wiener", "weighted", "road"}));
    oracle->add_option("--sense", cfg.sense, "optimization sense")
        ->check(CLI::IsMember({"min", "max"}));
    oracle->add_option("--demand", cfg.demand_path, "demand matrix CSV");
    oracle->add_option("--cost", cfg.cost_path, "cost matrix CSV");
    oracle->add_option("--workers", cfg.workers, "parallel workers");
    oracle->add_option("--max-n", cfg.max_n, "enumeration ceiling");
    oracle->add_option("--force-edge", cfg.force_edges, "force edge i,j (repeatable)");
    oracle->add_option("--ban-edge", cfg.ban_edges, "ban edge i,j (repeatable)");
    oracle->add_option("--degree-bound", cfg.degree_bounds, "vertex:lo:hi (repeatable)");
    oracle->add_option("--max-degree", cfg.max_degree, "degree cap for every vertex");
    oracle->add_option("--diameter", cfg.diameter, "upper bound on tree distances");

    CLI::App* converse = app.add_subcommand("converse-check", "exhaustive converse check");
    converse->add_option("--n", cfg.n, "vertex count (2..5)")->required();

    std::vector<char*> argv;
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("treelap");
    for (const std::string& a : args) storage.push_back(a);
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(cfg, out, err);
        if (app.got_subcommand(emit_cmd)) return cmd_emit(cfg, out, err);
        if (app.got_subcommand(check)) return cmd_check(cfg, out, err);
        if (app.got_subcommand(oracle)) return cmd_oracle(cfg, out, err);
        return cmd_converse_check(cfg, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingVariableError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace treelap
