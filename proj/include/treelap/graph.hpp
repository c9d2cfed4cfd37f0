#pragma once

#include <stdexcept>
#include <vector>

#include "treelap/matrix.hpp"

namespace treelap {

struct NotATreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Undirected edge with a positive weight. Endpoints are 1-indexed and stored
// with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph with positive edge weights. Immutable after
// construction; edges are canonicalized (u < v) and sorted, duplicates and
// self-loops rejected.
class WeightedGraph {
public:
    explicit WeightedGraph(int n, std::vector<Edge> edges = {});

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    // Weight of edge {u, v}, or 0 when the edge is absent.
    double weight(int u, int v) const;

    bool operator==(const WeightedGraph&) const = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

DenseMatrix adjacency_matrix(const WeightedGraph& g);
DenseMatrix weight_matrix(const WeightedGraph& g);
// diag(W 1) - W; rows sum to zero.
DenseMatrix laplacian(const WeightedGraph& g);
// Same edges, each weight replaced by its reciprocal.
WeightedGraph reciprocal(const WeightedGraph& g);

std::vector<int> degree_sequence(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);
// Connected with exactly n-1 edges.
bool is_tree(const WeightedGraph& g);

// Length-(n-2) label sequence in bijection with labeled trees on n >= 2
// vertices; empty for n = 2.
struct PruferCode {
    std::vector<int> labels;

    int vertex_count() const { return static_cast<int>(labels.size()) + 2; }
    bool operator==(const PruferCode&) const = default;
};

// Standard leaf-queue decode with smallest-label tie-breaking; unit weights.
WeightedGraph prufer_decode(const PruferCode& code);
// Inverse of prufer_decode; requires a tree with n >= 2.
PruferCode prufer_encode(const WeightedGraph& tree);

}  // namespace treelap
