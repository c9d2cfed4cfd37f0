#include "treelap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace treelap {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (Edge& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 1 || e.v > n_)
            throw std::invalid_argument("edge endpoint out of range: {" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + "}");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("edge weights must be positive and finite");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw std::invalid_argument("duplicate edge {" + std::to_string(edges_[i].u) + "," +
                                        std::to_string(edges_[i].v) + "}");
}

bool WeightedGraph::has_edge(int u, int v) const { return weight(u, v) != 0.0; }

double WeightedGraph::weight(int u, int v) const {
    if (u > v) std::swap(u, v);
    Edge probe{u, v, 1.0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    if (it != edges_.end() && it->u == u && it->v == v) return it->weight;
    return 0.0;
}

DenseMatrix adjacency_matrix(const WeightedGraph& g) {
    DenseMatrix x(g.vertex_count(), g.vertex_count());
    for (const Edge& e : g.edges()) {
        x(e.u - 1, e.v - 1) = 1.0;
        x(e.v - 1, e.u - 1) = 1.0;
    }
    return x;
}

DenseMatrix weight_matrix(const WeightedGraph& g) {
    DenseMatrix w(g.vertex_count(), g.vertex_count());
    for (const Edge& e : g.edges()) {
        w(e.u - 1, e.v - 1) = e.weight;
        w(e.v - 1, e.u - 1) = e.weight;
    }
    return w;
}

DenseMatrix laplacian(const WeightedGraph& g) {
    DenseMatrix l(g.vertex_count(), g.vertex_count());
    for (const Edge& e : g.edges()) {
        l(e.u - 1, e.v - 1) -= e.weight;
        l(e.v - 1, e.u - 1) -= e.weight;
        l(e.u - 1, e.u - 1) += e.weight;
        l(e.v - 1, e.v - 1) += e.weight;
    }
    return l;
}

WeightedGraph reciprocal(const WeightedGraph& g) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight = 1.0 / e.weight;
    return WeightedGraph(g.vertex_count(), std::move(edges));
}

std::vector<int> degree_sequence(const WeightedGraph& g) {
    std::vector<int> d(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        ++d[e.u - 1];
        ++d[e.v - 1];
    }
    return d;
}

namespace {

std::vector<std::vector<int>> adjacency_lists(const WeightedGraph& g) {
    std::vector<std::vector<int>> adj(g.vertex_count() + 1);
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

}  // namespace

bool is_connected(const WeightedGraph& g) {
    const int n = g.vertex_count();
    auto adj = adjacency_lists(g);
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return count == n;
}

bool is_tree(const WeightedGraph& g) {
    return g.edge_count() == g.vertex_count() - 1 && is_connected(g);
}

WeightedGraph prufer_decode(const PruferCode& code) {
    const int n = code.vertex_count();
    for (int label : code.labels)
        if (label < 1 || label > n)
            throw std::invalid_argument("prufer label out of range: " + std::to_string(label));

    std::vector<int> degree(n + 1, 1);
    for (int label : code.labels) ++degree[label];

    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v <= n; ++v)
        if (degree[v] == 1) leaves.push(v);

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int label : code.labels) {
        int leaf = leaves.top();
        leaves.pop();
        edges.push_back(Edge{leaf, label, 1.0});
        --degree[leaf];
        if (--degree[label] == 1) leaves.push(label);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    edges.push_back(Edge{a, b, 1.0});
    return WeightedGraph(n, std::move(edges));
}

PruferCode prufer_encode(const WeightedGraph& tree) {
    const int n = tree.vertex_count();
    if (n < 2) throw NotATreeError("prufer_encode: need at least two vertices");
    if (!is_tree(tree)) throw NotATreeError("prufer_encode: input is not a tree");

    std::vector<std::set<int>> adj(n + 1);
    for (const Edge& e : tree.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v <= n; ++v)
        if (adj[v].size() == 1) leaves.push(v);

    PruferCode code;
    code.labels.reserve(n - 2);
    for (int step = 0; step < n - 2; ++step) {
        int leaf = leaves.top();
        leaves.pop();
        int parent = *adj[leaf].begin();
        code.labels.push_back(parent);
        adj[parent].erase(leaf);
        adj[leaf].clear();
        if (adj[parent].size() == 1) leaves.push(parent);
    }
    return code;
}

}  // namespace treelap
