#include "treelap/shortest_path.hpp"

#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace treelap {

namespace {

struct Arc {
    int to;
    double weight;
};

std::vector<std::vector<Arc>> arc_lists(const WeightedGraph& g) {
    std::vector<std::vector<Arc>> adj(g.vertex_count() + 1);
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back({e.v, e.weight});
        adj[e.v].push_back({e.u, e.weight});
    }
    return adj;
}

}  // namespace

DenseMatrix distance_matrix(const WeightedGraph& g) {
    const int n = g.vertex_count();
    auto adj = arc_lists(g);
    const double inf = std::numeric_limits<double>::infinity();
    DenseMatrix d(n, n);

    std::vector<double> dist(n + 1);
    using Item = std::pair<double, int>;
    for (int src = 1; src <= n; ++src) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[src] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.push({0.0, src});
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[u]) continue;
            for (const Arc& a : adj[u]) {
                double nd = du + a.weight;
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    heap.push({nd, a.to});
                }
            }
        }
        // Mirror from the smaller-indexed source so the matrix is exactly
        // symmetric despite opposite accumulation orders.
        for (int v = 1; v <= n; ++v) {
            if (dist[v] == inf)
                throw DisconnectedGraphError("distance_matrix: vertices " + std::to_string(src) +
                                             " and " + std::to_string(v) + " are not connected");
            if (v > src) {
                d(src - 1, v - 1) = dist[v];
                d(v - 1, src - 1) = dist[v];
            }
        }
    }
    return d;
}

DenseMatrix tree_distance_matrix(const WeightedGraph& g) {
    if (!is_tree(g)) throw NotATreeError("tree_distance_matrix: input is not a tree");
    const int n = g.vertex_count();
    auto adj = arc_lists(g);
    DenseMatrix d(n, n);

    std::vector<int> stack;
    std::vector<char> seen(n + 1);
    for (int root = 1; root <= n; ++root) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, root);
        seen[root] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const Arc& a : adj[u]) {
                if (seen[a.to]) continue;
                seen[a.to] = 1;
                d(root - 1, a.to - 1) = d(root - 1, u - 1) + a.weight;
                stack.push_back(a.to);
            }
        }
    }
    // mirrored the same way as distance_matrix
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d(j, i) = d(i, j);
    return d;
}

double wiener_index(const DenseMatrix& d) {
    if (!d.square()) throw std::invalid_argument("wiener_index: matrix must be square");
    double sum = 0.0;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = i + 1; j < d.cols(); ++j) sum += d(i, j);
    return sum;
}

double weighted_distance_sum(const DenseMatrix& d, const DenseMatrix& m) {
    if (!d.square() || !m.square() || d.rows() != m.rows())
        throw std::invalid_argument("weighted_distance_sum: dimension mismatch");
    double sum = 0.0;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = i + 1; j < d.cols(); ++j) sum += m(i, j) * d(i, j);
    return sum;
}

}  // namespace treelap
