#pragma once

#include <random>
#include <vector>

#include "treelap/graph.hpp"
#include "treelap/oracle.hpp"

namespace treelap::test {

// Random labeled tree with weights uniform in [lo, hi].
inline WeightedGraph random_tree(std::mt19937& rng, int n, double lo = 0.1, double hi = 10.0) {
    std::uniform_int_distribution<int> label(1, n);
    PruferCode code;
    for (int i = 0; i < n - 2; ++i) code.labels.push_back(label(rng));
    WeightedGraph tree = prufer_decode(code);
    std::uniform_real_distribution<double> weight(lo, hi);
    std::vector<Edge> edges = tree.edges();
    for (Edge& e : edges) e.weight = weight(rng);
    return WeightedGraph(n, std::move(edges));
}

// Fixed-seed corpus shared by the property tests: trees with n in [2, 12]
// and weights in [0.1, 10].
inline std::vector<WeightedGraph> random_tree_corpus(int count, unsigned seed = 20250811) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> size(2, 12);
    std::vector<WeightedGraph> corpus;
    corpus.reserve(count);
    for (int i = 0; i < count; ++i) corpus.push_back(random_tree(rng, size(rng)));
    return corpus;
}

// Random symmetric matrix with positive off-diagonal entries and zero diagonal.
inline DenseMatrix random_mu(std::mt19937& rng, int n, double lo = 0.2, double hi = 5.0) {
    std::uniform_real_distribution<double> value(lo, hi);
    DenseMatrix mu(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = value(rng);
            mu(i, j) = v;
            mu(j, i) = v;
        }
    return mu;
}

inline DenseMatrix unit_mu(int n) {
    DenseMatrix mu(n, n, 1.0);
    for (int i = 0; i < n; ++i) mu(i, i) = 0.0;
    return mu;
}

}  // namespace treelap::test
