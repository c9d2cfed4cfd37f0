#pragma once

#include <stdexcept>

#include "treelap/graph.hpp"
#include "treelap/matrix.hpp"

namespace treelap {

struct DisconnectedGraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All-pairs minimum path weights, one Dijkstra run per source. Throws
// DisconnectedGraphError when some pair is unreachable.
DenseMatrix distance_matrix(const WeightedGraph& g);

// Path-weight accumulation along the unique tree paths, root-to-leaf from each
// source. Agrees with distance_matrix on trees; requires a tree.
DenseMatrix tree_distance_matrix(const WeightedGraph& g);

// Sum of distances over unordered pairs.
double wiener_index(const DenseMatrix& d);

// Sum of m_ij * d_ij over unordered pairs; m must be square of matching size.
double weighted_distance_sum(const DenseMatrix& d, const DenseMatrix& m);

}  // namespace treelap
