#pragma once

#include <stdexcept>
#include <string>

#include "treelap/graph.hpp"
#include "treelap/matrix.hpp"

namespace treelap {

// File read/parse failures; the CLI maps these to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"n": <int>, "edges": [[i, j, w], ...]} with 1-indexed i < j; w omitted
// means 1.0.
WeightedGraph parse_graph_json(const std::string& text);
WeightedGraph read_graph_json(const std::string& path);
std::string graph_to_json(const WeightedGraph& g);

// n rows of comma-separated decimals.
DenseMatrix parse_matrix_csv(const std::string& text);
DenseMatrix read_matrix_csv(const std::string& path);
std::string matrix_to_csv(const DenseMatrix& m);

}  // namespace treelap
