#include "treelap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace treelap {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

WeightedGraph parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("graph JSON parse error: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        if (j.contains("edges")) {
            for (const auto& item : j["edges"]) {
                if (!item.is_array() || item.size() < 2 || item.size() > 3)
                    throw IoError("graph JSON: each edge must be [i, j] or [i, j, w]");
                int u = item.at(0).get<int>();
                int v = item.at(1).get<int>();
                double w = item.size() == 3 ? item.at(2).get<double>() : 1.0;
                if (u >= v) throw IoError("graph JSON: edges must have i < j");
                edges.push_back({u, v, w});
            }
        }
        try {
            return WeightedGraph(n, std::move(edges));
        } catch (const std::invalid_argument& e) {
            throw IoError(std::string("graph JSON: ") + e.what());
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("graph JSON: ") + e.what());
    }
}

WeightedGraph read_graph_json(const std::string& path) {
    return parse_graph_json(read_file(path));
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
    j["edges"] = edges;
    return j.dump() + "\n";
}

DenseMatrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                if (!std::isfinite(v)) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw IoError("matrix CSV line " + std::to_string(lineno) + ": bad cell '" + cell +
                              "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("matrix CSV line " + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("matrix CSV: no rows");
    DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

DenseMatrix read_matrix_csv(const std::string& path) {
    return parse_matrix_csv(read_file(path));
}

std::string matrix_to_csv(const DenseMatrix& m) {
    std::string out;
    char buf[64];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out += buf;
            out += (j + 1 < m.cols()) ? "," : "\n";
        }
    }
    return out;
}

}  // namespace treelap
