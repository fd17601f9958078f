#pragma once

#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace detour {

// Immutable simple undirected graph. Nodes are dense integers 0..n-1, edges
// are stored canonically (u < v, sorted lexicographically). Optional integer
// node labels and non-negative scalar edge weights ride along; weights are
// parallel to the canonical edge list.
//
// Construction validates everything up front: self-loops and out-of-range
// endpoints throw, duplicate edges collapse to one. After construction the
// object never changes, so it is safe to share across threads.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edge_list,
          std::optional<std::vector<int>> node_labels = std::nullopt,
          std::optional<std::vector<double>> edge_weights = std::nullopt);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

    // index into edges() for {u,v}, or -1 when not an edge
    int edge_id(int u, int v) const;

    const std::optional<std::vector<int>>& node_labels() const { return node_labels_; }
    const std::optional<std::vector<double>>& edge_weights() const { return edge_weights_; }

    // copy of this graph with the given per-edge weights (parallel to edges())
    Graph with_edge_weights(std::vector<double> weights) const;

    // copy with node ids mapped through perm (perm[old] = new)
    Graph relabeled(const std::vector<int>& perm) const;

    bool operator==(const Graph& other) const;

private:
    void check_node(int v) const;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::optional<std::vector<int>> node_labels_;
    std::optional<std::vector<double>> edge_weights_;
    std::unordered_map<long long, int> edge_index_;
};

// Ordered collection of graphs with optional per-graph class labels.
struct GraphDataset {
    std::vector<Graph> graphs;
    std::optional<std::vector<int>> class_labels;
    std::string name;

    bool operator==(const GraphDataset& other) const = default;
};

// Edge-list text: one "u v" per line, optional "n <count>" header,
// '#' starts a comment, whitespace-tolerant. Reversed and repeated edges
// collapse to one; self-loops are rejected.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// Dataset JSON container:
//   {"name": str?, "graphs": [{"n": int, "edges": [[u,v],...],
//    "node_labels": [int,...]?, "edge_weights": [num,...]?}], "labels": [int,...]?}
// edge_weights is parallel to the canonical (u<v, sorted) edge array.
// write followed by parse is the identity on canonicalized datasets.
GraphDataset parse_dataset_json(const std::string& text);
std::string write_dataset_json(const GraphDataset& dataset);

// JSON container for a single graph ("graphs" of length one).
std::string write_graph_json(const Graph& g);

} // namespace detour
