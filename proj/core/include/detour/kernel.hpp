#pragma once

#include "detour/graph.hpp"
#include "detour/linalg.hpp"
#include "detour/wl.hpp"

#include <string>
#include <vector>

namespace detour {

enum class KernelKind { sp, wl_subtree, wl_sp, wl_den_subtree, wl_den_sp };

KernelKind kernel_kind_from_name(const std::string& name); // CLI spelling
std::string kernel_kind_name(KernelKind kind);

struct KernelSpec {
    KernelKind kind = KernelKind::wl_subtree;
    int iterations = 0;          // WL rounds H
    int k = 0;                   // detour bound for den variants
    bool use_node_labels = false;
};

struct GramMatrix {
    Matrix values;               // N x N, exactly symmetric
    std::vector<int> graph_ids;  // row/col order into the dataset

    double at(int i, int j) const { return values.at(i, j); }
    int size() const { return values.rows; }
};

// Rounds 0..H of canonical WL colorings for a single graph (a dataset of
// one; gram() shares one dictionary across the whole collection instead).
std::vector<Coloring> wl_labels(const Graph& g, const Initializer& init, int iterations,
                                long long budget = kDefaultBudget);

// Shortest-path kernel between two labeled graphs: the number of node-pair
// pairs that agree on (BFS distance, sorted endpoint labels). Pairs with no
// finite distance are skipped. Exact integer count.
long long sp_kernel(const Graph& g1, const Graph& g2, const std::vector<int>& labels1,
                    const std::vector<int>& labels2);

// Gram matrix of the chosen kernel over the dataset. WL label dictionaries
// are shared dataset-wide; detour budget overruns are reported with the
// offending graph index.
GramMatrix gram_matrix(const GraphDataset& dataset, const KernelSpec& spec,
                       long long budget = kDefaultBudget, int threads = 0);

// CSV serialization: N rows of N comma-separated values.
std::string gram_to_csv(const GramMatrix& gram);

} // namespace detour
