#pragma once

#include "detour/graph.hpp"

#include <cstdint>
#include <vector>

namespace detour {

// Default cap on DFS expansions per enumeration call. Path counts grow
// exponentially in dense graphs; hitting the cap raises ResourceError
// instead of hanging.
inline constexpr long long kDefaultBudget = 10'000'000;

// All simple paths from i to j whose edge-length lies in (1, k]. The direct
// edge itself (length 1) is excluded, so each path together with {i,j}
// closes a cycle of length at most k+1.
struct DetourPathSet {
    int i = 0;
    int j = 0;
    int k = 0;
    // node sequences i..j, sorted by length then lexicographically
    std::vector<std::vector<int>> paths;
};

// Per-edge detour numbers and the per-node totals Phi.
struct DenTable {
    int k = 0;
    std::vector<std::pair<int, int>> edges; // canonical order, mirrors Graph::edges()
    std::vector<long long> per_edge;        // parallel to edges
    std::vector<long long> per_node_phi;    // per_node_phi[v] = sum over incident edges

    long long den_of(int u, int v) const;
};

// Enumerates the detour path set on edge {i,j}. Depth-bounded DFS with an
// on-path visited set; throws ValidationError when {i,j} is not an edge,
// ResourceError when the budget is exhausted.
DetourPathSet detour_paths(const Graph& g, int i, int j, int k,
                           long long budget = kDefaultBudget);

// Detour numbers for every edge plus node-wise Phi. Parallel over edges;
// output is independent of the worker count. Checks the parity invariant
// (every Phi is even) before returning.
DenTable den(const Graph& g, int k, long long budget = kDefaultBudget, int threads = 0);

// Copy of g whose edge weights carry the k-DeN of each edge.
Graph den_weighted_graph(const Graph& g, int k, long long budget = kDefaultBudget,
                         int threads = 0);

} // namespace detour
