#pragma once

#include "detour/detour.hpp"
#include "detour/graph.hpp"

#include <vector>

namespace detour {

// Bounded-length simple cycles in canonical form: each cycle is stored once
// as the node sequence starting at its smallest vertex, oriented so the
// second vertex is smaller than the last.
struct CycleSet {
    int max_len = 0;
    std::vector<std::vector<int>> cycles;
    std::vector<long long> per_node_count;

    long long total() const { return static_cast<long long>(cycles.size()); }
};

// Enumerates every simple cycle of length 3..max_len exactly once.
// Rooted DFS per start vertex restricted to larger vertex ids; reflections
// are removed by requiring second < last. This code shares nothing with the
// detour engine so the two can check each other.
CycleSet enumerate_cycles(const Graph& g, int max_len,
                          long long budget = kDefaultBudget, int threads = 0);

// Node-by-node comparison of Phi against twice the bounded cycle count.
struct Prop1Report {
    struct NodeCheck {
        int node;
        long long phi;
        long long cycle_count;
        bool pass;
    };
    int k = 0;
    bool pass = true;
    std::vector<NodeCheck> nodes;
};

// Checks Phi^k(v) == 2 * |cycles of length <= k+1 through v| for every node.
// Disagreements are reported, not thrown.
Prop1Report verify_prop1(const Graph& g, int k, long long budget = kDefaultBudget,
                         int threads = 0);

} // namespace detour
