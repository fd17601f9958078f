#include "detour/cycles.hpp"
#include "detour/errors.hpp"
#include "detour/parallel.hpp"

#include <algorithm>
#include <string>

namespace detour {

namespace {

// Cycles rooted at start vertex s: only vertices > s may appear after s, so
// every cycle is found from its minimum vertex exactly. The closing edge
// back to s may exist at any depth >= 2 (cycle length depth+1 >= 3).
struct CycleSearch {
    const Graph& g;
    int start;
    int max_len;
    long long budget;
    long long expansions = 0;
    std::vector<char> on_path;
    std::vector<int> path;
    std::vector<std::vector<int>>& out;

    CycleSearch(const Graph& graph, int s, int L, long long b,
                std::vector<std::vector<int>>& sink)
        : g(graph), start(s), max_len(L), budget(b), on_path(graph.node_count(), 0),
          out(sink) {}

    void run() {
        on_path[start] = 1;
        path.push_back(start);
        extend(start, 1);
        path.pop_back();
        on_path[start] = 0;
    }

    void extend(int v, int len) {
        if (++expansions > budget)
            throw ResourceError("cycle enumeration exceeded budget of " +
                                std::to_string(budget) + " states");
        for (int w : g.neighbors(v)) {
            if (w == start) {
                // closing edge; dedup the two orientations via second < last
                if (len >= 3 && path[1] < path[len - 1]) out.push_back(path);
                continue;
            }
            if (w < start || on_path[w] || len >= max_len) continue;
            on_path[w] = 1;
            path.push_back(w);
            extend(w, len + 1);
            path.pop_back();
            on_path[w] = 0;
        }
    }
};

} // namespace

CycleSet enumerate_cycles(const Graph& g, int max_len, long long budget, int threads) {
    if (max_len < 3) throw ValidationError("cycle length bound must be >= 3");
    int n = g.node_count();

    std::vector<std::vector<std::vector<int>>> per_start(n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t s) {
        CycleSearch search(g, static_cast<int>(s), max_len, budget, per_start[s]);
        search.run();
    });

    CycleSet set;
    set.max_len = max_len;
    set.per_node_count.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        for (auto& cyc : per_start[s]) {
            for (int v : cyc) ++set.per_node_count[v];
            set.cycles.push_back(std::move(cyc));
        }
    }
    return set;
}

Prop1Report verify_prop1(const Graph& g, int k, long long budget, int threads) {
    if (k < 2) throw ValidationError("detour depth bound k must be >= 2");
    DenTable table = den(g, k, budget, threads);
    CycleSet cycles = enumerate_cycles(g, k + 1, budget, threads);

    Prop1Report report;
    report.k = k;
    for (int v = 0; v < g.node_count(); ++v) {
        bool ok = table.per_node_phi[v] == 2 * cycles.per_node_count[v];
        report.nodes.push_back({v, table.per_node_phi[v], cycles.per_node_count[v], ok});
        report.pass = report.pass && ok;
    }
    return report;
}

} // namespace detour
