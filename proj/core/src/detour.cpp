#include "detour/detour.hpp"
#include "detour/errors.hpp"
#include "detour/parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace detour {

namespace {

// Depth-bounded DFS over simple paths from `from` toward `target`.
// Arrivals at depth 2..k count; depth-1 arrival is the direct edge and is
// skipped. When `sink` is non-null every completed path is copied out,
// otherwise only counted.
struct PathSearch {
    const Graph& g;
    int target;
    int max_depth;
    long long budget;
    long long expansions = 0;
    long long found = 0;
    std::vector<std::vector<int>>* sink;
    std::vector<char> on_path;
    std::vector<int> path;

    PathSearch(const Graph& graph, int tgt, int k, long long b,
               std::vector<std::vector<int>>* out)
        : g(graph), target(tgt), max_depth(k), budget(b), sink(out),
          on_path(graph.node_count(), 0) {}

    void run(int start) {
        on_path[start] = 1;
        path.push_back(start);
        walk(start, 0);
        path.pop_back();
        on_path[start] = 0;
    }

    void walk(int v, int depth) {
        if (++expansions > budget)
            throw ResourceError("detour enumeration exceeded budget of " +
                                std::to_string(budget) + " states");
        for (int w : g.neighbors(v)) {
            if (w == target) {
                if (depth + 1 > 1 && depth + 1 <= max_depth) {
                    ++found;
                    if (sink) {
                        path.push_back(w);
                        sink->push_back(path);
                        path.pop_back();
                    }
                }
                continue;
            }
            if (on_path[w] || depth + 1 >= max_depth) continue;
            on_path[w] = 1;
            path.push_back(w);
            walk(w, depth + 1);
            path.pop_back();
            on_path[w] = 0;
        }
    }
};

long long count_detours(const Graph& g, int i, int j, int k, long long budget) {
    PathSearch search(g, j, k, budget, nullptr);
    search.run(i);
    return search.found;
}

} // namespace

DetourPathSet detour_paths(const Graph& g, int i, int j, int k, long long budget) {
    if (k < 2) throw ValidationError("detour depth bound k must be >= 2");
    if (!g.has_edge(i, j))
        throw ValidationError("detour paths are defined on edges; {" + std::to_string(i) +
                              "," + std::to_string(j) + "} is not an edge");
    DetourPathSet out{i, j, k, {}};
    PathSearch search(g, j, k, budget, &out.paths);
    search.run(i);
    std::sort(out.paths.begin(), out.paths.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return out;
}

long long DenTable::den_of(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v))
        throw ValidationError("{" + std::to_string(u) + "," + std::to_string(v) +
                              "} is not an edge");
    return per_edge[it - edges.begin()];
}

DenTable den(const Graph& g, int k, long long budget, int threads) {
    if (k < 2) throw ValidationError("detour depth bound k must be >= 2");
    DenTable table;
    table.k = k;
    table.edges = g.edges();
    table.per_edge.assign(table.edges.size(), 0);

    parallel_for(table.edges.size(), threads, [&](std::size_t e) {
        auto [u, v] = table.edges[e];
        table.per_edge[e] = count_detours(g, u, v, k, budget);
    });

    table.per_node_phi.assign(g.node_count(), 0);
    for (std::size_t e = 0; e < table.edges.size(); ++e) {
        table.per_node_phi[table.edges[e].first] += table.per_edge[e];
        table.per_node_phi[table.edges[e].second] += table.per_edge[e];
    }
    // every Phi is twice a cycle count, so odd values mean a broken enumeration
    for (int v = 0; v < g.node_count(); ++v) {
        if (table.per_node_phi[v] % 2 != 0)
            throw std::logic_error("detour invariant violated: Phi(" + std::to_string(v) +
                                   ") = " + std::to_string(table.per_node_phi[v]) +
                                   " is odd");
    }
    return table;
}

Graph den_weighted_graph(const Graph& g, int k, long long budget, int threads) {
    DenTable table = den(g, k, budget, threads);
    std::vector<double> weights(table.per_edge.begin(), table.per_edge.end());
    return g.with_edge_weights(std::move(weights));
}

} // namespace detour
