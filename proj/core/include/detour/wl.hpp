#pragma once

#include "detour/detour.hpp"
#include "detour/graph.hpp"

#include <array>
#include <map>
#include <vector>

namespace detour {

enum class InitKind { degree, den };

// How round-0 colors are seeded. degree: the classic D(v) coloring.
// den: the pair (D(v), sorted multiset of incident k-DeN values).
// include_labels folds integer node labels into the signature when the
// graph carries them.
struct Initializer {
    InitKind kind = InitKind::degree;
    int k = 0;
    bool include_labels = false;

    static Initializer degree_init(bool labels = false) { return {InitKind::degree, 0, labels}; }
    static Initializer den_init(int k, bool labels = false) { return {InitKind::den, k, labels}; }
};

struct Coloring {
    std::vector<int> colors;              // node -> dense canonical color id
    std::map<int, long long> histogram;   // color id -> count
    int iteration = 0;
};

enum class Verdict { equivalent, distinguishable };

struct WlResult {
    Verdict verdict = Verdict::equivalent;
    int rounds = 0;
    std::array<std::map<int, long long>, 2> final_histograms;
};

// Per-node initial signatures. The raw values (degrees, detour numbers,
// labels) are meaningful across graphs, so signatures from different graphs
// can share one dictionary.
std::vector<std::vector<long long>> initial_signatures(const Graph& g, const Initializer& init,
                                                       long long budget = kDefaultBudget);

// Canonical round-0 coloring of a single graph.
Coloring initial_coloring(const Graph& g, const Initializer& init,
                          long long budget = kDefaultBudget);

// Joint 1-WL refinement of two graphs on their disjoint union. Colors share
// one dictionary per round, so per-graph histograms are directly comparable.
// Distinguishable as soon as the histograms differ; equivalent once the
// joint partition stabilizes (or max_iter rounds pass) with equal
// histograms. max_iter 0 means max(|V1|, |V2|).
WlResult refine(const Graph& g1, const Graph& g2, const Initializer& init,
                int max_iter = 0, long long budget = kDefaultBudget);

// refine() with precomputed initial signatures (the harness caches them).
WlResult refine_from_signatures(const Graph& g1, const std::vector<std::vector<long long>>& sig1,
                                const Graph& g2, const std::vector<std::vector<long long>>& sig2,
                                int max_iter = 0);

// Single-graph refinement run to a stable partition.
Coloring converged_coloring(const Graph& g, const Initializer& init,
                            long long budget = kDefaultBudget);

// Rounds 0..iterations of canonical colorings for a whole collection with
// one shared dictionary per round (the kernel engine's label source).
// Result: per graph, per round.
std::vector<std::vector<Coloring>> wl_label_rounds(const std::vector<Graph>& graphs,
                                                   const Initializer& init, int iterations,
                                                   long long budget = kDefaultBudget);

// Same, seeded with caller-provided per-graph round-0 signatures.
std::vector<std::vector<Coloring>> wl_label_rounds_from_signatures(
    const std::vector<Graph>& graphs,
    const std::vector<std::vector<std::vector<long long>>>& signatures, int iterations);

// Converged per-graph histograms of joint 1-WL over a collection.
std::vector<std::map<int, long long>> wl_joint_histograms(const std::vector<Graph>& graphs,
                                                          const Initializer& init,
                                                          long long budget = kDefaultBudget);

// Oblivious k-WL over ordered tuples, order 2 or 3. Tuples are initialized
// by their ordered isomorphism type (equality pattern + induced adjacency)
// and updated with per-position replacement multisets. size_cap 0 applies
// the default cap (64 nodes at order 2, 16 at order 3); larger graphs raise
// ResourceError.
WlResult kwl_refine(const Graph& g1, const Graph& g2, int order, int max_iter = 0,
                    int size_cap = 0);

// Converged per-graph tuple-state histograms of joint k-WL (dedup helper).
std::vector<std::map<int, long long>> kwl_joint_histograms(const std::vector<Graph>& graphs,
                                                           int order, int size_cap = 0);

// True when partition `fine` refines partition `coarse` (every fine class
// is contained in one coarse class). Both are node -> class id.
bool partition_refines(const std::vector<int>& fine, const std::vector<int>& coarse);

} // namespace detour
