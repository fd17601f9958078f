#include "detour/wl.hpp"
#include "detour/errors.hpp"

#include <algorithm>
#include <string>

namespace detour {

namespace {

// Dense ids in lexicographic signature order: deterministic and independent
// of node input order, the injective stand-in for Eq-style hashing.
std::pair<std::vector<int>, int> canonical_ids(const std::vector<std::vector<long long>>& sigs) {
    std::map<std::vector<long long>, int> dict;
    for (const auto& s : sigs) dict.emplace(s, 0);
    int next = 0;
    for (auto& [sig, id] : dict) id = next++;
    std::vector<int> ids(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i) ids[i] = dict.at(sigs[i]);
    return {std::move(ids), next};
}

std::map<int, long long> histogram_of(const std::vector<int>& colors, std::size_t begin,
                                      std::size_t end) {
    std::map<int, long long> h;
    for (std::size_t i = begin; i < end; ++i) ++h[colors[i]];
    return h;
}

void validate(const Initializer& init) {
    if (init.kind == InitKind::den && init.k < 2)
        throw ValidationError("den initializer requires k >= 2");
}

// Disjoint union of a graph collection with per-round joint refinement.
struct JointRefiner {
    const std::vector<Graph>& graphs;
    std::vector<std::size_t> offset; // node offsets per graph; back() = total
    std::vector<int> colors;
    int num_classes = 0;
    int round = 0;

    JointRefiner(const std::vector<Graph>& gs, const Initializer& init, long long budget)
        : graphs(gs) {
        lay_out();
        std::vector<std::vector<long long>> sigs;
        sigs.reserve(offset.back());
        for (const Graph& g : gs) {
            auto gsigs = initial_signatures(g, init, budget);
            for (auto& s : gsigs) sigs.push_back(std::move(s));
        }
        std::tie(colors, num_classes) = canonical_ids(sigs);
    }

    JointRefiner(const std::vector<Graph>& gs, std::vector<std::vector<long long>> sigs)
        : graphs(gs) {
        lay_out();
        std::tie(colors, num_classes) = canonical_ids(sigs);
    }

    void lay_out() {
        offset.push_back(0);
        for (const Graph& g : graphs)
            offset.push_back(offset.back() + static_cast<std::size_t>(g.node_count()));
    }

    // One refinement step. Returns false once the partition is stable.
    // Each signature embeds the previous color, so classes only ever split;
    // an unchanged class count therefore means an unchanged partition.
    bool step() {
        std::vector<std::vector<long long>> sigs(offset.back());
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const Graph& g = graphs[gi];
            for (int v = 0; v < g.node_count(); ++v) {
                std::size_t idx = offset[gi] + static_cast<std::size_t>(v);
                std::vector<long long>& sig = sigs[idx];
                sig.reserve(g.degree(v) + 1);
                sig.push_back(colors[idx]);
                for (int w : g.neighbors(v)) sig.push_back(colors[offset[gi] + w]);
                std::sort(sig.begin() + 1, sig.end());
            }
        }
        auto [ids, classes] = canonical_ids(sigs);
        ++round;
        if (classes == num_classes) return false;
        colors = std::move(ids);
        num_classes = classes;
        return true;
    }

    std::map<int, long long> histogram(std::size_t gi) const {
        return histogram_of(colors, offset[gi], offset[gi + 1]);
    }

    std::vector<int> graph_colors(std::size_t gi) const {
        return {colors.begin() + offset[gi], colors.begin() + offset[gi + 1]};
    }
};

WlResult run_pair(JointRefiner& joint, int max_iter) {
    WlResult result;
    for (;;) {
        auto h1 = joint.histogram(0);
        auto h2 = joint.histogram(1);
        result.final_histograms = {h1, h2};
        if (h1 != h2) {
            result.verdict = Verdict::distinguishable;
            return result;
        }
        if (result.rounds >= max_iter) return result;
        if (!joint.step()) {
            ++result.rounds;
            return result;
        }
        ++result.rounds;
    }
}

int default_pair_iters(const Graph& g1, const Graph& g2) {
    return std::max(g1.node_count(), g2.node_count());
}

} // namespace

std::vector<std::vector<long long>> initial_signatures(const Graph& g, const Initializer& init,
                                                       long long budget) {
    validate(init);
    bool with_labels = init.include_labels && g.node_labels().has_value();
    std::vector<std::vector<long long>> sigs(g.node_count());

    if (init.kind == InitKind::degree) {
        for (int v = 0; v < g.node_count(); ++v) {
            sigs[v].push_back(g.degree(v));
            if (with_labels) sigs[v].push_back((*g.node_labels())[v]);
        }
        return sigs;
    }

    DenTable table = den(g, init.k, budget);
    for (int v = 0; v < g.node_count(); ++v) {
        std::vector<long long>& sig = sigs[v];
        sig.push_back(g.degree(v));
        if (with_labels) sig.push_back((*g.node_labels())[v]);
        std::size_t tail = sig.size();
        for (int w : g.neighbors(v)) sig.push_back(table.den_of(v, w));
        std::sort(sig.begin() + tail, sig.end());
    }
    return sigs;
}

Coloring initial_coloring(const Graph& g, const Initializer& init, long long budget) {
    auto sigs = initial_signatures(g, init, budget);
    Coloring coloring;
    std::tie(coloring.colors, std::ignore) = canonical_ids(sigs);
    coloring.histogram = histogram_of(coloring.colors, 0, coloring.colors.size());
    coloring.iteration = 0;
    return coloring;
}

WlResult refine(const Graph& g1, const Graph& g2, const Initializer& init, int max_iter,
                long long budget) {
    std::vector<Graph> pair{g1, g2};
    JointRefiner joint(pair, init, budget);
    if (max_iter <= 0) max_iter = default_pair_iters(g1, g2);
    return run_pair(joint, max_iter);
}

WlResult refine_from_signatures(const Graph& g1, const std::vector<std::vector<long long>>& sig1,
                                const Graph& g2, const std::vector<std::vector<long long>>& sig2,
                                int max_iter) {
    std::vector<Graph> pair{g1, g2};
    std::vector<std::vector<long long>> sigs = sig1;
    sigs.insert(sigs.end(), sig2.begin(), sig2.end());
    JointRefiner joint(pair, std::move(sigs));
    if (max_iter <= 0) max_iter = default_pair_iters(g1, g2);
    return run_pair(joint, max_iter);
}

Coloring converged_coloring(const Graph& g, const Initializer& init, long long budget) {
    std::vector<Graph> one{g};
    JointRefiner joint(one, init, budget);
    while (joint.step()) {
    }
    Coloring coloring;
    coloring.colors = joint.graph_colors(0);
    coloring.histogram = joint.histogram(0);
    coloring.iteration = joint.round;
    return coloring;
}

namespace {

std::vector<std::vector<Coloring>> collect_rounds(JointRefiner& joint, std::size_t graph_count,
                                                  int iterations) {
    if (iterations < 0) throw ValidationError("iterations must be >= 0");
    std::vector<std::vector<Coloring>> rounds(graph_count);
    auto snapshot = [&](int iter) {
        for (std::size_t gi = 0; gi < graph_count; ++gi)
            rounds[gi].push_back({joint.graph_colors(gi), joint.histogram(gi), iter});
    };
    snapshot(0);
    for (int it = 1; it <= iterations; ++it) {
        joint.step(); // a stable partition simply repeats, ids included
        snapshot(it);
    }
    return rounds;
}

} // namespace

std::vector<std::vector<Coloring>> wl_label_rounds(const std::vector<Graph>& graphs,
                                                   const Initializer& init, int iterations,
                                                   long long budget) {
    JointRefiner joint(graphs, init, budget);
    return collect_rounds(joint, graphs.size(), iterations);
}

std::vector<std::vector<Coloring>> wl_label_rounds_from_signatures(
    const std::vector<Graph>& graphs,
    const std::vector<std::vector<std::vector<long long>>>& signatures, int iterations) {
    std::vector<std::vector<long long>> flat;
    for (const auto& gsigs : signatures) flat.insert(flat.end(), gsigs.begin(), gsigs.end());
    JointRefiner joint(graphs, std::move(flat));
    return collect_rounds(joint, graphs.size(), iterations);
}

std::vector<std::map<int, long long>> wl_joint_histograms(const std::vector<Graph>& graphs,
                                                          const Initializer& init,
                                                          long long budget) {
    JointRefiner joint(graphs, init, budget);
    while (joint.step()) {
    }
    std::vector<std::map<int, long long>> out;
    out.reserve(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) out.push_back(joint.histogram(gi));
    return out;
}

namespace {

int kwl_cap(int order, int size_cap) {
    if (size_cap > 0) return size_cap;
    return order == 2 ? 64 : 16;
}

// Ordered tuples of a single graph, indexed v0*n^(p-1) + ... + v(p-1).
struct TupleSpace {
    const Graph& g;
    int order;
    int n;
    std::size_t count;
    std::array<std::size_t, 3> stride{};

    TupleSpace(const Graph& graph, int p) : g(graph), order(p), n(graph.node_count()) {
        count = 1;
        for (int i = 0; i < p; ++i) count *= static_cast<std::size_t>(n);
        std::size_t s = count;
        for (int i = 0; i < p; ++i) {
            s /= static_cast<std::size_t>(n);
            stride[i] = s;
        }
    }

    std::array<int, 3> decode(std::size_t idx) const {
        std::array<int, 3> t{};
        for (int i = 0; i < order; ++i) {
            t[i] = static_cast<int>(idx / stride[i] % static_cast<std::size_t>(n));
        }
        return t;
    }

    // equality pattern + induced adjacency pattern over position pairs
    std::vector<long long> isomorphism_type(std::size_t idx) const {
        auto t = decode(idx);
        std::vector<long long> sig;
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b) sig.push_back(t[a] == t[b] ? 1 : 0);
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b) sig.push_back(g.has_edge(t[a], t[b]) ? 1 : 0);
        return sig;
    }
};

// Joint oblivious k-WL over a collection of graphs with shared dictionaries.
struct KwlRefiner {
    std::vector<TupleSpace> spaces;
    std::vector<std::size_t> offset;
    std::vector<int> states;
    int num_classes = 0;
    int round = 0;

    KwlRefiner(const std::vector<Graph>& graphs, int order, int size_cap) {
        if (order != 2 && order != 3)
            throw ValidationError("k-WL order must be 2 or 3");
        int cap = kwl_cap(order, size_cap);
        offset.push_back(0);
        spaces.reserve(graphs.size());
        for (const Graph& g : graphs) {
            if (g.node_count() > cap)
                throw ResourceError("graph with " + std::to_string(g.node_count()) +
                                    " nodes exceeds the order-" + std::to_string(order) +
                                    " cap of " + std::to_string(cap));
            spaces.emplace_back(g, order);
            offset.push_back(offset.back() + spaces.back().count);
        }
        std::vector<std::vector<long long>> sigs;
        sigs.reserve(offset.back());
        for (const TupleSpace& ts : spaces)
            for (std::size_t idx = 0; idx < ts.count; ++idx)
                sigs.push_back(ts.isomorphism_type(idx));
        std::tie(states, num_classes) = canonical_ids(sigs);
    }

    bool step() {
        std::vector<std::vector<long long>> sigs(offset.back());
        for (std::size_t gi = 0; gi < spaces.size(); ++gi) {
            const TupleSpace& ts = spaces[gi];
            for (std::size_t idx = 0; idx < ts.count; ++idx) {
                auto t = ts.decode(idx);
                std::vector<long long>& sig = sigs[offset[gi] + idx];
                sig.reserve(1 + static_cast<std::size_t>(ts.order) * ts.n);
                sig.push_back(states[offset[gi] + idx]);
                for (int pos = 0; pos < ts.order; ++pos) {
                    std::size_t base = idx - static_cast<std::size_t>(t[pos]) * ts.stride[pos];
                    std::size_t tail = sig.size();
                    for (int w = 0; w < ts.n; ++w)
                        sig.push_back(states[offset[gi] + base +
                                             static_cast<std::size_t>(w) * ts.stride[pos]]);
                    std::sort(sig.begin() + tail, sig.end());
                }
            }
        }
        auto [ids, classes] = canonical_ids(sigs);
        ++round;
        if (classes == num_classes) return false;
        states = std::move(ids);
        num_classes = classes;
        return true;
    }

    std::map<int, long long> histogram(std::size_t gi) const {
        return histogram_of(states, offset[gi], offset[gi + 1]);
    }
};

} // namespace

WlResult kwl_refine(const Graph& g1, const Graph& g2, int order, int max_iter, int size_cap) {
    std::vector<Graph> pair{g1, g2};
    KwlRefiner joint(pair, order, size_cap);
    if (max_iter <= 0)
        max_iter = static_cast<int>(joint.offset.back()); // tuple count bounds the splits
    WlResult result;
    for (;;) {
        auto h1 = joint.histogram(0);
        auto h2 = joint.histogram(1);
        result.final_histograms = {h1, h2};
        if (h1 != h2) {
            result.verdict = Verdict::distinguishable;
            return result;
        }
        if (result.rounds >= max_iter) return result;
        if (!joint.step()) {
            ++result.rounds;
            return result;
        }
        ++result.rounds;
    }
}

std::vector<std::map<int, long long>> kwl_joint_histograms(const std::vector<Graph>& graphs,
                                                           int order, int size_cap) {
    KwlRefiner joint(graphs, order, size_cap);
    while (joint.step()) {
    }
    std::vector<std::map<int, long long>> out;
    out.reserve(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) out.push_back(joint.histogram(gi));
    return out;
}

bool partition_refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    if (fine.size() != coarse.size()) return false;
    std::map<int, int> image;
    for (std::size_t v = 0; v < fine.size(); ++v) {
        auto [it, inserted] = image.emplace(fine[v], coarse[v]);
        if (!inserted && it->second != coarse[v]) return false;
    }
    return true;
}

} // namespace detour
