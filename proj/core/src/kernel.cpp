#include "detour/kernel.hpp"
#include "detour/errors.hpp"
#include "detour/parallel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <map>

namespace detour {

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "sp") return KernelKind::sp;
    if (name == "wl-subtree") return KernelKind::wl_subtree;
    if (name == "wl-sp") return KernelKind::wl_sp;
    if (name == "wl-den-subtree") return KernelKind::wl_den_subtree;
    if (name == "wl-den" || name == "wl-den-sp") return KernelKind::wl_den_sp;
    throw ValidationError("unknown kernel: " + name);
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::sp: return "sp";
        case KernelKind::wl_subtree: return "wl-subtree";
        case KernelKind::wl_sp: return "wl-sp";
        case KernelKind::wl_den_subtree: return "wl-den-subtree";
        case KernelKind::wl_den_sp: return "wl-den-sp";
    }
    return "?";
}

namespace {

constexpr int kUnreachable = -1;

std::vector<std::vector<int>> bfs_all_pairs(const Graph& g) {
    int n = g.node_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
    for (int s = 0; s < n; ++s) {
        std::deque<int> queue{s};
        dist[s][s] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v)) {
                if (dist[s][w] == kUnreachable) {
                    dist[s][w] = dist[s][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return dist;
}

// multiset of (distance, low label, high label) over unordered node pairs
using PairProfile = std::map<std::array<long long, 3>, long long>;

PairProfile sp_profile(const Graph& g, const std::vector<int>& labels,
                       const std::vector<std::vector<int>>& dist) {
    PairProfile profile;
    int n = g.node_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (dist[i][j] == kUnreachable) continue;
            long long lo = std::min(labels[i], labels[j]);
            long long hi = std::max(labels[i], labels[j]);
            ++profile[{dist[i][j], lo, hi}];
        }
    }
    return profile;
}

long long profile_dot(const PairProfile& a, const PairProfile& b) {
    long long sum = 0;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            sum += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return sum;
}

long long histogram_dot(const std::map<int, long long>& a, const std::map<int, long long>& b) {
    long long sum = 0;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            sum += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return sum;
}

bool is_den_kind(KernelKind kind) {
    return kind == KernelKind::wl_den_subtree || kind == KernelKind::wl_den_sp;
}

bool is_sp_backed(KernelKind kind) {
    return kind == KernelKind::sp || kind == KernelKind::wl_sp ||
           kind == KernelKind::wl_den_sp;
}

// raw node labels when requested and present, otherwise uniform
std::vector<int> base_labels(const Graph& g, bool use_node_labels) {
    if (use_node_labels && g.node_labels()) return *g.node_labels();
    return std::vector<int>(g.node_count(), 0);
}

std::string format_value(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

} // namespace

std::vector<Coloring> wl_labels(const Graph& g, const Initializer& init, int iterations,
                                long long budget) {
    return wl_label_rounds({g}, init, iterations, budget).front();
}

long long sp_kernel(const Graph& g1, const Graph& g2, const std::vector<int>& labels1,
                    const std::vector<int>& labels2) {
    if (static_cast<int>(labels1.size()) != g1.node_count() ||
        static_cast<int>(labels2.size()) != g2.node_count())
        throw ValidationError("label vector size does not match node count");
    auto d1 = bfs_all_pairs(g1);
    auto d2 = bfs_all_pairs(g2);
    return profile_dot(sp_profile(g1, labels1, d1), sp_profile(g2, labels2, d2));
}

GramMatrix gram_matrix(const GraphDataset& dataset, const KernelSpec& spec, long long budget,
                       int threads) {
    if (spec.iterations < 0) throw ValidationError("iterations must be >= 0");
    if (is_den_kind(spec.kind) && spec.k < 2)
        throw ValidationError("den kernels require k >= 2");

    const auto& graphs = dataset.graphs;
    const std::size_t count = graphs.size();
    const int rounds = spec.kind == KernelKind::sp ? 0 : spec.iterations;

    // Per-graph labelings for rounds 0..H. The plain SP kernel runs on raw
    // node labels; WL variants run on shared-dictionary canonical colors
    // seeded by the degree or {D, k-DeN} initializer.
    std::vector<std::vector<std::vector<int>>> labels(count);
    if (spec.kind == KernelKind::sp) {
        for (std::size_t i = 0; i < count; ++i)
            labels[i].push_back(base_labels(graphs[i], spec.use_node_labels));
    } else {
        Initializer init = is_den_kind(spec.kind)
                               ? Initializer::den_init(spec.k, spec.use_node_labels)
                               : Initializer::degree_init(spec.use_node_labels);
        std::vector<std::vector<std::vector<long long>>> sigs(count);
        parallel_for(count, threads, [&](std::size_t i) {
            try {
                sigs[i] = initial_signatures(graphs[i], init, budget);
            } catch (const ResourceError& e) {
                throw ResourceError("graph " + std::to_string(i) + ": " + e.what());
            }
        });
        auto per_graph = wl_label_rounds_from_signatures(graphs, sigs, rounds);
        for (std::size_t i = 0; i < count; ++i)
            for (const Coloring& c : per_graph[i]) labels[i].push_back(c.colors);
    }

    // Per-graph feature profiles.
    std::vector<std::vector<PairProfile>> sp_profiles;
    std::vector<std::vector<std::map<int, long long>>> histograms;
    if (is_sp_backed(spec.kind)) {
        sp_profiles.assign(count, {});
        parallel_for(count, threads, [&](std::size_t i) {
            auto dist = bfs_all_pairs(graphs[i]);
            for (const auto& round_labels : labels[i])
                sp_profiles[i].push_back(sp_profile(graphs[i], round_labels, dist));
        });
    } else {
        histograms.assign(count, {});
        parallel_for(count, threads, [&](std::size_t i) {
            for (const auto& round_labels : labels[i]) {
                std::map<int, long long> h;
                for (int c : round_labels) ++h[c];
                histograms[i].push_back(std::move(h));
            }
        });
    }

    auto pair_value = [&](std::size_t i, std::size_t j) {
        long long sum = 0;
        for (int r = 0; r <= rounds; ++r) {
            if (is_sp_backed(spec.kind))
                sum += profile_dot(sp_profiles[i][r], sp_profiles[j][r]);
            else
                sum += histogram_dot(histograms[i][r], histograms[j][r]);
        }
        return sum;
    };

    GramMatrix gram;
    gram.values = Matrix(static_cast<int>(count), static_cast<int>(count));
    gram.graph_ids.resize(count);
    for (std::size_t i = 0; i < count; ++i) gram.graph_ids[i] = static_cast<int>(i);

    std::vector<std::pair<int, int>> upper;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i; j < count; ++j) upper.push_back({static_cast<int>(i),
                                                                 static_cast<int>(j)});
    parallel_for(upper.size(), threads, [&](std::size_t t) {
        auto [i, j] = upper[t];
        double value = static_cast<double>(pair_value(i, j));
        gram.values.at(i, j) = value;
        gram.values.at(j, i) = value;
    });
    return gram;
}

std::string gram_to_csv(const GramMatrix& gram) {
    std::string out;
    for (int i = 0; i < gram.size(); ++i) {
        for (int j = 0; j < gram.size(); ++j) {
            if (j) out += ',';
            out += format_value(gram.at(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace detour
