#include "detour/graph.hpp"
#include "detour/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using nlohmann::json;

namespace detour {

namespace {

long long edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<long long>(u) << 32 | static_cast<unsigned>(v);
}

} // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list,
             std::optional<std::vector<int>> node_labels,
             std::optional<std::vector<double>> edge_weights)
    : n_(n), node_labels_(std::move(node_labels)) {
    if (n < 0) throw ValidationError("node count must be non-negative");
    if (node_labels_ && static_cast<int>(node_labels_->size()) != n)
        throw ValidationError("node_labels size does not match node count");
    if (edge_weights && edge_weights->size() != edge_list.size())
        throw ValidationError("edge_weights size does not match edge count");

    // normalize, validate, collapse duplicates (weights of duplicates must agree)
    std::vector<std::pair<std::pair<int, int>, double>> normalized;
    normalized.reserve(edge_list.size());
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
        auto [u, v] = edge_list[i];
        if (u == v)
            throw ValidationError("self-loop on node " + std::to_string(u));
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("edge endpoint out of range: (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ") with n=" + std::to_string(n));
        if (u > v) std::swap(u, v);
        double w = 0.0;
        if (edge_weights) {
            w = (*edge_weights)[i];
            if (!(w >= 0.0) || !std::isfinite(w))
                throw ValidationError("edge weight must be a non-negative finite number");
        }
        normalized.push_back({{u, v}, w});
    }
    std::sort(normalized.begin(), normalized.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    adj_.assign(n_, {});
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        if (i > 0 && normalized[i].first == normalized[i - 1].first) {
            if (edge_weights && normalized[i].second != normalized[i - 1].second)
                throw ValidationError("duplicate edge with conflicting weights");
            continue;
        }
        auto [u, v] = normalized[i].first;
        edge_index_[edge_key(u, v)] = static_cast<int>(edges_.size());
        edges_.push_back({u, v});
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        if (edge_weights) {
            if (!edge_weights_) edge_weights_.emplace();
            edge_weights_->push_back(normalized[i].second);
        }
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

void Graph::check_node(int v) const {
    if (v < 0 || v >= n_)
        throw ValidationError("node " + std::to_string(v) + " out of range [0, " +
                              std::to_string(n_) + ")");
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_node(v);
    return adj_[v];
}

int Graph::degree(int v) const {
    check_node(v);
    return static_cast<int>(adj_[v].size());
}

int Graph::edge_id(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return -1;
    auto it = edge_index_.find(edge_key(u, v));
    return it == edge_index_.end() ? -1 : it->second;
}

Graph Graph::with_edge_weights(std::vector<double> weights) const {
    if (weights.size() != edges_.size())
        throw ValidationError("edge weight vector does not match edge count");
    return Graph(n_, edges_, node_labels_, std::move(weights));
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw ValidationError("permutation size does not match node count");
    std::vector<int> seen(n_, 0);
    for (int p : perm) {
        if (p < 0 || p >= n_ || seen[p]++)
            throw ValidationError("not a permutation of 0..n-1");
    }
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(edges_.size());
    for (auto [u, v] : edges_) mapped.push_back({perm[u], perm[v]});
    std::optional<std::vector<int>> labels;
    if (node_labels_) {
        labels.emplace(n_);
        for (int v = 0; v < n_; ++v) (*labels)[perm[v]] = (*node_labels_)[v];
    }
    if (!edge_weights_) return Graph(n_, std::move(mapped), std::move(labels));
    // weights follow their edges through the relabeling
    Graph out(n_, mapped, std::move(labels));
    std::vector<double> w(out.edge_count(), 0.0);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        w[out.edge_id(mapped[i].first, mapped[i].second)] = (*edge_weights_)[i];
    return out.with_edge_weights(std::move(w));
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ &&
           node_labels_ == other.node_labels_ && edge_weights_ == other.edge_weights_;
}

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = -1;
    int max_id = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank or comment-only

        if (first == "n") {
            long long count;
            std::string extra;
            if (!(ls >> count) || count < 0 || (ls >> extra))
                throw ParseError("malformed header, expected \"n <count>\"", line_no);
            if (declared_n >= 0)
                throw ParseError("duplicate \"n\" header", line_no);
            declared_n = static_cast<int>(count);
            continue;
        }

        long long u, v;
        std::string extra;
        std::istringstream es(line);
        if (!(es >> u >> v) || u < 0 || v < 0 || (es >> extra))
            throw ParseError("malformed edge line, expected \"u v\"", line_no);
        if (u == v)
            throw ValidationError("line " + std::to_string(line_no) + ": self-loop on node " +
                                  std::to_string(u));
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    int n = declared_n >= 0 ? declared_n : max_id + 1;
    return Graph(n, std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<int>();
}

Graph parse_graph_json(const json& jg, const std::string& path) {
    if (!jg.is_object()) schema_error(path, "expected an object");
    if (!jg.contains("n")) schema_error(path + ".n", "missing required field");
    int n = require_int(jg.at("n"), path + ".n");
    if (n < 0) schema_error(path + ".n", "must be non-negative");

    if (!jg.contains("edges")) schema_error(path + ".edges", "missing required field");
    const json& je = jg.at("edges");
    if (!je.is_array()) schema_error(path + ".edges", "expected an array");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(je.size());
    for (std::size_t i = 0; i < je.size(); ++i) {
        std::string epath = path + ".edges[" + std::to_string(i) + "]";
        const json& pair = je[i];
        if (!pair.is_array() || pair.size() != 2) schema_error(epath, "expected [u, v]");
        int u = require_int(pair[0], epath);
        int v = require_int(pair[1], epath);
        if (u < 0 || u >= n || v < 0 || v >= n) schema_error(epath, "endpoint out of range");
        if (u == v) schema_error(epath, "self-loop");
        edges.push_back({u, v});
    }

    std::optional<std::vector<int>> labels;
    if (jg.contains("node_labels") && !jg.at("node_labels").is_null()) {
        const json& jl = jg.at("node_labels");
        if (!jl.is_array() || static_cast<int>(jl.size()) != n)
            schema_error(path + ".node_labels", "expected an array of n integers");
        labels.emplace();
        for (std::size_t i = 0; i < jl.size(); ++i)
            labels->push_back(require_int(jl[i], path + ".node_labels[" + std::to_string(i) + "]"));
    }

    std::optional<std::vector<double>> weights;
    if (jg.contains("edge_weights") && !jg.at("edge_weights").is_null()) {
        const json& jw = jg.at("edge_weights");
        if (!jw.is_array() || jw.size() != je.size())
            schema_error(path + ".edge_weights", "expected an array parallel to edges");
        weights.emplace();
        for (std::size_t i = 0; i < jw.size(); ++i) {
            if (!jw[i].is_number())
                schema_error(path + ".edge_weights[" + std::to_string(i) + "]", "expected a number");
            weights->push_back(jw[i].get<double>());
        }
    }

    try {
        return Graph(n, std::move(edges), std::move(labels), std::move(weights));
    } catch (const ValidationError& e) {
        schema_error(path, e.what());
    }
}

json graph_to_json(const Graph& g) {
    json jg;
    jg["n"] = g.node_count();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    jg["edges"] = std::move(edges);
    if (g.node_labels()) jg["node_labels"] = *g.node_labels();
    if (g.edge_weights()) jg["edge_weights"] = *g.edge_weights();
    return jg;
}

} // namespace

GraphDataset parse_dataset_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) schema_error("$", "expected a JSON object");
    if (!root.contains("graphs")) schema_error("graphs", "missing required field");
    const json& jgs = root.at("graphs");
    if (!jgs.is_array()) schema_error("graphs", "expected an array");

    GraphDataset ds;
    ds.graphs.reserve(jgs.size());
    for (std::size_t i = 0; i < jgs.size(); ++i)
        ds.graphs.push_back(parse_graph_json(jgs[i], "graphs[" + std::to_string(i) + "]"));

    if (root.contains("labels") && !root.at("labels").is_null()) {
        const json& jl = root.at("labels");
        if (!jl.is_array() || jl.size() != jgs.size())
            schema_error("labels", "expected an array with one class per graph");
        ds.class_labels.emplace();
        for (std::size_t i = 0; i < jl.size(); ++i)
            ds.class_labels->push_back(require_int(jl[i], "labels[" + std::to_string(i) + "]"));
    }
    if (root.contains("name") && !root.at("name").is_null()) {
        if (!root.at("name").is_string()) schema_error("name", "expected a string");
        ds.name = root.at("name").get<std::string>();
    }
    return ds;
}

std::string write_dataset_json(const GraphDataset& dataset) {
    json root;
    json graphs = json::array();
    for (const Graph& g : dataset.graphs) graphs.push_back(graph_to_json(g));
    root["graphs"] = std::move(graphs);
    if (dataset.class_labels) root["labels"] = *dataset.class_labels;
    if (!dataset.name.empty()) root["name"] = dataset.name;
    return root.dump(2) + "\n";
}

std::string write_graph_json(const Graph& g) {
    GraphDataset ds;
    ds.graphs.push_back(g);
    return write_dataset_json(ds);
}

} // namespace detour
