#pragma once

#include "detour/detour.hpp"
#include "detour/graph.hpp"
#include "detour/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace detour {

// Forward-only feature pipeline configuration. Defaults follow the
// graph-level setting (1 head, 12 layers); node_level() switches to the
// node-level setting (4 heads, 2 layers).
struct MdnnConfig {
    int d = 16;            // token dimension
    int n_layers = 12;     // stacked attention blocks
    int n_heads = 1;
    int pe_dim = 4;        // Laplacian eigenvectors used for positions
    int k = 3;             // detour bound feeding the detour embedder
    std::uint64_t seed = 0;
    bool ablate_detour = false;

    static MdnnConfig graph_level() { return {}; }
    static MdnnConfig node_level() {
        MdnnConfig c;
        c.n_heads = 4;
        c.n_layers = 2;
        return c;
    }

    void validate() const;
};

// y = W2 * relu(W1 x + b1) + b2, hidden width d.
struct Mlp {
    Matrix w1;
    std::vector<double> b1;
    Matrix w2;
    std::vector<double> b2;

    std::vector<double> apply(const std::vector<double>& x) const;
};

struct AttentionLayer {
    Matrix wq, wk, wv; // d x d
};

// All weights are drawn from one splitmix64 stream seeded with config.seed,
// uniform in (-1/sqrt(fan_in), 1/sqrt(fan_in)), in a fixed order:
// the four embedders phi_x, phi_i, phi_p, phi_d (each W1 row-major, b1,
// W2 row-major, b2), then per layer the Q, K, V projections row-major.
// The detour embedder is drawn even when ablated so the remaining weights
// do not shift.
struct MdnnModel {
    MdnnConfig config;
    int in_dim = 0; // node feature width the model was built for
    Mlp phi_x, phi_i, phi_p, phi_d;
    std::vector<AttentionLayer> layers;

    static MdnnModel create(const MdnnConfig& config, int in_dim);
};

// One token per (node, partner) with partner in N(i) u {i}, rows grouped by
// node in ascending partner order.
struct TokenSet {
    std::vector<std::vector<int>> partners; // node -> ordered partner ids
    std::vector<int> row_offset;            // node -> first row in tokens
    Matrix tokens;                          // total_tokens x d

    int self_row(int node) const;
};

struct FeatureMatrix {
    Matrix rows; // n x d
    std::optional<TokenSet> token_log;
};

// First pe_dim eigenvectors of L = D - A as per-node rows, eigenvalues
// ascending, each eigenvector signed so its largest-magnitude entry is
// positive (ties broken by lowest index). Columns beyond n are zero.
Matrix laplacian_pe(const Graph& g, int pe_dim);

// Default input features when the caller supplies none: one-hot degree
// capped at 16 (width 17).
Matrix default_node_features(const Graph& g);

// Message tokens: phi_x(X_i || X_j) + phi_i(i==j) + phi_p(P_i || P_j)
// + phi_d(k-DeN_ij), with 0 fed to phi_d on the self token and the phi_d
// term dropped entirely under ablate_detour.
TokenSet message_tokens(const Graph& g, const Matrix& x_in, const MdnnModel& model,
                        long long budget = kDefaultBudget);

// Stacked per-node self-attention over each token list with graph-wide
// batch normalization after every block; the self token's row after the
// final block is the node's output feature.
FeatureMatrix forward(const Graph& g, const Matrix& x_in, const MdnnModel& model,
                      bool capture_tokens = false, long long budget = kDefaultBudget);

} // namespace detour
