#include "detour/mdnn.hpp"
#include "detour/errors.hpp"
#include "detour/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace detour {

void MdnnConfig::validate() const {
    if (d < 1) throw ValidationError("token dimension must be >= 1");
    if (n_heads < 1) throw ValidationError("head count must be >= 1");
    if (d % n_heads != 0) throw ValidationError("token dimension must be divisible by heads");
    if (n_layers < 0) throw ValidationError("layer count must be >= 0");
    if (pe_dim < 1) throw ValidationError("positional dimension must be >= 1");
    if (k < 2) throw ValidationError("detour bound k must be >= 2");
}

std::vector<double> Mlp::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != w1.cols)
        throw ValidationError("embedder input width mismatch: got " +
                              std::to_string(x.size()) + ", expected " +
                              std::to_string(w1.cols));
    std::vector<double> h(w1.rows, 0.0);
    for (int i = 0; i < w1.rows; ++i) {
        double acc = b1[i];
        for (int j = 0; j < w1.cols; ++j) acc += w1.at(i, j) * x[j];
        h[i] = acc > 0.0 ? acc : 0.0;
    }
    std::vector<double> out(w2.rows, 0.0);
    for (int i = 0; i < w2.rows; ++i) {
        double acc = b2[i];
        for (int j = 0; j < w2.cols; ++j) acc += w2.at(i, j) * h[j];
        out[i] = acc;
    }
    return out;
}

namespace {

void fill_uniform(SplitMix64& rng, Matrix& m, int fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& x : m.a) x = rng.next_symmetric(bound);
}

void fill_uniform(SplitMix64& rng, std::vector<double>& v, int fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& x : v) x = rng.next_symmetric(bound);
}

Mlp draw_mlp(SplitMix64& rng, int in_dim, int d) {
    Mlp mlp;
    mlp.w1 = Matrix(d, in_dim);
    mlp.b1.assign(d, 0.0);
    mlp.w2 = Matrix(d, d);
    mlp.b2.assign(d, 0.0);
    fill_uniform(rng, mlp.w1, in_dim);
    fill_uniform(rng, mlp.b1, in_dim);
    fill_uniform(rng, mlp.w2, d);
    fill_uniform(rng, mlp.b2, d);
    return mlp;
}

void add_into(std::vector<double>& acc, const std::vector<double>& term) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
}

} // namespace

MdnnModel MdnnModel::create(const MdnnConfig& config, int in_dim) {
    config.validate();
    if (in_dim < 1) throw ValidationError("node feature width must be >= 1");

    MdnnModel model;
    model.config = config;
    model.in_dim = in_dim;

    SplitMix64 rng(config.seed);
    model.phi_x = draw_mlp(rng, 2 * in_dim, config.d);
    model.phi_i = draw_mlp(rng, 1, config.d);
    model.phi_p = draw_mlp(rng, 2 * config.pe_dim, config.d);
    model.phi_d = draw_mlp(rng, 1, config.d);

    model.layers.resize(config.n_layers);
    for (AttentionLayer& layer : model.layers) {
        layer.wq = Matrix(config.d, config.d);
        layer.wk = Matrix(config.d, config.d);
        layer.wv = Matrix(config.d, config.d);
        fill_uniform(rng, layer.wq, config.d);
        fill_uniform(rng, layer.wk, config.d);
        fill_uniform(rng, layer.wv, config.d);
    }
    return model;
}

int TokenSet::self_row(int node) const {
    const auto& list = partners[node];
    for (std::size_t p = 0; p < list.size(); ++p)
        if (list[p] == node) return row_offset[node] + static_cast<int>(p);
    throw std::logic_error("token list is missing its self token");
}

Matrix laplacian_pe(const Graph& g, int pe_dim) {
    if (pe_dim < 1) throw ValidationError("positional dimension must be >= 1");
    int n = g.node_count();
    EigenDecomposition eig = jacobi_eigh(laplacian_matrix(g));

    Matrix pe(n, pe_dim);
    int take = std::min(pe_dim, n);
    for (int c = 0; c < take; ++c) {
        // sign anchor: largest-magnitude entry positive, lowest index wins ties
        int anchor = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(eig.vectors.at(i, c)) > std::abs(eig.vectors.at(anchor, c))) anchor = i;
        double flip = eig.vectors.at(anchor, c) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) pe.at(i, c) = flip * eig.vectors.at(i, c);
    }
    return pe;
}

Matrix default_node_features(const Graph& g) {
    constexpr int kDegreeCap = 16;
    Matrix x(g.node_count(), kDegreeCap + 1);
    for (int v = 0; v < g.node_count(); ++v)
        x.at(v, std::min(g.degree(v), kDegreeCap)) = 1.0;
    return x;
}

TokenSet message_tokens(const Graph& g, const Matrix& x_in, const MdnnModel& model,
                        long long budget) {
    const MdnnConfig& config = model.config;
    config.validate();
    if (x_in.rows != g.node_count())
        throw ValidationError("node feature matrix must have one row per node");
    if (x_in.cols != model.in_dim)
        throw ValidationError("node feature width does not match the model");

    Matrix pe = laplacian_pe(g, config.pe_dim);
    DenTable table = den(g, config.k, budget);

    TokenSet set;
    set.partners.resize(g.node_count());
    set.row_offset.resize(g.node_count());
    int total = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        auto& list = set.partners[v];
        list = g.neighbors(v);
        list.insert(std::upper_bound(list.begin(), list.end(), v), v);
        set.row_offset[v] = total;
        total += static_cast<int>(list.size());
    }
    set.tokens = Matrix(total, config.d);

    std::vector<double> xx(2 * model.in_dim), pp(2 * config.pe_dim), scalar(1);
    for (int i = 0; i < g.node_count(); ++i) {
        for (std::size_t p = 0; p < set.partners[i].size(); ++p) {
            int j = set.partners[i][p];
            for (int c = 0; c < model.in_dim; ++c) {
                xx[c] = x_in.at(i, c);
                xx[model.in_dim + c] = x_in.at(j, c);
            }
            for (int c = 0; c < config.pe_dim; ++c) {
                pp[c] = pe.at(i, c);
                pp[config.pe_dim + c] = pe.at(j, c);
            }
            std::vector<double> token = model.phi_x.apply(xx);

            scalar[0] = i == j ? 1.0 : 0.0;
            add_into(token, model.phi_i.apply(scalar));
            add_into(token, model.phi_p.apply(pp));
            if (!config.ablate_detour) {
                scalar[0] = i == j ? 0.0 : static_cast<double>(table.den_of(i, j));
                add_into(token, model.phi_d.apply(scalar));
            }

            int row = set.row_offset[i] + static_cast<int>(p);
            for (int c = 0; c < config.d; ++c) set.tokens.at(row, c) = token[c];
        }
    }
    return set;
}

namespace {

// per-node multi-head self-attention over the node's token rows
Matrix attend(const Matrix& tokens, const std::vector<int>& row_offset,
              const std::vector<std::vector<int>>& partners, const AttentionLayer& layer,
              int n_heads) {
    const int d = tokens.cols;
    const int dh = d / n_heads;
    const double inv_scale = 1.0 / std::sqrt(static_cast<double>(dh));

    Matrix q = matmul(tokens, transpose(layer.wq));
    Matrix k = matmul(tokens, transpose(layer.wk));
    Matrix v = matmul(tokens, transpose(layer.wv));

    Matrix out(tokens.rows, d);
    for (std::size_t node = 0; node < partners.size(); ++node) {
        const int base = row_offset[node];
        const int m = static_cast<int>(partners[node].size());
        for (int h = 0; h < n_heads; ++h) {
            const int c0 = h * dh;
            for (int a = 0; a < m; ++a) {
                // one softmax row: scores of token a against every token b
                std::vector<double> scores(m);
                double peak = -std::numeric_limits<double>::infinity();
                for (int b = 0; b < m; ++b) {
                    double dot = 0.0;
                    for (int c = 0; c < dh; ++c)
                        dot += q.at(base + a, c0 + c) * k.at(base + b, c0 + c);
                    scores[b] = dot * inv_scale;
                    peak = std::max(peak, scores[b]);
                }
                double denom = 0.0;
                for (int b = 0; b < m; ++b) {
                    scores[b] = std::exp(scores[b] - peak);
                    denom += scores[b];
                }
                for (int b = 0; b < m; ++b) {
                    double weight = scores[b] / denom;
                    for (int c = 0; c < dh; ++c)
                        out.at(base + a, c0 + c) += weight * v.at(base + b, c0 + c);
                }
            }
        }
    }
    return out;
}

// batch statistics over every token of the graph, eps 1e-5, scale 1, shift 0
void batch_normalize(Matrix& tokens) {
    constexpr double kEps = 1e-5;
    if (tokens.rows == 0) return;
    for (int c = 0; c < tokens.cols; ++c) {
        double mean = 0.0;
        for (int r = 0; r < tokens.rows; ++r) mean += tokens.at(r, c);
        mean /= tokens.rows;
        double var = 0.0;
        for (int r = 0; r < tokens.rows; ++r) {
            double delta = tokens.at(r, c) - mean;
            var += delta * delta;
        }
        var /= tokens.rows;
        double inv = 1.0 / std::sqrt(var + kEps);
        for (int r = 0; r < tokens.rows; ++r)
            tokens.at(r, c) = (tokens.at(r, c) - mean) * inv;
    }
}

} // namespace

FeatureMatrix forward(const Graph& g, const Matrix& x_in, const MdnnModel& model,
                      bool capture_tokens, long long budget) {
    TokenSet set = message_tokens(g, x_in, model, budget);
    if (!set.tokens.all_finite())
        throw NumericalError("non-finite value in the message tokens");

    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        set.tokens = attend(set.tokens, set.row_offset, set.partners, model.layers[l],
                            model.config.n_heads);
        batch_normalize(set.tokens);
        if (!set.tokens.all_finite())
            throw NumericalError("non-finite value after layer " + std::to_string(l));
    }

    FeatureMatrix out;
    out.rows = Matrix(g.node_count(), model.config.d);
    for (int v = 0; v < g.node_count(); ++v) {
        int row = set.self_row(v);
        for (int c = 0; c < model.config.d; ++c) out.rows.at(v, c) = set.tokens.at(row, c);
    }
    if (capture_tokens) out.token_log = std::move(set);
    return out;
}

} // namespace detour
