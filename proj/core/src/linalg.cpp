#include "detour/linalg.hpp"
#include "detour/errors.hpp"
#include "detour/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace detour {

bool Matrix::all_finite() const {
    return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
    Matrix out(lhs.rows, rhs.cols);
    for (int i = 0; i < lhs.rows; ++i) {
        for (int k = 0; k < lhs.cols; ++k) {
            double x = lhs.at(i, k);
            if (x == 0.0) continue;
            for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += x * rhs.at(k, j);
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) sum += m.at(i, j) * m.at(i, j);
    return std::sqrt(sum);
}

} // namespace

EigenDecomposition jacobi_eigh(Matrix m) {
    if (m.rows != m.cols) throw ValidationError("eigendecomposition needs a square matrix");
    const int n = m.rows;

    Matrix v(n, n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    if (n > 0) {
        double scale = 0.0;
        for (double x : m.a) scale = std::max(scale, std::abs(x));
        const double tol = 1e-10 * std::max(scale, 1.0);
        const int max_sweeps = 100;

        int sweep = 0;
        while (off_diagonal_norm(m) > tol) {
            if (++sweep > max_sweeps)
                throw NumericalError("Jacobi eigensolver did not converge in " +
                                     std::to_string(max_sweeps) + " sweeps");
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    double apq = m.at(p, q);
                    if (apq == 0.0) continue;
                    double app = m.at(p, p);
                    double aqq = m.at(q, q);
                    double theta = (aqq - app) / (2.0 * apq);
                    double t = (theta >= 0.0 ? 1.0 : -1.0) /
                               (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    double c = 1.0 / std::sqrt(t * t + 1.0);
                    double s = t * c;

                    for (int i = 0; i < n; ++i) {
                        double mip = m.at(i, p);
                        double miq = m.at(i, q);
                        m.at(i, p) = c * mip - s * miq;
                        m.at(i, q) = s * mip + c * miq;
                    }
                    for (int j = 0; j < n; ++j) {
                        double mpj = m.at(p, j);
                        double mqj = m.at(q, j);
                        m.at(p, j) = c * mpj - s * mqj;
                        m.at(q, j) = s * mpj + c * mqj;
                    }
                    for (int i = 0; i < n; ++i) {
                        double vip = v.at(i, p);
                        double viq = v.at(i, q);
                        v.at(i, p) = c * vip - s * viq;
                        v.at(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m.at(i, i) < m.at(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = m.at(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

Matrix laplacian_matrix(const Graph& g) {
    int n = g.node_count();
    Matrix lap(n, n);
    for (int v = 0; v < n; ++v) lap.at(v, v) = g.degree(v);
    for (auto [u, v] : g.edges()) {
        lap.at(u, v) = -1.0;
        lap.at(v, u) = -1.0;
    }
    return lap;
}

} // namespace detour
