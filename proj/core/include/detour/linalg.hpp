#pragma once

#include <vector>

namespace detour {

// Minimal dense row-major matrix, just enough for the feature pipeline and
// the PSD checks.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool all_finite() const;
};

Matrix matmul(const Matrix& lhs, const Matrix& rhs);
Matrix transpose(const Matrix& m);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// values come out ascending; vectors holds the matching eigenvectors as
// columns. Converges when the off-diagonal Frobenius norm drops below
// 1e-10 (relative to the matrix scale); more than 100 sweeps raises
// NumericalError.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

EigenDecomposition jacobi_eigh(Matrix m);

// Unweighted combinatorial Laplacian L = D - A of a graph adjacency list.
class Graph;
Matrix laplacian_matrix(const Graph& g);

} // namespace detour
