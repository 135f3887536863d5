#pragma once

#include <cstddef>
#include <vector>

namespace ionmag {

// Dense row-major matrix of doubles. Small and boring on purpose: every
// matrix in this project is either tiny (N ions) or a one-shot 2^N
// Hamiltonian that we eigendecompose once.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0.0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Matrix transposed() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

// || A^T A - I ||_F
double orthonormality_defect(const Matrix& a);

struct SymEig {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k <-> values[k], orthonormal
};

// Eigendecomposition of a real symmetric matrix: Householder reduction to
// tridiagonal form followed by the implicit-shift QL iteration. Vectors come
// out orthonormal to machine precision even for clustered eigenvalues.
SymEig sym_eigen(const Matrix& a);

// Principal angles between the column spans of two orthonormal bases,
// returned in ascending order (radians).
std::vector<double> principal_angles(const Matrix& qa, const Matrix& qb);

}  // namespace ionmag
