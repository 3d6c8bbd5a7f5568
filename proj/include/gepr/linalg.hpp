#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gepr::linalg {

/// Dense column-major matrix of doubles.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> column(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct TridiagonalEigen {
  std::vector<double> values;           ///< ascending
  std::vector<double> first_components; ///< first component of each unit eigenvector
};

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal (size n-1), by implicit-shift QL. Only the first row of the
/// eigenvector matrix is accumulated. Throws NumericalError after
/// `max_iterations` sweeps on a single eigenvalue.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal,
                                   int max_iterations = 30);

struct JacobiOptions {
  int max_sweeps = 30;
  double tolerance = 1e-12;
};

/// Singular values (descending) by one-sided Jacobi orthogonalization of the
/// columns. Takes the matrix by value since it is overwritten.
std::vector<double> singular_values(Matrix a, JacobiOptions options = {});

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(Matrix a, JacobiOptions options = {});

}  // namespace gepr::linalg
