// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SINECRIT_LINALG_HPP
#define SINECRIT_LINALG_HPP

// Dense and tridiagonal eigensolvers (Householder reduction + implicit-shift
// QL), Gauss--Legendre rules, and compensated summation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sinecrit {

/// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const T> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Real symmetric tridiagonal matrix: `diag` of length n, `off` of length
/// n-1 (off[k] couples rows k and k+1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

/// Iteration cap per eigenvalue in the QL sweeps.
inline constexpr int kQlMaxIterations = 30;

/// Ascending eigenvalues by implicit-shift QL. Throws NumericalError when an
/// eigenvalue fails to converge within kQlMaxIterations sweeps.
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t);

struct SymmetricEigen {
  std::vector<double> values;   ///< ascending
  Matrix<double> vectors;       ///< column j is the eigenvector of values[j]
};

/// Full eigensystem of a real symmetric matrix (Householder + QL).
SymmetricEigen symmetric_eigen(const Matrix<double>& a);

/// Unitary reduction of a Hermitian matrix to a real symmetric tridiagonal
/// with the same spectrum. Only the lower triangle of `a` is read.
SymTridiagonal hermitian_tridiagonalize(Matrix<std::complex<double>> a);

struct QuadratureRule {
  std::vector<double> nodes;    ///< ascending
  std::vector<double> weights;  ///< positive
};

/// m-point Gauss--Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(std::size_t m, double lo, double hi);

}  // namespace sinecrit

#endif  // SINECRIT_LINALG_HPP
