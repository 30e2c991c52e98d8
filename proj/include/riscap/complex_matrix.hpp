#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "riscap/errors.hpp"

namespace riscap {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage. The universal carrier for
/// channel matrices, pilot blocks and codewords.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<cplx>& entries() { return data_; }
  const std::vector<cplx>& entries() const { return data_; }

  bool all_finite() const;
  double max_abs() const;
  double frobenius_norm() const;

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Standard product. Throws ShapeError naming both shapes on mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Kronecker product, shape (a.rows*b.rows, a.cols*b.cols).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);

/// log2 det(a) for a Hermitian positive-definite matrix.
///
/// The input is checked to be square and Hermitian to a relative tolerance
/// of 1e-10 (against the largest entry magnitude), symmetrized as
/// (a + a^H)/2 to absorb roundoff, then factorized by Cholesky. A
/// non-positive pivot raises DefinitenessError.
double logdet_hermitian_psd(const ComplexMatrix& a);

/// Lower Cholesky factor of a Hermitian positive-definite matrix.
/// Only the lower triangle of `a` is referenced.
ComplexMatrix cholesky_factor(const ComplexMatrix& a);

/// Solves (L L^H) x = b given the lower Cholesky factor.
ComplexMatrix cholesky_solve(const ComplexMatrix& l, const ComplexMatrix& b);

}  // namespace riscap
