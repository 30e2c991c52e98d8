#include "riscap/complex_matrix.hpp"

#include <cmath>
#include <sstream>

namespace riscap {

namespace {

std::string shape_of(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    std::ostringstream os;
    os << "ComplexMatrix: " << data_.size() << " entries for a " << rows_
       << "x" << cols_ << " matrix";
    throw ShapeError(os.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double ComplexMatrix::max_abs() const {
  double mx = 0.0;
  for (const cplx& z : data_) mx = std::max(mx, std::abs(z));
  return mx;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: incompatible shapes " + shape_of(a) + " and " +
                     shape_of(b));
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      c(j, i) = std::conj(a(i, j));
    }
  }
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          c(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("add: incompatible shapes " + shape_of(a) + " and " +
                     shape_of(b));
  }
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.entries()[i] += b.entries()[i];
  return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
  ComplexMatrix c = a;
  for (cplx& z : c.entries()) z *= factor;
  return c;
}

ComplexMatrix cholesky_factor(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("cholesky_factor: matrix is " + shape_of(a) +
                     ", expected square");
  }
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) {
      std::ostringstream os;
      os << "cholesky_factor: non-positive pivot " << d << " at index " << j
         << "; matrix is not positive definite";
      throw DefinitenessError(os.str());
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix cholesky_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
  const std::size_t n = l.rows();
  if (b.rows() != n) {
    throw ShapeError("cholesky_solve: factor is " + shape_of(l) + ", rhs is " +
                     shape_of(b));
  }
  // L y = b, then L^H x = y.
  ComplexMatrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = x(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
      x(i, j) = s / l(i, i);
    }
    for (std::size_t ii = n; ii > 0; --ii) {
      const std::size_t i = ii - 1;
      cplx s = x(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  return x;
}

double logdet_hermitian_psd(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("logdet_hermitian_psd: matrix is " + shape_of(a) +
                     ", expected square");
  }
  const std::size_t n = a.rows();
  const double scale_ref = a.max_abs();
  const double tol = 1e-10 * std::max(scale_ref, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
        std::ostringstream os;
        os << "logdet_hermitian_psd: matrix deviates from Hermitian at (" << i
           << "," << j << ") beyond tolerance " << tol;
        throw ShapeError(os.str());
      }
    }
  }
  // Symmetrize to absorb roundoff before factorizing.
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    }
  }
  const ComplexMatrix l = cholesky_factor(h);
  double logdet_bits = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    logdet_bits += 2.0 * std::log2(l(i, i).real());
  }
  if (!std::isfinite(logdet_bits)) {
    throw DefinitenessError("logdet_hermitian_psd: non-finite result");
  }
  return logdet_bits;
}

}  // namespace riscap
