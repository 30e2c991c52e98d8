#pragma once

// Independent reference implementations used only by the test suites.
// Everything here is written against plain containers and deliberately
// avoids the library's linear-algebra entry points so the two sides of a
// comparison cannot share a bug.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "riscap/complex_matrix.hpp"

namespace oracle {

using riscap::cplx;
using riscap::ComplexMatrix;

/// Scalar triple-loop product.
inline ComplexMatrix matmul_loops(const ComplexMatrix& a,
                                  const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        s += a(i, k) * b(k, j);
      }
      c(i, j) = s;
    }
  }
  return c;
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
  const std::size_t n = input.rows();
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = input(i, j);
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off += std::norm(a[p][q]);
      }
    }
    if (off < 1e-26) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a[p][q]);
        if (r < 1e-300) continue;
        const cplx phase = a[p][q] / r;
        // Phase-rotate column q so the pivot becomes real, then apply the
        // classic real rotation that zeroes it.
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a[k][p];
          const cplx akq = a[k][q] * std::conj(phase);
          a[k][p] = c * akp - s * akq;
          a[k][q] = (s * akp + c * akq) * phase;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a[p][k];
          const cplx aqk = std::conj(phase) * a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = phase * (s * apk + c * aqk);
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i].real();
  return eig;
}

/// Central finite difference of a scalar function.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
  const double denom = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / denom;
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

}  // namespace oracle
