#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "riscap/complex_matrix.hpp"
#include "riscap/rng.hpp"
#include "support/oracles.hpp"

using riscap::cplx;
using riscap::ComplexMatrix;
using riscap::Rng;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (cplx& z : m.entries()) {
    z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double mx = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mx = std::max(mx, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return mx;
}

}  // namespace

TEST_CASE("matmul identity leaves a 2x2 matrix unchanged") {
  Rng rng(1);
  const ComplexMatrix x = random_matrix(2, 2, rng);
  const ComplexMatrix y = riscap::matmul(ComplexMatrix::identity(2), x);
  CHECK(max_abs_diff(x, y) == 0.0);
}

TEST_CASE("matmul permutation swaps vector entries") {
  ComplexMatrix p(2, 2, {0.0, 1.0, 1.0, 0.0});
  ComplexMatrix v(2, 1, {cplx{1.5, 0.5}, cplx{-2.0, 3.0}});
  const ComplexMatrix r = riscap::matmul(p, v);
  CHECK(r(0, 0) == v(1, 0));
  CHECK(r(1, 0) == v(0, 0));
}

TEST_CASE("matmul matches the triple-loop oracle entrywise") {
  Rng rng(2);
  const ComplexMatrix a = random_matrix(3, 4, rng);
  const ComplexMatrix b = random_matrix(4, 2, rng);
  const ComplexMatrix got = riscap::matmul(a, b);
  const ComplexMatrix want = oracle::matmul_loops(a, b);
  CHECK(max_abs_diff(got, want) < 1e-14);
}

TEST_CASE("matmul rejects mismatched shapes naming both") {
  const ComplexMatrix a(3, 4);
  const ComplexMatrix b(2, 2);
  try {
    riscap::matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const riscap::ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("3x4") != std::string::npos);
    CHECK(msg.find("2x2") != std::string::npos);
  }
}

TEST_CASE("adjoint conjugates a 1x1 imaginary matrix") {
  ComplexMatrix m(1, 1, {cplx{0.0, 1.0}});
  const ComplexMatrix a = riscap::adjoint(m);
  CHECK(a(0, 0) == cplx{0.0, -1.0});
}

TEST_CASE("adjoint fixes a real symmetric matrix") {
  ComplexMatrix m(2, 2, {1.0, 2.0, 2.0, -3.0});
  CHECK(max_abs_diff(riscap::adjoint(m), m) == 0.0);
}

TEST_CASE("adjoint entry (i,k) equals conj of (k,i); involution is exact") {
  Rng rng(3);
  const ComplexMatrix a = random_matrix(2, 3, rng);
  const ComplexMatrix at = riscap::adjoint(a);
  for (std::size_t i = 0; i < at.rows(); ++i) {
    for (std::size_t k = 0; k < at.cols(); ++k) {
      CHECK(at(i, k) == std::conj(a(k, i)));
    }
  }
  CHECK(max_abs_diff(riscap::adjoint(at), a) == 0.0);
}

TEST_CASE("kron with a scalar one is the identity operation") {
  Rng rng(4);
  const ComplexMatrix one(1, 1, {1.0});
  const ComplexMatrix x = random_matrix(2, 3, rng);
  CHECK(max_abs_diff(riscap::kron(one, x), x) == 0.0);
}

TEST_CASE("kron of sign rows gives the expected sign pattern") {
  ComplexMatrix a(1, 2, {1.0, -1.0});
  ComplexMatrix b(1, 2, {1.0, 1.0});
  const ComplexMatrix k = riscap::kron(a, b);
  REQUIRE(k.rows() == 1);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 0) == cplx{1.0});
  CHECK(k(0, 1) == cplx{1.0});
  CHECK(k(0, 2) == cplx{-1.0});
  CHECK(k(0, 3) == cplx{-1.0});
}

TEST_CASE("kron of column vectors matches the index formula") {
  Rng rng(5);
  const ComplexMatrix a = random_matrix(2, 1, rng);
  const ComplexMatrix b = random_matrix(3, 1, rng);
  const ComplexMatrix k = riscap::kron(a, b);
  REQUIRE(k.rows() == 6);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(k(i * 3 + j, 0) == a(i, 0) * b(j, 0));
    }
  }
}

TEST_CASE("kron mixed-product property on random conformable instances") {
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = random_matrix(2, 3, rng);
    const ComplexMatrix b = random_matrix(2, 2, rng);
    const ComplexMatrix c = random_matrix(3, 2, rng);
    const ComplexMatrix d = random_matrix(2, 3, rng);
    const ComplexMatrix lhs =
        riscap::matmul(riscap::kron(a, b), riscap::kron(c, d));
    const ComplexMatrix rhs =
        riscap::kron(riscap::matmul(a, c), riscap::matmul(b, d));
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("logdet of the identity is zero for all sizes") {
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(riscap::logdet_hermitian_psd(ComplexMatrix::identity(n)) == 0.0);
  }
}

TEST_CASE("logdet of diag(2,4) is 3 bits") {
  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  CHECK(riscap::logdet_hermitian_psd(d) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("logdet matches the Jacobi eigenvalue oracle on I + B^H B") {
  Rng rng(7);
  const ComplexMatrix b = random_matrix(6, 6, rng);
  ComplexMatrix a = riscap::matmul(riscap::adjoint(b), b);
  for (std::size_t i = 0; i < 6; ++i) a(i, i) += 1.0;

  double want = 0.0;
  for (double lambda : oracle::hermitian_eigenvalues(a)) {
    want += std::log2(lambda);
  }
  const double got = riscap::logdet_hermitian_psd(a);
  CHECK(oracle::rel_err(got, want) <= 1e-9);
}

TEST_CASE("logdet rejects non-square, non-Hermitian and indefinite input") {
  CHECK_THROWS_AS(riscap::logdet_hermitian_psd(ComplexMatrix(2, 3)),
                  riscap::ShapeError);

  ComplexMatrix skew(2, 2, {1.0, cplx{0.0, 1.0}, cplx{0.0, 1.0}, 1.0});
  CHECK_THROWS_AS(riscap::logdet_hermitian_psd(skew), riscap::ShapeError);

  ComplexMatrix indefinite(2, 2);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(riscap::logdet_hermitian_psd(indefinite),
                  riscap::DefinitenessError);
}

TEST_CASE("logdet of a^H a + I is invariant under unitary left factors") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(2, 3, rng);
    ComplexMatrix gram = riscap::matmul(riscap::adjoint(a), a);
    for (std::size_t i = 0; i < 3; ++i) gram(i, i) += 1.0;
    const double base = riscap::logdet_hermitian_psd(gram);

    // Random complex Givens rotation.
    const double c = std::cos(rng.uniform(0.0, Rng::two_pi()));
    const double s = std::sqrt(1.0 - c * c);
    const cplx phase = std::polar(1.0, rng.uniform(0.0, Rng::two_pi()));
    ComplexMatrix u(2, 2);
    u(0, 0) = c;
    u(0, 1) = s * phase;
    u(1, 0) = -s * std::conj(phase);
    u(1, 1) = c;

    const ComplexMatrix ua = riscap::matmul(u, a);
    ComplexMatrix gram2 = riscap::matmul(riscap::adjoint(ua), ua);
    for (std::size_t i = 0; i < 3; ++i) gram2(i, i) += 1.0;
    const double rotated = riscap::logdet_hermitian_psd(gram2);
    CHECK(oracle::rel_err(rotated, base) <= 1e-9);
  }
}

TEST_CASE("matmul is associative on random triples") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = random_matrix(3, 4, rng);
    const ComplexMatrix b = random_matrix(4, 2, rng);
    const ComplexMatrix c = random_matrix(2, 5, rng);
    const ComplexMatrix lhs = riscap::matmul(riscap::matmul(a, b), c);
    const ComplexMatrix rhs = riscap::matmul(a, riscap::matmul(b, c));
    CHECK(max_abs_diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("operations leave entries finite") {
  Rng rng(10);
  const ComplexMatrix a = random_matrix(4, 4, rng);
  CHECK(riscap::matmul(a, a).all_finite());
  CHECK(riscap::adjoint(a).all_finite());
  CHECK(riscap::kron(a, a).all_finite());
}
