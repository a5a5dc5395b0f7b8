#include "doctest.h"

#include <random>

#include "deqfi/eigen.hpp"
#include "deqfi/matrix.hpp"
#include "test_utils.hpp"

using namespace deqfi;

TEST_CASE("pauli eigensystems") {
  ComplexMatrix sz(2), sx(2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;

  auto ez = herm_eigen(sz);
  CHECK(ez.values[0] == doctest::Approx(-1.0));
  CHECK(ez.values[1] == doctest::Approx(1.0));

  auto ex = herm_eigen(sx);
  CHECK(ex.values[0] == doctest::Approx(-1.0));
  CHECK(ex.values[1] == doctest::Approx(1.0));
  // eigenvectors (|0> -+ |1>)/sqrt2 up to phase
  for (int k = 0; k < 2; ++k) {
    const double ratio = std::abs(ex.vectors(0, k)) / std::abs(ex.vectors(1, k));
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("random hermitian reconstruction and unitarity") {
  std::mt19937_64 rng(17);
  for (std::size_t dim : {2u, 3u, 5u, 16u, 32u}) {
    const ComplexMatrix a = test::random_hermitian(dim, rng);
    const EigenSystem es = herm_eigen(a);
    for (std::size_t i = 0; i + 1 < dim; ++i)
      CHECK(es.values[i] <= es.values[i + 1]);
    ComplexMatrix w = es.vectors;
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i) w(i, j) *= es.values[j];
    CHECK(ComplexMatrix::distance(w * es.vectors.adjoint(), a) <= 1e-10 * double(dim));
    CHECK(ComplexMatrix::distance(es.vectors.adjoint() * es.vectors,
                                  ComplexMatrix::identity(dim)) <= 1e-10 * double(dim));
  }
}

TEST_CASE("non-hermitian input is rejected") {
  ComplexMatrix a(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eigen(a), std::invalid_argument);
}

TEST_CASE("psd square root squares back") {
  std::mt19937_64 rng(23);
  ComplexMatrix a = test::random_hermitian(4, rng);
  a = a * a.adjoint();  // PSD
  const ComplexMatrix r = sqrt_psd(a);
  CHECK(ComplexMatrix::distance(r * r, a) <= 1e-9);
  CHECK_THROWS_AS(sqrt_psd(cd(-1.0, 0.0) * a), std::domain_error);
}

TEST_CASE("inverse square root inverts") {
  std::mt19937_64 rng(29);
  ComplexMatrix a = test::random_hermitian(4, rng);
  a = a * a.adjoint();
  a += ComplexMatrix::identity(4);  // positive definite
  const ComplexMatrix r = inv_sqrt_pd(a);
  CHECK(ComplexMatrix::distance(r * a * r, ComplexMatrix::identity(4)) <= 1e-9);
}

TEST_CASE("kronecker product identities") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(ComplexMatrix::distance(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

  ComplexMatrix sz(2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  CHECK(std::abs(kron(sz, sz).trace()) == 0.0);

  ComplexMatrix plus(2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  const ComplexMatrix p4 = kron(plus, plus);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(p4(i, j) == cd(0.25, 0.0));
}

TEST_CASE("matrix helpers") {
  std::mt19937_64 rng(31);
  const ComplexMatrix a = test::random_hermitian(3, rng);
  CHECK(a.is_hermitian(1e-12));
  CHECK(std::abs(a.trace().imag()) <= 1e-12);
  const auto v = std::vector<cd>{1.0, cd(0.0, 1.0), -1.0};
  const auto av = a.mul_vec(v);
  for (std::size_t i = 0; i < 3; ++i) {
    cd want = 0.0;
    for (std::size_t j = 0; j < 3; ++j) want += a(i, j) * v[j];
    CHECK(std::abs(av[i] - want) <= 1e-12);
  }
}
