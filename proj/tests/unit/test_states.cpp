#include "doctest.h"

#include <cmath>
#include <random>

#include "deqfi/states.hpp"
#include "test_utils.hpp"

using namespace deqfi;

TEST_CASE("bloch to density on the axes") {
  const DensityMatrix north = density_from_bloch({0.0, 0.0, 1.0});
  CHECK(north.entry(0, 0) == cd(1.0, 0.0));
  CHECK(north.entry(1, 1) == cd(0.0, 0.0));

  const DensityMatrix plus = density_from_bloch({1.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(std::abs(plus.entry(i, j) - cd(0.5, 0.0)) <= 1e-12);

  // direct substitution: (0.6, 0, 0.6) -> [[0.8, 0.3], [0.3, 0.2]]
  const DensityMatrix mid = density_from_bloch({0.6, 0.0, 0.6});
  CHECK(mid.entry(0, 0).real() == doctest::Approx(0.8));
  CHECK(mid.entry(0, 1).real() == doctest::Approx(0.3));
  CHECK(mid.entry(1, 0).real() == doctest::Approx(0.3));
  CHECK(mid.entry(1, 1).real() == doctest::Approx(0.2));
}

TEST_CASE("bloch round trips") {
  const BlochVector south = bloch_from_density(
      DensityMatrix::pure(1, std::vector<cd>{0.0, 1.0}));
  CHECK(south.z == doctest::Approx(-1.0));
  CHECK(south.r() == doctest::Approx(0.0));

  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= cd(0.5, 0.0);
  const BlochVector mixed = bloch_from_density(DensityMatrix(1, half));
  CHECK(mixed.norm_sq() == doctest::Approx(0.0));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    BlochVector b{u(rng), u(rng), u(rng)};
    if (b.norm_sq() > 1.0) {
      --t;
      continue;
    }
    const BlochVector back = bloch_from_density(density_from_bloch(b));
    CHECK(std::abs(back.x - b.x) <= 1e-10);
    CHECK(std::abs(back.y - b.y) <= 1e-10);
    CHECK(std::abs(back.z - b.z) <= 1e-10);
  }
}

TEST_CASE("state validation rejects unphysical input") {
  CHECK_THROWS_AS(density_from_bloch({1.0, 0.0, 0.2}), std::invalid_argument);

  ComplexMatrix not_trace_one = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(DensityMatrix(1, not_trace_one), std::invalid_argument);

  ComplexMatrix not_psd(2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(1, not_psd), std::invalid_argument);

  ComplexMatrix not_herm(2);
  not_herm(0, 0) = 1.0;
  not_herm(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(1, not_herm), std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix::pure(1, std::vector<cd>{1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("hamming modes partition the state") {
  std::mt19937_64 rng(43);
  const DensityMatrix rho = scenarios::random_density(2, rng);
  ComplexMatrix sum(4);
  for (int h = 0; h <= 2; ++h) sum += hamming_mode(rho, h);
  CHECK(ComplexMatrix::distance(sum, rho.mat()) == 0.0);
  CHECK_THROWS_AS(hamming_mode(rho, 3), std::invalid_argument);

  const double rt = 1.0 / std::sqrt(2.0);
  const DensityMatrix psi1 = DensityMatrix::pure(2, std::vector<cd>{rt, rt, 0.0, 0.0});
  CHECK(hamming_mode(psi1, 2).max_abs() == 0.0);

  const DensityMatrix psi2 = DensityMatrix::pure(2, std::vector<cd>{rt, 0.0, 0.0, rt});
  const ComplexMatrix mode2 = hamming_mode(psi2, 2);
  CHECK(mode2(0, 3).real() == doctest::Approx(0.5));
  CHECK(mode2(3, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(mode2(0, 0)) == 0.0);
}

TEST_CASE("uniform superpositions") {
  const DensityMatrix plus = uniform_superposition(1, std::vector<double>{0.0, 0.0});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(plus.entry(i, j).real() == doctest::Approx(0.5));

  const double pi = std::acos(-1.0);
  const DensityMatrix golden =
      uniform_superposition(2, std::vector<double>{0.0, 0.0, 0.0, pi});
  // amplitudes (1, 1, 1, -1)/2: check the sign structure of the projector
  CHECK(golden.entry(0, 3).real() == doctest::Approx(-0.25));
  CHECK(golden.entry(0, 1).real() == doctest::Approx(0.25));
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(golden.entry(i, i).real() == doctest::Approx(0.25));

  CHECK_THROWS_AS(uniform_superposition(2, std::vector<double>{0.0}),
                  std::invalid_argument);
}

TEST_CASE("l1 coherence") {
  std::mt19937_64 rng(47);
  CHECK(l1_coherence(scenarios::random_diagonal(2, rng)) == 0.0);

  ComplexMatrix pair(2);
  pair(0, 0) = pair(1, 1) = 0.5;
  pair(0, 1) = pair(1, 0) = 0.5;
  CHECK(l1_coherence(DensityMatrix(1, pair)) == doctest::Approx(1.0));

  const DensityMatrix rho = scenarios::random_density(2, rng);
  CHECK(l1_coherence(rho) >= 0.0);
}

TEST_CASE("excitation-counting hamiltonian") {
  const Hamiltonian h(3, 0.7);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(h.mat()(i, i).real() ==
          doctest::Approx(0.7 * double(popcount_index(i))));
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(h.mat()(i, j)) == 0.0);
  }
  CHECK_THROWS_AS(Hamiltonian(2, -1.0), std::invalid_argument);
}
