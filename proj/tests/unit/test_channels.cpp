#include "doctest.h"

#include <cmath>
#include <random>

#include "deqfi/channels.hpp"
#include "deqfi/classify.hpp"
#include "deqfi/eigen.hpp"
#include "deqfi/hamming.hpp"
#include "deqfi/transform.hpp"
#include "test_utils.hpp"

using namespace deqfi;

namespace {
KrausChannel identity_channel(int n) {
  return KrausChannel(n, {ComplexMatrix::identity(std::size_t(1) << n)});
}
}  // namespace

TEST_CASE("apply basics") {
  std::mt19937_64 rng(61);
  const DensityMatrix rho = scenarios::random_density(2, rng);
  const DensityMatrix out = apply(identity_channel(2), rho);
  CHECK(ComplexMatrix::distance(out.mat(), rho.mat()) <= 1e-14);

  // dimension mismatch
  CHECK_THROWS_AS(apply(identity_channel(1), rho), std::invalid_argument);
}

TEST_CASE("phase damping acts entrywise") {
  std::mt19937_64 rng(67);
  const DensityMatrix rho = scenarios::random_density(2, rng);
  CHECK(ComplexMatrix::distance(pd_channel_apply(2, 0.0, rho).mat(), rho.mat()) <=
        1e-14);

  const double theta = 0.8;
  const DensityMatrix damped = pd_channel_apply(2, theta, rho);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      const int h = hamming_distance(2, x, y);
      const cd want = rho.entry(x, y) * std::exp(-double(h) * theta);
      CHECK(std::abs(damped.entry(x, y) - want) <= 1e-14);
    }

  // single qubit: (r, phi, z) -> (r e^-theta, phi, z)
  const BlochVector b = BlochVector::from_polar(0.7, 1.1, 0.3);
  const BlochVector after =
      bloch_from_density(pd_channel_apply(1, theta, density_from_bloch(b)));
  CHECK(after.r() == doctest::Approx(0.7 * std::exp(-theta)).epsilon(1e-12));
  CHECK(after.phi() == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(after.z == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(pd_channel_apply(1, -0.1, density_from_bloch(b)),
                  std::invalid_argument);
}

TEST_CASE("phase damping derivative") {
  std::mt19937_64 rng(71);
  const DensityMatrix diag = scenarios::random_diagonal(2, rng);
  CHECK(pd_derivative(2, 0.4, diag).max_abs() == 0.0);

  const DensityMatrix plus = density_from_bloch({1.0, 0.0, 0.0});
  const ComplexMatrix d = pd_derivative(1, 0.4, plus);
  CHECK(d(0, 1).real() == doctest::Approx(-std::exp(-0.4) / 2.0));

  const DensityMatrix rho = scenarios::random_density(2, rng);
  const ComplexMatrix dr = pd_derivative(2, 0.6, rho);
  CHECK(std::abs(dr.trace()) <= 1e-14);
  CHECK(dr.is_hermitian(1e-14));
}

TEST_CASE("kraus form of phase damping matches the entrywise map") {
  std::mt19937_64 rng(73);
  for (int n : {1, 2, 3}) {
    const double theta = 0.37;
    const KrausChannel pd = pd_kraus_channel(n, theta);
    CHECK(validate_cptp(pd));
    const DensityMatrix rho = scenarios::random_density(n, rng);
    CHECK(ComplexMatrix::distance(apply(pd, rho).mat(),
                                  pd_channel_apply(n, theta, rho).mat()) <= 1e-12);
  }
}

TEST_CASE("completely dephasing channel") {
  std::mt19937_64 rng(79);
  const KrausChannel cd2 = cd_channel(2);
  const DensityMatrix diag = scenarios::random_diagonal(2, rng);
  CHECK(ComplexMatrix::distance(apply(cd2, diag).mat(), diag.mat()) <= 1e-14);

  const DensityMatrix plus = density_from_bloch({1.0, 0.0, 0.0});
  const DensityMatrix dephased = apply(cd_channel(1), plus);
  CHECK(std::abs(dephased.entry(0, 0) - cd(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(dephased.entry(0, 1)) <= 1e-14);

  CHECK(l1_coherence(apply(cd2, scenarios::random_density(2, rng))) <= 1e-12);
}

TEST_CASE("choi of the identity and of Z") {
  const ChoiMatrix j1 = choi_of(identity_channel(1));
  // J = sum_{i,j} |i><j| (x) |i><j|: ones exactly at block (i,j) entry (i,j)
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t jj = 0; jj < 2; ++jj) {
          const cd want = (i == x && jj == y) ? cd(1.0, 0.0) : cd(0.0, 0.0);
          CHECK(std::abs(j1.block_entry(i, jj, x, y) - want) <= 1e-14);
        }

  ComplexMatrix jz(4);
  const double q = 0.25;
  jz(0, 0) = 0.5; jz(0, 2) = q;  jz(0, 3) = q;
  jz(1, 1) = 0.5; jz(1, 2) = q;  jz(1, 3) = -q;
  jz(2, 0) = q;   jz(2, 1) = q;  jz(2, 2) = 0.5;
  jz(3, 0) = q;   jz(3, 1) = -q; jz(3, 3) = 0.5;
  CHECK(ComplexMatrix::distance(choi_of(named_channel(NamedChannel::Z, 1)).mat(),
                                jz) <= 1e-14);
}

TEST_CASE("single-qubit commuting channels have the sparse choi pattern") {
  std::mt19937_64 rng(83);
  const KrausChannel ch = random_shp(1, 3, rng());
  const ChoiMatrix j = choi_of(ch);
  // zeros exactly where the Hamming distances differ; the 8 surviving
  // positions are the diagonal and the two block antidiagonals
  int checked = 0;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t jj = 0; jj < 2; ++jj)
          if ((i ^ jj) != (x ^ y)) {
            CHECK(std::abs(j.block_entry(i, jj, x, y)) <= 1e-12);
            ++checked;
          }
  CHECK(checked == 8);
}

TEST_CASE("channel equality is decomposition independent") {
  std::mt19937_64 rng(89);
  const KrausChannel ch = scenarios::random_cptp(2, 3, rng);
  const KrausChannel mixed = test::isometry_mixed(ch, 5, rng);
  CHECK(channels_equal(ch, mixed, 1e-9));

  CHECK(!channels_equal(pd_kraus_channel(1, 0.1), pd_kraus_channel(1, 0.2), 1e-9));
}

TEST_CASE("composition works and phase damping is a semigroup") {
  std::mt19937_64 rng(97);
  const KrausChannel ch = scenarios::random_cptp(1, 2, rng);
  CHECK(channels_equal(compose(identity_channel(1), ch), ch, 1e-12));

  const DensityMatrix rho = scenarios::random_density(1, rng);
  const KrausChannel ab = compose(ch, pd_kraus_channel(1, 0.3));
  CHECK(ComplexMatrix::distance(
            apply(ab, rho).mat(),
            apply(ch, apply(pd_kraus_channel(1, 0.3), rho)).mat()) <= 1e-12);

  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(channels_equal(compose(pd_kraus_channel(2, a), pd_kraus_channel(2, b)),
                         pd_kraus_channel(2, a + b), 1e-9));
  }
}

TEST_CASE("W commutes with phase damping as channels") {
  const KrausChannel w = named_channel(NamedChannel::W, 2);
  const KrausChannel pd = pd_kraus_channel(2, 0.5);
  CHECK(channels_equal(compose(w, pd), compose(pd, w), 1e-9));
}

TEST_CASE("Z halves the radius onto the diagonal axis") {
  for (double r : {0.0, 0.4, 0.9})
    for (double z : {-0.3, 0.0, 0.4}) {
      if (r * r + z * z > 1.0) continue;
      const BlochVector out = bloch_from_density(
          apply(named_channel(NamedChannel::Z, 1), density_from_bloch({r, 0, z})));
      CHECK(out.x == doctest::Approx(0.5 * r).epsilon(1e-12));
      CHECK(std::abs(out.y) <= 1e-14);
      CHECK(out.z == doctest::Approx(0.5 * r).epsilon(1e-12));
    }
}

TEST_CASE("four-qubit register smoke") {
  const double theta = 0.45;
  std::mt19937_64 rng(251);
  const DensityMatrix rho = scenarios::random_density(4, rng);
  const KrausChannel pd = pd_kraus_channel(4, theta);
  CHECK(trace_preserving(pd, 1e-12));
  CHECK(ComplexMatrix::distance(apply(pd, rho).mat(),
                                pd_channel_apply(4, theta, rho).mat()) <= 1e-11);
  const KrausChannel w4 = named_channel(NamedChannel::W, 4);
  CHECK(trace_preserving(w4, 1e-12));
  CHECK(is_hdp(w4).verdict == Verdict::Member);
  const KrausChannel shp4 = random_shp(4, 2, rng());
  CHECK(is_shp_decomposition(shp4).verdict == Verdict::MemberByDecomposition);
  CHECK(is_hdp(shp4).verdict == Verdict::Member);
}

TEST_CASE("cptp validation") {
  CHECK(validate_cptp(identity_channel(1)));
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(!validate_cptp(KrausChannel(1, {i2, i2})));
  CHECK(validate_cptp(named_channel(NamedChannel::W, 2)));
  CHECK(validate_cptp(named_channel(NamedChannel::R, 3)));
  CHECK(validate_cptp(named_channel(NamedChannel::N, 2)));
  CHECK(validate_cptp(named_channel(NamedChannel::Z, 1)));
  CHECK(validate_cptp(named_channel(NamedChannel::USio, 2)));
  CHECK(validate_cptp(named_channel(NamedChannel::VSwap, 2)));
  CHECK(validate_cptp(named_channel(NamedChannel::UPhase, 1, 0.4)));
}

TEST_CASE("named channels embed into larger registers") {
  const KrausChannel w3 = named_channel(NamedChannel::W, 3);
  CHECK(trace_preserving(w3, 1e-12));
  CHECK(is_hdp(w3).verdict == Verdict::Member);
  const KrausChannel n3 = named_channel(NamedChannel::N, 3);
  CHECK(trace_preserving(n3, 1e-12));
  CHECK_THROWS_AS(named_channel(NamedChannel::R, 2), std::invalid_argument);
  CHECK_THROWS_AS(named_channel(NamedChannel::VSwap, 3), std::invalid_argument);
}

TEST_CASE("choi is linear in the channel") {
  std::mt19937_64 rng(101);
  const KrausChannel a = scenarios::random_cptp(1, 2, rng);
  const KrausChannel b = scenarios::random_cptp(1, 3, rng);
  const double p = 0.3;
  std::vector<ComplexMatrix> ops;
  for (auto k : a.kraus()) {
    k *= cd(std::sqrt(p), 0.0);
    ops.push_back(k);
  }
  for (auto k : b.kraus()) {
    k *= cd(std::sqrt(1.0 - p), 0.0);
    ops.push_back(k);
  }
  const KrausChannel mix(1, ops);
  ComplexMatrix want = choi_of(a).mat();
  want *= cd(p, 0.0);
  ComplexMatrix jb = choi_of(b).mat();
  jb *= cd(1.0 - p, 0.0);
  want += jb;
  CHECK(ComplexMatrix::distance(choi_of(mix).mat(), want) <= 1e-12);
}

TEST_CASE("apply preserves trace and positivity") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 20; ++t) {
    const KrausChannel ch = scenarios::random_cptp(2, 1 + t % 3, rng);
    const DensityMatrix rho = scenarios::random_density(2, rng);
    const DensityMatrix out = apply(ch, rho);  // construction re-validates
    CHECK(std::abs(out.mat().trace() - cd(1.0, 0.0)) <= 1e-9);
    CHECK(min_eigenvalue(out.mat()) >= -1e-9);
  }
}
