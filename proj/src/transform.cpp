#include "deqfi/transform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "deqfi/eigen.hpp"

namespace deqfi {

namespace {

constexpr double kPoleEps = 1e-12;

void require_physical(const BlochVector& b, double tol) {
  if (!b.physical(tol))
    throw std::invalid_argument("Bloch vector lies outside the unit ball");
}

double clamp1(double v) { return std::clamp(v, -1.0, 1.0); }

// Mixing angles of the boundary channel, from the z coordinates alone.
std::pair<double, double> cone_angles(double z, double zp) {
  if (std::abs(z) >= 1.0 - kPoleEps) {
    // Pole source: only the populations need to be steered.
    const double t = (z > 0.0) ? 0.5 * std::acos(clamp1(zp))
                               : 0.5 * std::acos(clamp1(-zp));
    return {t, t};
  }
  if (std::abs(zp) < std::abs(z)) {
    const double t = 0.5 * std::acos(clamp1(zp / z));
    return {t, t};
  }
  if (std::abs(zp) < kPoleEps) {
    // z = z' = 0
    const double t = 0.25 * std::acos(-1.0);
    return {t, t};
  }
  const double c0 = clamp1((z + zp * zp) / (zp * (1.0 + z)));
  const double c1 = clamp1((z - zp * zp) / (zp * (1.0 - z)));
  return {0.5 * std::acos(c0), 0.5 * std::acos(c1)};
}

}  // namespace

bool hdp_cone_contains(const ConeQuery& q, double tol) {
  require_physical(q.source, tol);
  require_physical(q.target, tol);
  const double r = q.source.r(), z = q.source.z;
  const double rp = q.target.r(), zp = q.target.z;
  if (std::abs(z) >= 1.0 - kPoleEps) return rp <= tol;
  if (std::abs(zp) < std::abs(z)) return rp <= r + tol;
  return rp <= r * std::sqrt((1.0 - zp * zp) / (1.0 - z * z)) + tol;
}

KrausChannel extreme_cone_channel(const ConeQuery& q, double tol) {
  if (!hdp_cone_contains(q, tol))
    throw std::invalid_argument("target lies outside the reachable cone of the source");
  const auto [t0, t1] = cone_angles(q.source.z, q.target.z);
  const double phi = q.source.phi();
  const double phip = q.target.phi();
  // Phases chosen so the surviving coherence lands at the target azimuth
  // regardless of the source azimuth.
  ComplexMatrix k1(2), k2(2);
  k1(0, 0) = std::cos(t0);
  k1(1, 1) = std::exp(cd(0.0, phip - phi)) * std::cos(t1);
  k2(0, 1) = std::exp(cd(0.0, -phi)) * std::sin(t1);
  k2(1, 0) = std::exp(cd(0.0, phip)) * std::sin(t0);
  return KrausChannel(1, {std::move(k1), std::move(k2)});
}

double hdp_offdiag_bound(const DensityMatrix& rho, std::size_t i, std::size_t j,
                         const std::vector<std::vector<double>>& p) {
  const std::size_t d = rho.dim();
  if (i >= d || j >= d)
    throw std::invalid_argument("target indices out of range");
  if (p.size() != d)
    throw std::invalid_argument("probability table must have 2^n rows");
  for (const auto& row : p)
    if (row.size() != d)
      throw std::invalid_argument("probability table must be square");
  for (std::size_t x = 0; x < d; ++x) {
    double col = 0.0;
    for (std::size_t out = 0; out < d; ++out) {
      if (p[out][x] < -1e-12)
        throw std::invalid_argument("negative conditional probability");
      col += p[out][x];
    }
    if (std::abs(col - 1.0) > 1e-9)
      throw std::invalid_argument("probability table columns must sum to one");
  }
  const int target_h = std::popcount(i ^ j);
  double bound = 0.0;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      if (std::popcount(x ^ y) != target_h) continue;
      const double pij = std::max(0.0, p[i][x]) * std::max(0.0, p[j][y]);
      if (pij > 0.0) bound += std::abs(rho.entry(x, y)) * std::sqrt(pij);
    }
  return bound;
}

KrausChannel golden_transform(const std::vector<cd>& target_amplitudes,
                              const std::vector<double>& source_phases) {
  const std::size_t d = target_amplitudes.size();
  if (d == 0 || (d & (d - 1)) != 0)
    throw std::invalid_argument("amplitude count must be a power of two");
  if (source_phases.size() != d)
    throw std::invalid_argument("source phase count mismatch");
  const int n = std::countr_zero(d);
  double norm = 0.0;
  for (const cd& a : target_amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("target amplitudes are not normalized");
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (std::size_t z = 0; z < d; ++z) {
    ComplexMatrix k(d);
    for (std::size_t x = 0; x < d; ++x) {
      const std::size_t q = z ^ x;
      k(x, q) = target_amplitudes[x] * std::exp(cd(0.0, source_phases[q]));
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel(n, std::move(ops));
}

KrausChannel hdp_unitary(const HDFunction& f, const std::vector<double>& omega) {
  if (!is_hdf(f.table, f.n))
    throw std::invalid_argument("map does not preserve Hamming distances");
  const std::size_t d = f.table.size();
  if (omega.size() != d)
    throw std::invalid_argument("phase count mismatch");
  ComplexMatrix u(d);
  for (std::size_t x = 0; x < d; ++x)
    u(f.table[x], x) = std::exp(cd(0.0, -omega[x]));
  return KrausChannel(f.n, {std::move(u)});
}

std::optional<CoherencePairing> check_c1_c2(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  CoherencePairing pairing;
  std::vector<bool> used(d, false);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = x + 1; y < d; ++y) {
      if (std::abs(rho.entry(x, y)) <= tol) continue;
      const int h = std::popcount(x ^ y);
      if (pairing.pairs.empty()) pairing.distance = h;
      if (h != pairing.distance) return std::nullopt;       // (C1) fails
      if (used[x] || used[y]) return std::nullopt;          // (C2) fails
      used[x] = used[y] = true;
      pairing.pairs.emplace_back(std::uint32_t(x), std::uint32_t(y));
    }
  if (pairing.pairs.empty()) return std::nullopt;
  return pairing;
}

MergeSpec make_merge_spec(const DensityMatrix& rho, std::size_t i, std::size_t j,
                          std::vector<double> p_to_i, std::vector<double> p_to_j,
                          double tol) {
  const std::size_t d = rho.dim();
  if (i >= d || j >= d || i == j)
    throw std::invalid_argument("merge targets must be two distinct basis states");
  auto pairing = check_c1_c2(rho, tol);
  if (!pairing)
    throw std::invalid_argument(
        "state does not satisfy the single-distance disjoint-support conditions");
  if (std::popcount(i ^ j) != pairing->distance)
    throw std::invalid_argument(
        "merge targets must lie at the coherence Hamming distance");
  if (p_to_i.size() != d || p_to_j.size() != d)
    throw std::invalid_argument("branch probability vectors must have length 2^n");
  for (const auto& [x, y] : pairing->pairs)
    for (std::size_t u : {std::size_t(x), std::size_t(y)}) {
      if (p_to_i[u] < -1e-12 || p_to_j[u] < -1e-12)
        throw std::invalid_argument("negative branch probability");
      if (p_to_i[u] + p_to_j[u] > 1.0 + 1e-9)
        throw std::invalid_argument("branch probabilities exceed one");
    }
  return MergeSpec{rho, i, j, std::move(p_to_i), std::move(p_to_j), *pairing};
}

MergeSpec make_full_merge_spec(const DensityMatrix& rho, std::size_t i,
                               std::size_t j, double tol) {
  const std::size_t d = rho.dim();
  std::vector<double> pi(d, 0.0), pj(d, 0.0);
  auto pairing = check_c1_c2(rho, tol);
  if (!pairing)
    throw std::invalid_argument(
        "state does not satisfy the single-distance disjoint-support conditions");
  for (const auto& [x, y] : pairing->pairs) {
    pi[x] = 1.0;
    pj[y] = 1.0;
  }
  return make_merge_spec(rho, i, j, std::move(pi), std::move(pj), tol);
}

KrausChannel merge_channel(const MergeSpec& spec, double tol) {
  const std::size_t d = spec.rho.dim();
  std::vector<ComplexMatrix> ops;
  ComplexMatrix weight(d);  // sum of K^dagger K, diagonal by construction
  for (const auto& [x, y] : spec.pairing.pairs) {
    const cd rxy = spec.rho.entry(x, y);
    const cd ephase = (std::abs(rxy) > 0.0) ? cd(std::conj(rxy) / std::abs(rxy))
                                            : cd(1.0, 0.0);
    ComplexMatrix k1(d), k2(d);
    k1(spec.i, x) = std::sqrt(std::max(0.0, spec.p_to_i[x])) * ephase;
    k1(spec.j, y) = std::sqrt(std::max(0.0, spec.p_to_j[y]));
    k2(spec.j, x) = std::sqrt(std::max(0.0, spec.p_to_j[x])) * ephase;
    k2(spec.i, y) = std::sqrt(std::max(0.0, spec.p_to_i[y]));
    for (const ComplexMatrix* k : {&k1, &k2}) {
      if (k->max_abs() == 0.0) continue;
      weight += k->adjoint() * (*k);
      ops.push_back(*k);
    }
  }
  ComplexMatrix residual = ComplexMatrix::identity(d);
  residual -= weight;
  ComplexMatrix k0 = sqrt_psd(residual, std::max(tol, 1e-9));
  if (k0.max_abs() > 1e-12 || ops.empty()) ops.push_back(std::move(k0));
  return KrausChannel(spec.rho.n_qubits(), std::move(ops));
}

KrausChannel random_shp(int n_qubits, int num_kraus, std::uint64_t seed) {
  if (num_kraus < 1)
    throw std::invalid_argument("need at least one Kraus operator");
  const std::size_t d = std::size_t(1) << n_qubits;
  const auto hdfs = enumerate_hdf(n_qubits);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, hdfs.size() - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<const HDFunction*> maps(num_kraus);
  for (auto& m : maps) m = &hdfs[pick(rng)];
  std::vector<std::vector<cd>> coef(num_kraus, std::vector<cd>(d));
  for (std::size_t x = 0; x < d; ++x) {
    double col = 0.0;
    for (int l = 0; l < num_kraus; ++l) {
      coef[l][x] = cd(gauss(rng), gauss(rng));
      col += std::norm(coef[l][x]);
    }
    const double scale = 1.0 / std::sqrt(col);
    for (int l = 0; l < num_kraus; ++l) coef[l][x] *= scale;
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(num_kraus);
  for (int l = 0; l < num_kraus; ++l) {
    ComplexMatrix k(d);
    for (std::size_t x = 0; x < d; ++x) k(maps[l]->table[x], x) = coef[l][x];
    ops.push_back(std::move(k));
  }
  return KrausChannel(n_qubits, std::move(ops));
}

std::vector<std::pair<double, double>> cone_boundary(
    const BlochVector& source, const std::vector<double>& z_grid) {
  require_physical(source, default_tol());
  const DensityMatrix rho = density_from_bloch(source);
  const double r = source.r(), z = source.z;
  std::vector<std::pair<double, double>> out;
  out.reserve(z_grid.size());
  for (double zp : z_grid) {
    double r_max;
    if (std::abs(z) >= 1.0 - kPoleEps) {
      r_max = 0.0;
    } else if (std::abs(zp) < std::abs(z)) {
      r_max = r;
    } else {
      r_max = r * std::sqrt((1.0 - zp * zp) / (1.0 - z * z));
    }
    const ConeQuery q{source, BlochVector::from_polar(r_max, source.phi(), zp)};
    const KrausChannel ch = extreme_cone_channel(q);
    const BlochVector reached = bloch_from_density(apply(ch, rho));
    out.emplace_back(zp, reached.r());
  }
  return out;
}

}  // namespace deqfi
