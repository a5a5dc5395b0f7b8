#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "deqfi/channels.hpp"
#include "deqfi/hamming.hpp"
#include "deqfi/states.hpp"

namespace deqfi {

/// Reachability question: can source be mapped to target by a channel
/// commuting with phase damping?
struct ConeQuery {
  BlochVector source;
  BlochVector target;
};

/// Reachable iff r' <= r sqrt((1-z'^2)/(1-z^2)) for |z'| >= |z| and
/// r' <= r otherwise; rotationally symmetric about the z axis. A pole
/// source (|z| = 1) reaches exactly the r' = 0 axis.
bool hdp_cone_contains(const ConeQuery& q, double tol = default_tol());

/// Two-operator channel reaching the cone boundary: diagonal and
/// antidiagonal Kraus operators with mixing angles chosen from (z, z').
/// The output state has the target z', phase phi' and radial component
/// r cos(theta_0 - theta_1) >= r'.
KrausChannel extreme_cone_channel(const ConeQuery& q, double tol = default_tol());

/// Upper bound on |<i|E(rho)|j>| over channels commuting with phase
/// damping, for a conditional probability table p[i][x] (columns summing
/// to one): sum over pairs at Hamming distance h(i,j) of
/// |rho_xy| sqrt(p[i][x] p[j][y]). Reduces to the exact diagonal map for
/// i = j.
double hdp_offdiag_bound(const DensityMatrix& rho, std::size_t i, std::size_t j,
                         const std::vector<std::vector<double>>& p);

/// Channel with 2^n pattern Kraus operators K_z(x, z^x) mapping the
/// uniform superposition with phases eta onto the given pure target;
/// every branch fires with probability 2^-n on that input.
KrausChannel golden_transform(const std::vector<cd>& target_amplitudes,
                              const std::vector<double>& source_phases);

/// Unitary freely commuting with phase damping:
/// U = sum_x e^{-i omega_x} |f(x)><x|.
KrausChannel hdp_unitary(const HDFunction& f, const std::vector<double>& omega);

/// Off-diagonal support structure required by the merge construction: all
/// coherences live at one Hamming distance c and their index pairs are
/// disjoint.
struct CoherencePairing {
  int distance = 0;                                      // the common c
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // x < y
};

std::optional<CoherencePairing> check_c1_c2(const DensityMatrix& rho,
                                            double tol = default_tol());

/// Inputs of the coherence-merging channel: target indices i, j at the
/// pairing distance, and per-index branch probabilities with
/// p_to_i[u] + p_to_j[u] <= 1.
struct MergeSpec {
  DensityMatrix rho;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<double> p_to_i;
  std::vector<double> p_to_j;
  CoherencePairing pairing;
};

MergeSpec make_merge_spec(const DensityMatrix& rho, std::size_t i, std::size_t j,
                          std::vector<double> p_to_i, std::vector<double> p_to_j,
                          double tol = default_tol());

/// Spec with the probabilities that move all paired coherence onto the
/// (i, j) element: p_to_i = 1 on the smaller pair index, p_to_j = 1 on
/// the larger.
MergeSpec make_full_merge_spec(const DensityMatrix& rho, std::size_t i,
                               std::size_t j, double tol = default_tol());

/// Kraus pair per coherence pair plus a diagonal completion; the channel
/// commutes with phase damping and moves the paired coherences onto the
/// (i, j) matrix element.
KrausChannel merge_channel(const MergeSpec& spec, double tol = default_tol());

/// Seeded random channel with num_kraus pattern operators: uniformly
/// drawn Hamming-distance-preserving maps with complex Gaussian
/// coefficient columns normalized to one.
KrausChannel random_shp(int n_qubits, int num_kraus, std::uint64_t seed);

/// (z', r'_max) samples of the reachable-region boundary, measured by
/// applying the boundary channel rather than evaluating the closed form.
std::vector<std::pair<double, double>> cone_boundary(
    const BlochVector& source, const std::vector<double>& z_grid);

}  // namespace deqfi
