#pragma once

#include <functional>
#include <vector>

#include "deqfi/matrix.hpp"
#include "deqfi/states.hpp"

namespace deqfi {

/// Positive operators summing to the identity.
struct Povm {
  std::vector<ComplexMatrix> elements;
  void validate(double tol = default_tol()) const;
};

/// A state together with its derivative along the estimated parameter.
struct ParamPoint {
  ParamPoint(DensityMatrix state, ComplexMatrix derivative,
             double tol = default_tol());
  DensityMatrix state;
  ComplexMatrix derivative;
};

/// Quantum Fisher information via the spectral form of the symmetric
/// logarithmic derivative:
///   F = 2 sum_{i,k : p_i + p_k > cutoff} |<i|d_rho|k>|^2 / (p_i + p_k).
double qfi(const ParamPoint& p, double cutoff = 1e-12);

/// The phase-damped state and its analytic derivative at strength theta.
ParamPoint dephasing_point(const DensityMatrix& rho, double theta);

/// QFI about the damping strength of the phase damping channel; requires
/// theta > 0 (the family is boundary-singular at theta = 0 for pure
/// probes).
double dephasing_qfi(const DensityMatrix& rho, double theta);

/// Classical Fisher information of a measurement:
///   F = sum_x (d p_x)^2 / p_x  with  p_x = tr(rho M_x).
/// Outcomes with p <= tol and |dp| <= tol are dropped; p <= tol with
/// |dp| > tol throws (singular probability point).
double classical_fi(const Povm& povm, const ParamPoint& p, double tol = 1e-12);

/// Three-outcome measurement targeting the coherence between basis states
/// x and y: projectors onto (|x> +- e^{i beta}|y>)/sqrt(2) plus the rest.
Povm witness_povm(std::size_t x, std::size_t y, double beta, int n_qubits);

/// QFI for estimating the evolution time under H:
///   F = 2 sum_{i,k} (p_i - p_k)^2 / (p_i + p_k) |<i|H|k>|^2,
/// which equals 4 Var(H) on pure states.
double pe_qfi(const DensityMatrix& rho, const Hamiltonian& h);

/// Square-root fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Independent QFI estimate from the local drop of fidelity,
///   F(theta) = 8 (1 - Fid(rho_{theta-d/2}, rho_{theta+d/2})) / d^2,
/// evaluated at step dtheta and dtheta/2 with one Richardson step.
/// Cross-check only; never used by qfi itself.
double qfi_fidelity_oracle(const std::function<DensityMatrix(double)>& family,
                           double theta, double dtheta = 1e-2);

}  // namespace deqfi
