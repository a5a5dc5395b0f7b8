#pragma once

#include "deqfi/matrix.hpp"

namespace deqfi {

/// a = vectors * diag(values) * vectors^dagger, values ascending.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;  // columns are eigenvectors
};

/// Cyclic complex Jacobi diagonalization. Throws std::invalid_argument if
/// the input is not Hermitian within herm_tol (scaled by the matrix norm).
EigenSystem herm_eigen(const ComplexMatrix& a, double herm_tol = 1e-9);

double min_eigenvalue(const ComplexMatrix& a, double herm_tol = 1e-9);

/// Principal square root of a PSD matrix; eigenvalues in [-neg_tol, 0)
/// are clamped to zero, more negative ones throw std::domain_error.
ComplexMatrix sqrt_psd(const ComplexMatrix& a, double neg_tol = 1e-9);

/// Inverse square root; requires eigenvalues > pos_tol.
ComplexMatrix inv_sqrt_pd(const ComplexMatrix& a, double pos_tol = 1e-12);

}  // namespace deqfi
