#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deqfi/channels.hpp"

namespace deqfi {

enum class Verdict { Member, NonMember, MemberByDecomposition, Inconclusive };

const char* verdict_name(Verdict v);

/// A Choi entry <i|E(|x><y|)|j> that should vanish but does not.
struct ChoiViolation {
  std::size_t out_row = 0;  // i
  std::size_t out_col = 0;  // j
  std::size_t in_row = 0;   // x
  std::size_t in_col = 0;   // y
  cd value;
};

/// Classification result with re-checkable evidence. NonMember verdicts
/// always carry a concrete certificate: a violating Choi entry, an l1
/// increase, or span-coverage dimensions.
struct ClassVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
  std::optional<ChoiViolation> violation;
  // Span certificates: dimension of the canonical Kraus operator space,
  // the part of it covered by pattern-compatible operators, and the
  // per-pattern intersection dimensions.
  int space_dim = 0;
  int covered_dim = 0;
  std::vector<int> pattern_dims;
  double metric = 0.0;

  bool is_member() const {
    return verdict == Verdict::Member || verdict == Verdict::MemberByDecomposition;
  }
};

/// Orthonormal-by-construction Kraus set read off the Choi eigenvectors
/// (eigenvalues above rank_cutoff, scaled by sqrt(eigenvalue)). Any other
/// Kraus decomposition of the same map spans the same operator space.
std::vector<ComplexMatrix> canonical_kraus(const KrausChannel& ch,
                                           double rank_cutoff = 1e-9);

/// Exact test: every Choi entry with h(i,j) != h(x,y) vanishes.
ClassVerdict is_hdp(const KrausChannel& ch, double tol = default_tol());

/// Exact test: the channel commutes with the completely dephasing channel.
ClassVerdict is_dio(const KrausChannel& ch, double tol = default_tol());

/// Verifier on the given Kraus list: at most one nonzero entry per row
/// and per column of every operator.
ClassVerdict is_sio_decomposition(const KrausChannel& ch, double tol = default_tol());

/// Verifier on the given Kraus list: every operator is a generalized
/// permutation along (a restriction of) a Hamming distance preserving
/// function, with unit column weights across the list.
ClassVerdict is_shp_decomposition(const KrausChannel& ch, double tol = default_tol());

/// Sound non-membership certificate: if the canonical Kraus space is not
/// covered by its intersections with the Hamming-pattern subspaces, no
/// Kraus decomposition of the required form can exist.
ClassVerdict shp_nonmembership_certifier(const KrausChannel& ch,
                                         double tol = default_tol());

/// Same coverage argument over all basis permutations (n <= 2; the
/// pattern set is factorially large beyond that).
ClassVerdict sio_nonmembership_certifier(const KrausChannel& ch,
                                         double tol = default_tol());

/// Certifies non-membership when the channel increases the l1 coherence
/// of the probe state, which no strictly incoherent operation can.
ClassVerdict sio_nonmembership_by_l1(const KrausChannel& ch,
                                     const DensityMatrix& probe,
                                     double tol = default_tol());

/// Splits each canonical Kraus operator of a single-qubit channel into
/// its diagonal and antidiagonal parts; for a channel commuting with
/// phase damping this reproduces the same map with pattern-form Kraus
/// operators.
KrausChannel single_qubit_pattern_split(const KrausChannel& ch,
                                        double rank_cutoff = 1e-9);

/// Combined report over all four operation classes.
struct HierarchyReport {
  ClassVerdict hdp;
  ClassVerdict dio;
  ClassVerdict sio;
  ClassVerdict shp;
  std::string region;
};

HierarchyReport hierarchy_report(const KrausChannel& ch, double tol = default_tol());

}  // namespace deqfi
