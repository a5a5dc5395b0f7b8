#include "deqfi/classify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "deqfi/eigen.hpp"
#include "deqfi/hamming.hpp"

namespace deqfi {

namespace {

int hdist(std::size_t a, std::size_t b) { return std::popcount(a ^ b); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Partial input->output map of a generalized permutation matrix, or
// nullopt if some row or column carries two entries above tol.
std::optional<std::vector<int>> partial_pattern(const ComplexMatrix& k, double tol) {
  const std::size_t d = k.dim();
  std::vector<int> col_to_row(d, -1);
  std::vector<int> row_seen(d, 0);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(k(i, x)) <= tol) continue;
      if (col_to_row[x] != -1) return std::nullopt;  // two entries in a column
      if (row_seen[i]) return std::nullopt;          // two entries in a row
      col_to_row[x] = int(i);
      row_seen[i] = 1;
    }
  }
  return col_to_row;
}

bool extends_to_hdf(const std::vector<int>& col_to_row, int n) {
  static thread_local std::vector<std::vector<HDFunction>> cache(5);
  if (n >= 1 && n <= 4 && cache[n].empty()) cache[n] = enumerate_hdf(n);
  for (const HDFunction& f : cache[n]) {
    bool ok = true;
    for (std::size_t x = 0; x < col_to_row.size() && ok; ++x)
      if (col_to_row[x] != -1 && f.table[x] != std::uint32_t(col_to_row[x]))
        ok = false;
    if (ok) return true;
  }
  return false;
}

struct SpanBasis {
  std::size_t d = 0;
  std::vector<std::vector<cd>> columns;  // orthonormal, length d*d, index x*d + i
};

SpanBasis kraus_space_basis(const KrausChannel& ch, double rank_cutoff) {
  const std::size_t d = ch.dim();
  const EigenSystem es = herm_eigen(choi_of(ch).mat());
  SpanBasis basis;
  basis.d = d;
  for (std::size_t a = 0; a < es.values.size(); ++a) {
    if (es.values[a] <= rank_cutoff) continue;
    std::vector<cd> v(d * d);
    for (std::size_t idx = 0; idx < d * d; ++idx) v[idx] = es.vectors(idx, a);
    basis.columns.push_back(std::move(v));
  }
  return basis;
}

// Vectors of the Kraus space (in basis coordinates) lying in the pattern
// subspace of matrices supported on {(pattern[x], x)}. Detected through
// principal angles: eigenvectors of C C^dagger with eigenvalue ~ 1, where
// C[a][x] = conj(basis_a at position (x, pattern[x])).
std::vector<std::vector<cd>> pattern_intersection(
    const SpanBasis& basis, const std::vector<std::uint32_t>& pattern,
    double angle_tol) {
  const std::size_t r = basis.columns.size();
  const std::size_t d = basis.d;
  // rows of C = A^dagger B, one row per basis element of the Kraus space
  std::vector<std::vector<cd>> rows(r, std::vector<cd>(d));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t x = 0; x < d; ++x)
      rows[a][x] = std::conj(basis.columns[a][x * d + pattern[x]]);
  ComplexMatrix m(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      cd acc = 0.0;
      for (std::size_t x = 0; x < d; ++x) acc += rows[a][x] * std::conj(rows[b][x]);
      m(a, b) = acc;
    }
  const EigenSystem es = herm_eigen(m);
  std::vector<std::vector<cd>> out;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    if (es.values[k] < 1.0 - angle_tol) continue;
    std::vector<cd> u(r);
    for (std::size_t a = 0; a < r; ++a) u[a] = es.vectors(a, k);
    out.push_back(std::move(u));
  }
  return out;
}

// Incremental Gram-Schmidt rank with a fixed residual threshold.
struct RankAccumulator {
  std::vector<std::vector<cd>> basis;

  bool add(std::vector<cd> v) {
    for (const auto& b : basis) {
      cd proj = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) proj += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
    }
    double norm = 0.0;
    for (const cd& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm < 1e-6) return false;
    for (cd& x : v) x /= norm;
    basis.push_back(std::move(v));
    return true;
  }
};

ClassVerdict span_coverage_certifier(const KrausChannel& ch,
                                     const std::vector<std::vector<std::uint32_t>>& patterns,
                                     double tol, const char* class_name) {
  const SpanBasis basis = kraus_space_basis(ch, std::max(tol, 1e-12));
  const int r = int(basis.columns.size());
  ClassVerdict v;
  v.space_dim = r;
  RankAccumulator coverage;
  v.pattern_dims.reserve(patterns.size());
  for (const auto& pat : patterns) {
    const auto vecs = pattern_intersection(basis, pat, 1e-7);
    v.pattern_dims.push_back(int(vecs.size()));
    for (auto& u : vecs) coverage.add(std::move(u));
  }
  v.covered_dim = int(coverage.basis.size());
  if (v.covered_dim < v.space_dim) {
    v.verdict = Verdict::NonMember;
    std::ostringstream os;
    os << "pattern-compatible operators cover only " << v.covered_dim << " of "
       << v.space_dim << " Kraus-space dimensions; no " << class_name
       << " decomposition exists";
    v.detail = os.str();
  } else {
    v.verdict = Verdict::Inconclusive;
    v.detail = "pattern subspaces cover the Kraus space; coverage gives no obstruction";
  }
  return v;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NonMember: return "non_member";
    case Verdict::MemberByDecomposition: return "member_by_decomposition";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::vector<ComplexMatrix> canonical_kraus(const KrausChannel& ch,
                                           double rank_cutoff) {
  const std::size_t d = ch.dim();
  const EigenSystem es = herm_eigen(choi_of(ch).mat());
  std::vector<ComplexMatrix> ops;
  for (std::size_t a = 0; a < es.values.size(); ++a) {
    if (es.values[a] <= rank_cutoff) continue;
    const double w = std::sqrt(es.values[a]);
    ComplexMatrix k(d);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t i = 0; i < d; ++i)
        k(i, x) = w * es.vectors(x * d + i, a);
    ops.push_back(std::move(k));
  }
  return ops;
}

ClassVerdict is_hdp(const KrausChannel& ch, double tol) {
  const ChoiMatrix j = choi_of(ch);
  const std::size_t d = ch.dim();
  ClassVerdict v;
  double worst = tol;
  // Scan blocks (x, y), inner (i, j); keep the largest violation, first
  // in scan order on ties.
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t jj = 0; jj < d; ++jj) {
          if (hdist(i, jj) == hdist(x, y)) continue;
          const cd val = j.block_entry(i, jj, x, y);
          if (std::abs(val) > worst) {
            worst = std::abs(val);
            v.violation = ChoiViolation{i, jj, x, y, val};
          }
        }
  if (v.violation) {
    v.verdict = Verdict::NonMember;
    v.metric = worst;
    std::ostringstream os;
    os << "<" << v.violation->out_row << "|E(|" << v.violation->in_row << "><"
       << v.violation->in_col << "|)|" << v.violation->out_col
       << "> has modulus " << fmt(worst)
       << " although the Hamming distances differ";
    v.detail = os.str();
  } else {
    v.verdict = Verdict::Member;
    v.detail = "all Hamming-distance-changing Choi entries vanish";
  }
  return v;
}

ClassVerdict is_dio(const KrausChannel& ch, double tol) {
  const KrausChannel delta = cd_channel(ch.n_qubits());
  const double dist = ComplexMatrix::distance(choi_of(compose(delta, ch)).mat(),
                                              choi_of(compose(ch, delta)).mat());
  ClassVerdict v;
  v.metric = dist;
  if (dist <= tol) {
    v.verdict = Verdict::Member;
    v.detail = "commutes with the completely dephasing channel";
  } else {
    v.verdict = Verdict::NonMember;
    v.detail = "dephasing commutator has Choi distance " + fmt(dist);
  }
  return v;
}

ClassVerdict is_sio_decomposition(const KrausChannel& ch, double tol) {
  ClassVerdict v;
  for (std::size_t l = 0; l < ch.kraus().size(); ++l) {
    if (!partial_pattern(ch.kraus()[l], tol)) {
      v.verdict = Verdict::Inconclusive;
      std::ostringstream os;
      os << "Kraus operator " << l
         << " is not a generalized permutation; the given decomposition is "
            "not strictly incoherent (other decompositions may be)";
      v.detail = os.str();
      return v;
    }
  }
  v.verdict = Verdict::MemberByDecomposition;
  v.detail = "every given Kraus operator has at most one entry per row and column";
  return v;
}

ClassVerdict is_shp_decomposition(const KrausChannel& ch, double tol) {
  ClassVerdict v;
  const std::size_t d = ch.dim();
  std::vector<double> column_weight(d, 0.0);
  for (std::size_t l = 0; l < ch.kraus().size(); ++l) {
    const ComplexMatrix& k = ch.kraus()[l];
    const auto pattern = partial_pattern(k, tol);
    if (!pattern) {
      v.verdict = Verdict::Inconclusive;
      v.detail = "Kraus operator " + std::to_string(l) +
                 " is not a generalized permutation";
      return v;
    }
    if (!extends_to_hdf(*pattern, ch.n_qubits())) {
      v.verdict = Verdict::Inconclusive;
      v.detail = "Kraus operator " + std::to_string(l) +
                 " permutes along a map that changes Hamming distances";
      return v;
    }
    for (std::size_t x = 0; x < d; ++x)
      if ((*pattern)[x] != -1)
        column_weight[x] += std::norm(k((*pattern)[x], x));
  }
  for (std::size_t x = 0; x < d; ++x)
    if (std::abs(column_weight[x] - 1.0) > std::max(tol, 1e-9) * 10.0) {
      v.verdict = Verdict::Inconclusive;
      v.detail = "column " + std::to_string(x) + " weights sum to " +
                 fmt(column_weight[x]) + " instead of 1";
      return v;
    }
  v.verdict = Verdict::MemberByDecomposition;
  v.detail = "all Kraus operators are generalized permutations along "
             "Hamming-distance-preserving maps with unit column weights";
  return v;
}

ClassVerdict shp_nonmembership_certifier(const KrausChannel& ch, double tol) {
  const auto hdfs = enumerate_hdf(ch.n_qubits());
  std::vector<std::vector<std::uint32_t>> patterns;
  patterns.reserve(hdfs.size());
  for (const auto& f : hdfs) patterns.push_back(f.table);
  return span_coverage_certifier(ch, patterns, tol, "selectively Hamming distance preserving");
}

ClassVerdict sio_nonmembership_certifier(const KrausChannel& ch, double tol) {
  if (ch.n_qubits() > 2) {
    ClassVerdict v;
    v.verdict = Verdict::Inconclusive;
    v.detail = "permutation span certificate is only enumerated for n <= 2";
    return v;
  }
  const std::size_t d = ch.dim();
  std::vector<std::uint32_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::uint32_t>> patterns;
  do {
    patterns.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return span_coverage_certifier(ch, patterns, tol, "strictly incoherent");
}

ClassVerdict sio_nonmembership_by_l1(const KrausChannel& ch,
                                     const DensityMatrix& probe, double tol) {
  const double before = l1_coherence(probe);
  const double after = l1_coherence(apply(ch, probe));
  ClassVerdict v;
  v.metric = after - before;
  if (after > before + tol) {
    v.verdict = Verdict::NonMember;
    v.detail = "l1 coherence increases from " + fmt(before) + " to " + fmt(after) +
               "; strictly incoherent operations cannot increase it";
  } else {
    v.verdict = Verdict::Inconclusive;
    v.detail = "l1 coherence does not increase on this probe";
  }
  return v;
}

KrausChannel single_qubit_pattern_split(const KrausChannel& ch, double rank_cutoff) {
  if (ch.n_qubits() != 1)
    throw std::invalid_argument("pattern split is defined for single-qubit channels");
  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& k : canonical_kraus(ch, rank_cutoff)) {
    ComplexMatrix diag(2), anti(2);
    diag(0, 0) = k(0, 0);
    diag(1, 1) = k(1, 1);
    anti(0, 1) = k(0, 1);
    anti(1, 0) = k(1, 0);
    if (diag.max_abs() > 0.0) ops.push_back(std::move(diag));
    if (anti.max_abs() > 0.0) ops.push_back(std::move(anti));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix(2));
  return KrausChannel(1, std::move(ops));
}

HierarchyReport hierarchy_report(const KrausChannel& ch, double tol) {
  HierarchyReport rep;
  rep.hdp = is_hdp(ch, tol);
  rep.dio = is_dio(ch, tol);

  rep.sio = is_sio_decomposition(ch, tol);
  if (rep.sio.verdict != Verdict::MemberByDecomposition) {
    if (rep.dio.verdict == Verdict::NonMember) {
      // containment: strictly incoherent operations are dephasing covariant
      rep.sio.verdict = Verdict::NonMember;
      rep.sio.detail = "not dephasing covariant, hence not strictly incoherent";
      rep.sio.metric = rep.dio.metric;
    } else {
      // Try cheap l1 witnesses before the span certificate.
      const std::size_t d = ch.dim();
      ClassVerdict l1;
      for (std::size_t x = 0; x < d && l1.verdict != Verdict::NonMember; ++x)
        for (std::size_t y = x + 1; y < d; ++y) {
          ComplexMatrix m(d);
          m(x, x) = 0.5;
          m(y, y) = 0.5;
          m(x, y) = 0.5;
          m(y, x) = 0.5;
          l1 = sio_nonmembership_by_l1(ch, DensityMatrix(ch.n_qubits(), m), tol);
          if (l1.verdict == Verdict::NonMember) break;
        }
      if (l1.verdict == Verdict::NonMember)
        rep.sio = l1;
      else if (ClassVerdict span = sio_nonmembership_certifier(ch, tol);
               span.verdict == Verdict::NonMember)
        rep.sio = span;
    }
  }

  rep.shp = is_shp_decomposition(ch, tol);
  if (rep.shp.verdict != Verdict::MemberByDecomposition) {
    if (rep.hdp.verdict == Verdict::NonMember) {
      // containment: selective preservation implies the Choi condition
      rep.shp.verdict = Verdict::NonMember;
      rep.shp.detail = "changes Hamming distances, hence no selective "
                       "decomposition exists";
      rep.shp.violation = rep.hdp.violation;
    } else if (rep.sio.verdict == Verdict::NonMember) {
      rep.shp.verdict = Verdict::NonMember;
      rep.shp.detail = "not strictly incoherent, hence not selectively "
                       "Hamming distance preserving";
    } else if (ch.n_qubits() == 1 && rep.hdp.verdict == Verdict::Member) {
      // In one qubit the split of the canonical Kraus set realizes the
      // same channel with pattern-form operators.
      const KrausChannel split = single_qubit_pattern_split(ch);
      if (channels_equal(ch, split, std::max(tol, 1e-9)) &&
          is_shp_decomposition(split, tol).verdict == Verdict::MemberByDecomposition) {
        rep.shp.verdict = Verdict::Member;
        rep.shp.detail = "diagonal/antidiagonal split of the canonical Kraus set "
                         "realizes the channel with pattern-form operators";
      }
    }
    if (rep.shp.verdict == Verdict::Inconclusive) {
      if (ClassVerdict span = shp_nonmembership_certifier(ch, tol);
          span.verdict == Verdict::NonMember)
        rep.shp = span;
    }
  }

  const bool hdp = rep.hdp.verdict == Verdict::Member;
  const bool dio = rep.dio.verdict == Verdict::Member;
  const bool sio_in = rep.sio.is_member();
  const bool sio_out = rep.sio.verdict == Verdict::NonMember;
  const bool shp_in = rep.shp.is_member();
  const bool shp_out = rep.shp.verdict == Verdict::NonMember;

  if (!dio)
    rep.region = "outside DIO";
  else if (shp_in)
    rep.region = "SHP";
  else if (hdp && sio_in)
    rep.region = shp_out ? "(SIO&HDP)\\SHP" : "SIO&HDP, SHP undetermined";
  else if (hdp && sio_out)
    rep.region = "HDP\\SIO";
  else if (hdp)
    rep.region = "HDP, SIO undetermined";
  else if (sio_in)
    rep.region = "SIO\\HDP";
  else if (sio_out)
    rep.region = "DIO\\(SIO|HDP)";
  else
    rep.region = "DIO, finer region undetermined";
  return rep;
}

}  // namespace deqfi
