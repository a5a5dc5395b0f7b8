#include "deqfi/channels.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "deqfi/eigen.hpp"
#include "deqfi/kernels.hpp"

namespace deqfi {

namespace {

std::size_t dim_for(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 15)
    throw std::invalid_argument("unsupported qubit count");
  return std::size_t(1) << n_qubits;
}

std::vector<double> damping_profile(int n, double theta, bool derivative) {
  const std::size_t d = std::size_t(1) << n;
  std::vector<double> factor(std::size_t(n) + 1);
  for (int h = 0; h <= n; ++h)
    factor[h] = derivative ? -double(h) * std::exp(-double(h) * theta)
                           : std::exp(-double(h) * theta);
  std::vector<double> s(d * d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      s[x * d + y] = factor[std::popcount(x ^ y)];
  return s;
}

}  // namespace

KrausChannel::KrausChannel(int n_qubits, std::vector<ComplexMatrix> kraus)
    : n_qubits_(n_qubits), kraus_(std::move(kraus)) {
  const std::size_t d = dim_for(n_qubits);
  if (kraus_.empty())
    throw std::invalid_argument("channel needs at least one Kraus operator");
  for (const auto& k : kraus_) {
    if (k.dim() != d)
      throw std::invalid_argument("Kraus operator dimension mismatch");
    if (!k.is_finite())
      throw std::invalid_argument("Kraus operator has non-finite entries");
  }
}

ChoiMatrix::ChoiMatrix(int n_qubits, ComplexMatrix mat)
    : n_qubits_(n_qubits), mat_(std::move(mat)) {
  const std::size_t d = dim_for(n_qubits);
  if (mat_.dim() != d * d)
    throw std::invalid_argument("Choi matrix dimension mismatch");
}

std::size_t ChoiMatrix::channel_dim() const { return dim_for(n_qubits_); }

cd ChoiMatrix::block_entry(std::size_t i, std::size_t j,
                           std::size_t x, std::size_t y) const {
  const std::size_t d = channel_dim();
  return mat_(x * d + i, y * d + j);
}

ComplexMatrix apply_matrix(const KrausChannel& ch, const ComplexMatrix& m) {
  if (m.dim() != ch.dim())
    throw std::invalid_argument("state dimension does not match channel");
  ComplexMatrix out(m.dim());
  for (const auto& k : ch.kraus()) {
    ComplexMatrix t = k * m;
    ComplexMatrix kt = t * k.adjoint();
    out += kt;
  }
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(rho.n_qubits(), apply_matrix(ch, rho.mat()));
}

ComplexMatrix pd_apply_matrix(int n_qubits, double theta, const ComplexMatrix& m) {
  if (theta < 0.0)
    throw std::invalid_argument("phase damping strength must be nonnegative");
  if (m.dim() != dim_for(n_qubits))
    throw std::invalid_argument("state dimension does not match qubit count");
  const std::vector<double> s = damping_profile(n_qubits, theta, false);
  ComplexMatrix out = m;
  kernels::cscale_real(out.size(), s.data(), out.data());
  return out;
}

DensityMatrix pd_channel_apply(int n_qubits, double theta, const DensityMatrix& rho) {
  return DensityMatrix(n_qubits, pd_apply_matrix(n_qubits, theta, rho.mat()));
}

ComplexMatrix pd_derivative(int n_qubits, double theta, const DensityMatrix& rho) {
  if (theta < 0.0)
    throw std::invalid_argument("phase damping strength must be nonnegative");
  const std::vector<double> s = damping_profile(n_qubits, theta, true);
  ComplexMatrix out = rho.mat();
  kernels::cscale_real(out.size(), s.data(), out.data());
  return out;
}

KrausChannel pd_kraus_channel(int n_qubits, double theta) {
  if (theta < 0.0)
    throw std::invalid_argument("phase damping strength must be nonnegative");
  const std::size_t d = dim_for(n_qubits);
  const double a = 0.5 * (1.0 + std::exp(-theta));
  const double b = 0.5 * (1.0 - std::exp(-theta));
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (std::size_t z = 0; z < d; ++z) {
    const int w = std::popcount(z);
    const double coef =
        std::sqrt(std::pow(a, double(n_qubits - w)) * std::pow(b, double(w)));
    ComplexMatrix k(d);
    for (std::size_t x = 0; x < d; ++x)
      k(x, x) = (std::popcount(z & x) % 2 == 0) ? coef : -coef;
    ops.push_back(std::move(k));
  }
  return KrausChannel(n_qubits, std::move(ops));
}

KrausChannel cd_channel(int n_qubits) {
  const std::size_t d = dim_for(n_qubits);
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix k(d);
    k(i, i) = 1.0;
    ops.push_back(std::move(k));
  }
  return KrausChannel(n_qubits, std::move(ops));
}

ChoiMatrix choi_of(const KrausChannel& ch) {
  const std::size_t d = ch.dim();
  ComplexMatrix j(d * d);
  // J[(x,i),(y,j)] = sum_l K_l[i,x] conj(K_l[j,y])
  for (const auto& k : ch.kraus()) {
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t i = 0; i < d; ++i) {
        const cd left = k(i, x);
        if (left == cd(0.0, 0.0)) continue;
        cd* row = j.data() + (x * d + i) * d * d;
        for (std::size_t y = 0; y < d; ++y)
          for (std::size_t jj = 0; jj < d; ++jj)
            row[y * d + jj] += left * std::conj(k(jj, y));
      }
  }
  return ChoiMatrix(ch.n_qubits(), std::move(j));
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tol) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("channels act on different qubit counts");
  return ComplexMatrix::distance(choi_of(a).mat(), choi_of(b).mat()) <= tol;
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("channels act on different qubit counts");
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ops.push_back(ka * kb);
  return KrausChannel(a.n_qubits(), std::move(ops));
}

bool trace_preserving(const KrausChannel& ch, double tol) {
  const std::size_t d = ch.dim();
  ComplexMatrix sum(d);
  for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
  sum -= ComplexMatrix::identity(d);
  return sum.max_abs() <= tol;
}

bool validate_cptp(const KrausChannel& ch, double tol) {
  if (!trace_preserving(ch, tol)) return false;
  return min_eigenvalue(choi_of(ch).mat()) >= -tol;
}

int minimal_qubits(NamedChannel which) {
  switch (which) {
    case NamedChannel::W:
    case NamedChannel::N:
    case NamedChannel::USio:
      return 2;
    case NamedChannel::R:
      return 3;
    case NamedChannel::VSwap:
      return 2;
    case NamedChannel::Z:
    case NamedChannel::UPhase:
      return 1;
  }
  throw std::invalid_argument("unknown channel name");
}

KrausChannel named_channel(NamedChannel which, int n_qubits, double phi) {
  const std::size_t d = dim_for(n_qubits);
  const double rt2 = std::sqrt(2.0);
  const double rt3 = std::sqrt(3.0);
  const double rt6 = std::sqrt(6.0);
  std::vector<ComplexMatrix> ops;

  switch (which) {
    case NamedChannel::W: {
      if (n_qubits < 2) throw std::invalid_argument("W needs at least 2 qubits");
      const double b = 1.0 / (2.0 * rt2);
      ComplexMatrix w0(d), w1(d), w2(d), w3(d);
      w0(0, 1) = 0.5; w0(1, 0) = b;  w0(2, 0) = b;
      w1(1, 1) = 0.5; w1(0, 0) = b;  w1(3, 0) = b;
      w2(2, 1) = 0.5; w2(0, 0) = b;  w2(3, 0) = -b;
      w3(3, 1) = 0.5; w3(1, 0) = b;  w3(2, 0) = -b;
      ComplexMatrix w4 = ComplexMatrix::identity(d);
      w4(0, 0) = 0.0;
      w4(1, 1) = 0.0;
      ops = {w0, w1, w2, w3, w4};
      break;
    }
    case NamedChannel::R: {
      if (n_qubits < 3) throw std::invalid_argument("R needs at least 3 qubits");
      const double s = 1.0 / rt2;
      ComplexMatrix r0(d), r1(d), r2(d), r3(d);
      r0(0, 0) = s;   r0(2, 1) = 0.5; r0(3, 6) = 0.5;
      r1(6, 0) = s;   r1(2, 1) = 0.5; r1(3, 6) = -0.5;
      r2(1, 1) = 0.5; r2(6, 6) = 0.5; r2(7, 7) = s;
      r3(4, 1) = 0.5; r3(3, 6) = -0.5; r3(7, 7) = s;
      ComplexMatrix r4 = ComplexMatrix::identity(d);
      for (std::size_t i : {std::size_t(0), std::size_t(1), std::size_t(6), std::size_t(7)})
        r4(i, i) = 0.0;
      ops = {r0, r1, r2, r3, r4};
      break;
    }
    case NamedChannel::N: {
      if (n_qubits < 2) throw std::invalid_argument("N needs at least 2 qubits");
      const double a = 1.0 / (2.0 * rt3);
      ComplexMatrix n0(d), n1(d), n2(d), n3(d);
      n0(0, 1) = 0.5;
      n0(1, 0) = a; n0(2, 0) = -a; n0(3, 0) = a;
      n1(0, 0) = a; n1(0, 2) = 1.0 / rt2; n1(0, 3) = 1.0 / rt6;
      n1(1, 1) = 0.5; n1(2, 0) = a; n1(3, 0) = a;
      n2(0, 0) = a; n2(0, 2) = -1.0 / rt2; n2(0, 3) = 1.0 / rt6;
      n2(1, 0) = a; n2(2, 1) = 0.5; n2(3, 0) = -a;
      n3(0, 0) = a; n3(0, 3) = -rt6 / 3.0;
      n3(1, 0) = -a; n3(2, 0) = -a; n3(3, 1) = 0.5;
      ops = {n0, n1, n2, n3};
      if (d > 4) {
        ComplexMatrix n4 = ComplexMatrix::identity(d);
        for (std::size_t i = 0; i < 4; ++i) n4(i, i) = 0.0;
        ops.push_back(std::move(n4));
      }
      break;
    }
    case NamedChannel::Z: {
      if (n_qubits != 1) throw std::invalid_argument("Z is a single-qubit channel");
      ComplexMatrix z0(2), z1(2), z2(2), z3(2);
      z0(0, 0) = 0.5; z0(1, 1) = 0.5;
      z1(0, 1) = 0.5; z1(1, 0) = 0.5;
      z2(0, 0) = 0.5; z2(0, 1) = 0.5;
      z3(1, 0) = 0.5; z3(1, 1) = -0.5;
      ops = {z0, z1, z2, z3};
      break;
    }
    case NamedChannel::USio: {
      if (n_qubits < 2) throw std::invalid_argument("the exchange unitary needs at least 2 qubits");
      ComplexMatrix u = ComplexMatrix::identity(d);
      u(2, 2) = 0.0;
      u(3, 3) = 0.0;
      u(2, 3) = 1.0;
      u(3, 2) = 1.0;
      ops = {u};
      break;
    }
    case NamedChannel::VSwap: {
      if (n_qubits != 2) throw std::invalid_argument("V acts on exactly 2 qubits");
      ComplexMatrix v(4);
      v(0, 1) = 1.0;
      v(1, 0) = 1.0;
      v(2, 3) = 1.0;
      v(3, 2) = 1.0;
      ops = {v};
      break;
    }
    case NamedChannel::UPhase: {
      if (n_qubits != 1) throw std::invalid_argument("the phase unitary is single-qubit");
      ComplexMatrix u(2);
      u(0, 0) = 1.0;
      u(1, 1) = std::exp(cd(0.0, -phi));
      ops = {u};
      break;
    }
  }
  return KrausChannel(n_qubits, std::move(ops));
}

}  // namespace deqfi
