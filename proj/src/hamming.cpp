#include "deqfi/hamming.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace deqfi {

namespace {

std::uint32_t domain_size(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("unsupported bit count");
  return std::uint32_t(1) << n;
}

void check_bijection(const std::vector<std::uint32_t>& table, std::uint32_t d) {
  if (table.size() != d)
    throw std::invalid_argument("table size is not 2^n");
  std::vector<bool> seen(d, false);
  for (std::uint32_t v : table) {
    if (v >= d || seen[v])
      throw std::invalid_argument("table is not a bijection on n-bit strings");
    seen[v] = true;
  }
}

}  // namespace

int hamming_distance(int n_bits, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t d = domain_size(n_bits);
  if (x >= d || y >= d)
    throw std::invalid_argument("string out of range for bit count");
  return std::popcount(x ^ y);
}

std::uint32_t apply_reorder(const std::vector<int>& reorder, std::uint32_t x) {
  std::uint32_t out = 0;
  for (std::size_t j = 0; j < reorder.size(); ++j)
    if (x & (std::uint32_t(1) << j)) out |= std::uint32_t(1) << reorder[j];
  return out;
}

HDFunction make_hdf(int n, std::uint32_t mask, std::vector<int> reorder) {
  const std::uint32_t d = domain_size(n);
  if (mask >= d) throw std::invalid_argument("mask out of range");
  if (reorder.size() != std::size_t(n))
    throw std::invalid_argument("reorder length mismatch");
  std::vector<bool> seen(n, false);
  for (int p : reorder) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("reorder is not a permutation of bit positions");
    seen[p] = true;
  }
  HDFunction f;
  f.n = n;
  f.mask = mask;
  f.reorder = std::move(reorder);
  f.table.resize(d);
  for (std::uint32_t x = 0; x < d; ++x)
    f.table[x] = mask ^ apply_reorder(f.reorder, x);
  return f;
}

bool is_hdf(const std::vector<std::uint32_t>& table, int n) {
  const std::uint32_t d = domain_size(n);
  check_bijection(table, d);
  for (std::uint32_t x = 0; x < d; ++x)
    for (std::uint32_t y = x + 1; y < d; ++y)
      if (std::popcount(x ^ y) != std::popcount(table[x] ^ table[y]))
        return false;
  return true;
}

std::pair<std::uint32_t, std::vector<int>> factor_hdf(
    const std::vector<std::uint32_t>& table, int n) {
  if (!is_hdf(table, n))
    throw std::invalid_argument("table is not Hamming distance preserving");
  const std::uint32_t mask = table[0];
  // reorder(2^j) must be a unit string; read the target position off the
  // image of each unit string.
  std::vector<int> reorder(n);
  for (int j = 0; j < n; ++j) {
    const std::uint32_t image = table[std::uint32_t(1) << j] ^ mask;
    if (std::popcount(image) != 1)
      throw std::invalid_argument("table has no mask/reorder factorization");
    reorder[j] = std::countr_zero(image);
  }
  const HDFunction rebuilt = make_hdf(n, mask, reorder);
  if (rebuilt.table != table)
    throw std::invalid_argument("table has no mask/reorder factorization");
  return {mask, reorder};
}

std::vector<HDFunction> enumerate_hdf(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("enumeration supported for 1 <= n <= 4");
  const std::uint32_t d = std::uint32_t(1) << n;
  std::vector<HDFunction> out;
  out.reserve(std::size_t(d) * [n] {
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  }());
  for (std::uint32_t mask = 0; mask < d; ++mask) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      out.push_back(make_hdf(n, mask, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace deqfi
