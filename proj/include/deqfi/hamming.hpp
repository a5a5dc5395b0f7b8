#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace deqfi {

/// Hamming distance between two n-bit strings; arguments must lie in
/// [0, 2^n). Bit m of a string is the coefficient of 2^m.
int hamming_distance(int n_bits, std::uint32_t x, std::uint32_t y);

/// A bijection on n-bit strings preserving all pairwise Hamming distances,
/// stored with its unique factorization table[x] = mask ^ reorder(x) where
/// reorder moves input bit j to output bit reorder[j].
struct HDFunction {
  int n = 0;
  std::vector<std::uint32_t> table;
  std::uint32_t mask = 0;
  std::vector<int> reorder;

  std::uint32_t operator()(std::uint32_t x) const { return table[x]; }
};

/// Applies a bit reorder: output bit reorder[j] = input bit j.
std::uint32_t apply_reorder(const std::vector<int>& reorder, std::uint32_t x);

HDFunction make_hdf(int n, std::uint32_t mask, std::vector<int> reorder);

/// True iff the table preserves the Hamming distance of every ordered
/// pair. Throws if the table is not a bijection on [0, 2^n).
bool is_hdf(const std::vector<std::uint32_t>& table, int n);

/// Unique (mask, reorder) with table = mask ^ reorder(.). Throws if the
/// table is not Hamming distance preserving.
std::pair<std::uint32_t, std::vector<int>> factor_hdf(
    const std::vector<std::uint32_t>& table, int n);

/// All 2^n n! Hamming distance preserving functions, mask-major, reorders
/// in lexicographic order of the bit-position vector.
std::vector<HDFunction> enumerate_hdf(int n);

}  // namespace deqfi
