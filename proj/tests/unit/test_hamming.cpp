#include "doctest.h"

#include <algorithm>
#include <random>

#include "deqfi/hamming.hpp"

using namespace deqfi;

TEST_CASE("hamming distance basics") {
  CHECK(hamming_distance(2, 3, 3) == 0);
  CHECK(hamming_distance(2, 0, 3) == 2);
  CHECK(hamming_distance(2, 0, 1) == 1);
  CHECK(hamming_distance(3, 1, 6) == 3);  // 001 xor 110 = 111
  CHECK_THROWS_AS(hamming_distance(2, 4, 0), std::invalid_argument);
}

TEST_CASE("enumeration sizes and membership") {
  CHECK(enumerate_hdf(1).size() == 2);
  CHECK(enumerate_hdf(2).size() == 8);
  CHECK(enumerate_hdf(3).size() == 48);
  CHECK(enumerate_hdf(4).size() == 384);
  for (const auto& f : enumerate_hdf(3)) CHECK(is_hdf(f.table, 3));
  CHECK_THROWS_AS(enumerate_hdf(5), std::invalid_argument);

  // n = 1: identity and bit flip, in that order
  const auto one = enumerate_hdf(1);
  CHECK(one[0].table == std::vector<std::uint32_t>{0, 1});
  CHECK(one[1].table == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("is_hdf accepts masks and rejects a distance changer") {
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<std::uint32_t> table(8);
    for (std::uint32_t x = 0; x < 8; ++x) table[x] = x ^ mask;
    CHECK(is_hdf(table, 3));
  }
  // 2 <-> 3 exchange: h(1,2) = 2 but h(1,3) = 1
  CHECK(!is_hdf({0, 1, 3, 2}, 2));
  CHECK_THROWS_AS(is_hdf({0, 0, 1, 2}, 2), std::invalid_argument);
}

TEST_CASE("factorization reads off mask and reorder") {
  const auto [m0, r0] = factor_hdf({0, 1, 2, 3}, 2);
  CHECK(m0 == 0);
  CHECK(r0 == std::vector<int>{0, 1});

  // bit swap: x1 x0 -> x0 x1
  const auto [m1, r1] = factor_hdf({0, 2, 1, 3}, 2);
  CHECK(m1 == 0);
  CHECK(r1 == std::vector<int>{1, 0});

  // full flip q_3
  const auto [m2, r2] = factor_hdf({3, 2, 1, 0}, 2);
  CHECK(m2 == 3);
  CHECK(r2 == std::vector<int>{0, 1});

  CHECK_THROWS_AS(factor_hdf({0, 1, 3, 2}, 2), std::invalid_argument);
}

TEST_CASE("factorization round-trips over the full enumeration") {
  for (int n : {1, 2, 3}) {
    for (const auto& f : enumerate_hdf(n)) {
      const auto [mask, reorder] = factor_hdf(f.table, n);
      CHECK(mask == f.mask);
      CHECK(reorder == f.reorder);
      CHECK(make_hdf(n, mask, reorder).table == f.table);
    }
  }
}

TEST_CASE("closure under composition and inverse") {
  std::mt19937_64 rng(53);
  const auto all = enumerate_hdf(3);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 25; ++t) {
    const auto& f = all[pick(rng)];
    const auto& g = all[pick(rng)];
    std::vector<std::uint32_t> comp(8), inv(8);
    for (std::uint32_t x = 0; x < 8; ++x) {
      comp[x] = f.table[g.table[x]];
      inv[f.table[x]] = x;
    }
    CHECK(is_hdf(comp, 3));
    CHECK(is_hdf(inv, 3));
  }
}

TEST_CASE("images preserve weight relative to the image of zero") {
  for (const auto& f : enumerate_hdf(3))
    for (std::uint32_t x = 0; x < 8; ++x)
      CHECK(hamming_distance(3, f.table[x], f.table[0]) ==
            hamming_distance(3, x, 0));
}

TEST_CASE("canonical order is mask-major and deterministic") {
  const auto a = enumerate_hdf(2);
  const auto b = enumerate_hdf(2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].table == b[i].table);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].mask <= a[i].mask);
  CHECK(a.front().mask == 0);
  CHECK(a.back().mask == 3);
}
