#include <doctest.h>

#include <array>

#include "ovkit/core/errors.hpp"
#include "ovkit/oracle.hpp"

using namespace ovkit;

namespace {

VectorFamily cube(std::size_t d) {
  VectorFamily f(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    BitVector x(d);
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) x.set(i);
    f.push_back(x);
  }
  return f;
}

}  // namespace

TEST_CASE("orthogonal pair counts on the full cube") {
  // Each coordinate independently takes one of the three patterns 00, 01, 10.
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto f = cube(d);
    BigInt expected = 1;
    for (std::size_t i = 0; i < d; ++i) expected *= 3;
    CHECK(oracle::brute_count_ov(f, f) == expected);
  }
}

TEST_CASE("k-tuple counts on the full cube") {
  const auto f = cube(3);
  for (std::size_t k = 2; k <= 4; ++k) {
    std::vector<VectorFamily> families(k, f);
    BigInt per_coord = (BigInt(1) << static_cast<mp_bitcnt_t>(k)) - 1;
    BigInt expected = per_coord * per_coord * per_coord;
    CHECK(oracle::brute_count_kov(families) == expected);
  }
  std::array<VectorFamily, 2> pair{f, f};
  CHECK(oracle::brute_count_kov(pair) == oracle::brute_count_ov(f, f));
}

TEST_CASE("hand-sized examples") {
  VectorFamily a(4), b(4);
  a.push_back(BitVector::from_string("1100"));
  a.push_back(BitVector::from_string("0011"));
  b.push_back(BitVector::from_string("0010"));
  b.push_back(BitVector::from_string("1111"));
  b.push_back(BitVector::from_string("0000"));
  CHECK(oracle::brute_count_ov(a, b) == 3);
  CHECK(oracle::brute_max_ip(a, b) == 2);
  CHECK(oracle::slow_inner_product(a[0], b[1]) == 2);
  CHECK(oracle::brute_satisfying_pair(a, b, [](const BitVector& x, const BitVector& y) {
    return oracle::slow_inner_product(x, y) >= 2;
  }));
  CHECK_FALSE(oracle::brute_satisfying_pair(a, b, [](const BitVector& x, const BitVector& y) {
    return oracle::slow_inner_product(x, y) >= 3;
  }));
  CHECK(oracle::brute_max_ip(cube(5), cube(5)) == 5);
  CHECK(oracle::brute_count_ov(VectorFamily(4), b) == 0);
}

TEST_CASE("minimal proof oracle") {
  const std::vector<std::uint32_t> w{2, 0, 2, 3, 1};
  const auto proofs = oracle::brute_min_proofs(w, 4);
  const std::vector<std::vector<std::size_t>> expected{{0, 2}, {0, 3}, {2, 3}, {3, 4}};
  CHECK(proofs == expected);
  CHECK(oracle::brute_min_proofs(w, 100).empty());
  CHECK(oracle::brute_min_proofs(std::vector<std::uint32_t>{0, 0}, 0).empty());
  CHECK_THROWS_AS(oracle::brute_min_proofs(std::vector<std::uint32_t>(21, 1), 3), ResourceLimit);
}
