#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "ovkit/core/combinatorics.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/f2matrix.hpp"
#include "ovkit/f2poly.hpp"

using namespace ovkit;

namespace {

F2Matrix naive_product(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool bit = false;
      for (std::size_t k = 0; k < a.cols(); ++k) bit ^= a.get(i, k) && b.get(k, j);
      c.set(i, j, bit);
    }
  return c;
}

BitVector vector_of_mask(std::size_t d, std::uint64_t mask) {
  BitVector x(d);
  for (std::size_t i = 0; i < d; ++i)
    if (mask >> i & 1u) x.set(i);
  return x;
}

}  // namespace

TEST_CASE("GF(2) products match the naive triple loop") {
  SeededRng rng(1);
  const auto a = F2Matrix::random(32, 48, rng);
  const auto b = F2Matrix::random(48, 32, rng);
  CHECK(f2_matmul(a, b) == naive_product(a, b));
  CHECK(f2_matmul(F2Matrix::identity(32), a) == a);
  CHECK(f2_matmul(a, F2Matrix::identity(48)) == a);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t r = 1 + rng.uniform_below(70), k = 1 + rng.uniform_below(140), c = 1 + rng.uniform_below(90);
    const auto x = F2Matrix::random(r, k, rng);
    const auto y = F2Matrix::random(k, c, rng);
    const auto expected = naive_product(x, y);
    CHECK(f2_matmul(x, y) == expected);
    CHECK(f2_matmul(x, y, 3) == expected);
    CHECK(f2_matmul_tn(x.transpose(), y) == expected);
    CHECK(f2_matmul_tn(x.transpose(), y, 4) == expected);
    const auto z = F2Matrix::random(c, 1 + rng.uniform_below(50), rng);
    CHECK(f2_matmul(f2_matmul(x, y), z) == f2_matmul(x, f2_matmul(y, z)));
  }
  CHECK_THROWS_AS(f2_matmul(a, a), InvalidArgument);
  CHECK_THROWS_AS(f2_matmul_tn(a, b), InvalidArgument);
  CHECK(a.transpose().transpose() == a);
}

TEST_CASE("random matrices keep tail bits clear") {
  SeededRng rng(3);
  const auto m = F2Matrix::random(5, 70, rng);
  for (std::size_t r = 0; r < 5; ++r) CHECK((m.row(r)[1] >> 6) == 0);
}

TEST_CASE("hand-expanded polynomials") {
  const std::vector<std::uint64_t> one{0b1};
  CHECK(expand_disj_poly(one) == std::vector<std::uint64_t>{0, 0b1});
  const std::vector<std::uint64_t> twice{0b1, 0b1};
  CHECK(expand_disj_poly(twice) == std::vector<std::uint64_t>{0, 0b1});
  // (1 + z0 + z1)(1 + z1): z1 arises three times (z1 z1 = z1), z0 z1 once.
  const std::vector<std::uint64_t> mixed{0b11, 0b10};
  CHECK(expand_disj_poly(mixed) == std::vector<std::uint64_t>{0, 0b1, 0b10, 0b11});
  // (1 + z0)^2 = 1 + z0, so repeating a factor changes nothing.
  const std::vector<std::uint64_t> three{0b01, 0b10, 0b01};
  CHECK(expand_disj_poly(three) == std::vector<std::uint64_t>{0, 0b1, 0b10, 0b11});
  const std::vector<std::uint64_t> empty_factor{0};
  CHECK(expand_disj_poly(empty_factor) == std::vector<std::uint64_t>{0});
}

TEST_CASE("factored and expanded forms agree exhaustively") {
  SeededRng rng(10);
  for (std::size_t d = 1; d <= 10; ++d)
    for (const std::size_t level : {1, 2, 3, 5}) {
      const auto p = sample_disj_poly(d, level, rng);
      REQUIRE(!p.monomials.empty());
      CHECK(p.monomials.front() == 0);
      CHECK(BigInt(static_cast<unsigned long>(p.rank())) <= binomial_prefix_sum(d, std::min(d, level)));
      for (std::size_t j = 0; j < p.monomials.size(); ++j) {
        CHECK(static_cast<std::size_t>(std::popcount(p.monomials[j])) <= level);
        CHECK((p.monomials[j] >> d) == 0);
      }
      CHECK(std::adjacent_find(p.monomials.begin(), p.monomials.end()) == p.monomials.end());
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << d); ++z) {
        REQUIRE(eval_factored(p, z) == eval_expanded(p, z));
        REQUIRE(eval_disj_poly(p, vector_of_mask(d, z)) == eval_factored(p, z));
      }
      CHECK(eval_disj_poly(p, BitVector(d)));
    }
}

TEST_CASE("error rate on a nonzero input is 2^-L") {
  for (const std::size_t level : {3, 7}) {
    SeededRng rng(level);
    const int samples = level == 7 ? 1000 : 4000;
    int ones = 0;
    for (int s = 0; s < samples; ++s) ones += eval_disj_poly(sample_disj_poly(16, level, rng), vector_of_mask(16, 0b10));
    const double p = std::ldexp(1.0, -static_cast<int>(level));
    const double rate = static_cast<double>(ones) / samples;
    CHECK(rate <= p + 3 * std::sqrt(p * (1 - p) / samples) + 1e-9);
  }
}

TEST_CASE("feature maps") {
  SeededRng rng(4);
  const auto p = sample_disj_poly(8, 4, rng);
  CHECK(phi_x(p, BitVector::ones(8)).popcount() == p.rank());
  const auto at_zero = phi_x(p, BitVector(8));
  CHECK(at_zero.popcount() == 1);
  CHECK(at_zero.test(0));

  VectorFamily f(8);
  for (int k = 0; k < 70; ++k) f.push_back(vector_of_mask(8, rng.uniform_below(256)));
  const F2Matrix m = feature_matrix(p, f);
  REQUIRE(m.rows() == p.rank());
  REQUIRE(m.cols() == 70);
  for (std::size_t k = 0; k < 70; ++k) {
    const auto phi = phi_y(p, f[k]);
    for (std::size_t j = 0; j < p.rank(); ++j) REQUIRE(m.get(j, k) == phi.test(j));
  }
}

TEST_CASE("inner product identity holds for all pairs at d = 6") {
  SeededRng rng(77);
  for (int sample = 0; sample < 20; ++sample) {
    const auto p = sample_disj_poly(6, 3, rng);
    for (std::uint64_t x = 0; x < 64; ++x) {
      const auto fx = phi_x(p, vector_of_mask(6, x));
      for (std::uint64_t y = 0; y < 64; ++y) {
        const auto fy = phi_y(p, vector_of_mask(6, y));
        REQUIRE((inner_product(fx, fy) % 2 == 1) == eval_factored(p, x & y));
      }
    }
  }
}

TEST_CASE("limits") {
  SeededRng rng(1);
  CHECK_THROWS_AS(sample_disj_poly(65, 2, rng), InvalidArgument);
  CHECK_THROWS_AS(sample_disj_poly(8, 0, rng), InvalidArgument);
  CHECK_THROWS_AS(sample_disj_poly(40, 6, rng, 100), ResourceLimit);
  const auto p = sample_disj_poly(8, 2, rng);
  CHECK_THROWS_AS(eval_disj_poly(p, BitVector(9)), InvalidArgument);
}
