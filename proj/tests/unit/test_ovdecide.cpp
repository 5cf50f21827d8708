#include <doctest.h>

#include <cmath>

#include "ovkit/core/errors.hpp"
#include "ovkit/oracle.hpp"
#include "ovkit/ovdecide.hpp"

using namespace ovkit;

namespace {

VectorFamily random_family(std::size_t n, std::size_t d, double p, SeededRng& rng) {
  VectorFamily f(d);
  for (std::size_t k = 0; k < n; ++k) {
    BitVector x(d);
    for (std::size_t i = 0; i < d; ++i)
      if (rng.bernoulli(p)) x.set(i);
    f.push_back(x);
  }
  return f;
}

// Random families with no orthogonal pair, screened by brute force.
std::pair<VectorFamily, VectorFamily> negative_instance(std::size_t n, std::size_t d, double p, SeededRng& rng) {
  while (true) {
    auto a = random_family(n, d, p, rng);
    auto b = random_family(n, d, p, rng);
    if (oracle::brute_count_ov(a, b) == 0) return {a, b};
  }
}

OvDecideParams fixed_params(std::size_t n, std::size_t level, std::size_t m, std::size_t reps) {
  OvDecideParams p;
  p.eps_exponent = level;
  p.group_size = m;
  p.group_count = (n + m - 1) / m;
  p.repetitions = reps;
  return p;
}

}  // namespace

TEST_CASE("parameter derivation") {
  const auto p = derive_ov_params(1024, 16);
  CHECK(p.eps_exponent == 1);
  CHECK(p.group_size == 1);
  CHECK(p.group_count == 1024);
  CHECK(p.repetitions == static_cast<std::size_t>(std::ceil(1000 * std::log(1024.0))));
  CHECK(derive_ov_params(1024, 16) == p);
  CHECK(derive_ov_params(std::size_t{1} << 40, 40).eps_exponent == 1);
  // C(5, <= 2) = 16 and 16^10 = 2^40 < 26^10 = C(5, <= 3)^10.
  CHECK(derive_ov_params(std::size_t{1} << 40, 5).eps_exponent == 2);
  CHECK(derive_ov_params(std::size_t{1} << 40, 4).eps_exponent == 4);
  CHECK_THROWS_AS(derive_ov_params(1, 4), InvalidArgument);

  CHECK(default_group_size(5) == 1);
  CHECK(default_group_size(9) == 2);
  CHECK(default_group_size(14) == 12);
}

TEST_CASE("admissibility uses the exact per-pair bounds") {
  const auto b5 = group_pair_bounds(5, 1);
  CHECK(b5.false_positive == ratio(1, 128));
  CHECK(b5.true_positive == ratio(31, 128));
  CHECK(b5.admissible);
  CHECK_FALSE(group_pair_bounds(4, 1).admissible);
  CHECK_FALSE(group_pair_bounds(8, 3).admissible);
  CHECK(group_pair_bounds(9, 3).admissible);

  const auto fixed = make_admissible(derive_ov_params(256, 24), 256);
  CHECK(fixed.eps_exponent == 5);
  CHECK(fixed.group_size == 1);
  CHECK(fixed.group_count == 256);

  CHECK_THROWS_AS(validate_ov_params(fixed_params(256, 4, 1, 10), 256), InvalidArgument);
  auto bad_g = fixed_params(256, 5, 1, 10);
  bad_g.group_count = 100;
  CHECK_THROWS_AS(validate_ov_params(bad_g, 256), InvalidArgument);
  CHECK_NOTHROW(validate_ov_params(fixed_params(10, 9, 3, 1), 10));
}

TEST_CASE("product bits equal the direct grouped sum") {
  SeededRng rng(2);
  for (const auto& [level, m] : {std::pair<std::size_t, std::size_t>{9, 3}, {5, 1}, {10, 2}}) {
    const std::size_t n = 10;
    const auto a = random_family(n, 8, 0.5, rng);
    const auto b = random_family(n, 8, 0.5, rng);
    const auto params = fixed_params(n, level, m, 1);
    for (int t = 0; t < 10; ++t) {
      const auto rep = ov_repetition(a, b, params, rng.derive(t));
      REQUIRE(rep.product.rows() == params.group_count);
      for (std::size_t i = 0; i < params.group_count; ++i)
        for (std::size_t j = 0; j < params.group_count; ++j) {
          bool bit = false;
          for (std::size_t k = i * m; k < std::min(n, (i + 1) * m); ++k)
            for (std::size_t l = j * m; l < std::min(n, (j + 1) * m); ++l)
              if (rep.u.test(k - i * m) && rep.v.test(l - j * m))
                bit ^= eval_factored(rep.poly, to_mask(a[k] & b[l]));
          REQUIRE(rep.product.get(i, j) == bit);
        }
    }
  }
}

TEST_CASE("without polynomial errors a negative group pair never fires") {
  SeededRng rng(8);
  const auto [a, b] = negative_instance(24, 12, 0.7, rng);
  const auto params = fixed_params(24, 5, 1, 1);
  std::size_t clean_pairs = 0;
  for (int t = 0; t < 40; ++t) {
    const auto rep = ov_repetition(a, b, params, rng.derive(t));
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = 0; j < 24; ++j) {
        const bool m_error = eval_factored(rep.poly, to_mask(a[i] & b[j]));
        if (!m_error) {
          ++clean_pairs;
          REQUIRE_FALSE(rep.product.get(i, j));
        }
      }
  }
  CHECK(clean_pairs > 0);
}

TEST_CASE("decisions on planted and screened instances") {
  SeededRng rng(31);
  const std::size_t n = 64, d = 16;
  const auto params = fixed_params(n, 5, 1, 100);
  for (int run = 0; run < 5; ++run) {
    auto [a, b] = negative_instance(n, d, 0.6, rng);
    const auto no = ov_decide(a, b, params, rng.derive(100 + run));
    CHECK_FALSE(no.answer);
    CHECK(no.max_counter <= 15);

    // Plant: b[7] becomes a subset of the complement of a[3].
    BitVector y(d);
    for (std::size_t i = 0; i < d; ++i)
      if (!a[3].test(i) && rng.bernoulli(0.6)) y.set(i);
    b.mutable_at(7) = y;
    const auto yes = ov_decide(a, b, params, rng.derive(200 + run));
    CHECK(yes.answer);
    CHECK(yes.counters(3, 7) > 15);
    CHECK(yes.answer == (Rat(yes.max_counter) > params.accept_fraction * Rat(100)));
  }
}

TEST_CASE("ov_decide is deterministic and thread-count independent") {
  SeededRng rng(5);
  const auto a = random_family(40, 12, 0.5, rng);
  const auto b = random_family(40, 12, 0.5, rng);
  const auto params = fixed_params(40, 5, 1, 60);
  const auto one = ov_decide(a, b, params, SeededRng(9), 1);
  const auto again = ov_decide(a, b, params, SeededRng(9), 1);
  const auto four = ov_decide(a, b, params, SeededRng(9), 4);
  CHECK(one.counters == again.counters);
  CHECK(one.counters == four.counters);
  CHECK(one.answer == four.answer);
}

TEST_CASE("input validation") {
  SeededRng rng(1);
  const auto a = random_family(8, 6, 0.5, rng);
  const auto b = random_family(9, 6, 0.5, rng);
  const auto c = random_family(8, 7, 0.5, rng);
  CHECK_THROWS_AS(ov_decide(a, b, fixed_params(8, 5, 1, 1), rng), InvalidArgument);
  CHECK_THROWS_AS(ov_decide(a, c, fixed_params(8, 5, 1, 1), rng), InvalidArgument);
  auto capped = fixed_params(8, 5, 1, 4);
  capped.rank_cap = 2;
  CHECK_THROWS_AS(ov_repetition(a, a, capped, rng), ResourceLimit);
}
