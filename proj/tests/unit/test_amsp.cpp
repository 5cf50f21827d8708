#include <doctest.h>

#include <cmath>
#include <set>

#include "ovkit/amsp.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/oracle.hpp"

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

std::vector<std::vector<std::size_t>> coords_of(const ProofList& proofs) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : proofs) out.push_back(p.coords);
  return out;
}

bool contains(const BitVector& x, const std::vector<std::size_t>& s) {
  for (const auto i : s)
    if (!x.test(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("challenge threshold and weight statistics") {
  SeededRng rng(1);
  const auto c = sample_gap_ip_challenge(16, 8, 5, rng);
  CHECK(c.threshold == Rat(8));
  CHECK(c.min_weight == 8);
  CHECK(c.weights.size() == 16);
  CHECK(make_gap_ip_challenge(3, 7, {0, 0}).threshold == ratio(56, 5));
  CHECK(make_gap_ip_challenge(3, 7, {0, 0}).min_weight == 12);
  CHECK(gap_threshold_factor(Rat(2)) == ratio(8, 5));
  CHECK_THROWS_AS(gap_threshold_factor(Rat(1)), InvalidArgument);

  const std::size_t d = 16, tau = 8, k = 5, trials = 10000;
  double nonzero = 0, sum = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto ch = sample_gap_ip_challenge(d, tau, k, rng);
    for (const auto w : ch.weights) {
      nonzero += w > 0;
      sum += w;
    }
  }
  const double rate = 5.0 / 8.0;
  const double p_nonzero = 1 - std::exp(-rate);
  CHECK(std::abs(nonzero / trials - d * p_nonzero) <= 3 * std::sqrt(d * p_nonzero * (1 - p_nonzero) / trials));
  // The per-challenge sum is Pois(d k / tau).
  CHECK(std::abs(sum / trials - d * rate) <= 3 * std::sqrt(d * rate / trials));

  // tau far above d k leaves almost every weight at zero.
  double heavy = 0;
  for (int t = 0; t < 1000; ++t) heavy += sample_gap_ip_challenge(16, 1000, 5, rng).weights[0] > 0;
  CHECK(heavy / 1000 < 0.02);
}

TEST_CASE("minimal proofs on hand-made challenges") {
  CHECK(enumerate_min_proofs(make_gap_ip_challenge(2, 5, std::vector<std::uint32_t>(8, 0))).empty());

  auto single = std::vector<std::uint32_t>(8, 0);
  single[4] = 8;
  const auto one = enumerate_min_proofs(make_gap_ip_challenge(2, 5, single));
  REQUIRE(one.size() == 1);
  CHECK(one[0].coords == std::vector<std::size_t>{4});
  CHECK(one[0].weight_sum == 8);

  std::vector<std::uint32_t> triple{3, 3, 3, 0, 0, 0, 0, 0};
  const auto c = make_gap_ip_challenge(2, 5, triple);
  const auto proofs = enumerate_min_proofs(c);
  REQUIRE(proofs.size() == 1);
  CHECK(proofs[0].coords == std::vector<std::size_t>{0, 1, 2});
  CHECK(coords_of(proofs) == oracle::brute_min_proofs(triple, c.min_weight));

  // Mixed weights: {5,3} qualifies, so {5,3,1} is not minimal; {3,3,2} is.
  std::vector<std::uint32_t> mixed{5, 3, 3, 2, 1};
  const auto cm = make_gap_ip_challenge(2, 5, mixed);
  CHECK(coords_of(enumerate_min_proofs(cm)) == oracle::brute_min_proofs(mixed, cm.min_weight));
}

TEST_CASE("minimal proofs match the exhaustive oracle on random challenges") {
  SeededRng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 4 + rng.uniform_below(13);
    const std::size_t k = 1 + rng.uniform_below(8);
    const std::size_t tau = 1 + rng.uniform_below(6);
    const auto c = sample_gap_ip_challenge(d, tau, k, rng);
    const auto proofs = enumerate_min_proofs(c);
    REQUIRE(coords_of(proofs) == oracle::brute_min_proofs(c.weights, c.min_weight));
    for (const auto& p : proofs) {
      std::uint64_t sum = 0, lightest = UINT64_MAX;
      for (const auto i : p.coords) {
        REQUIRE(c.weights[i] >= 1);
        sum += c.weights[i];
        lightest = std::min<std::uint64_t>(lightest, c.weights[i]);
      }
      REQUIRE(sum == p.weight_sum);
      REQUIRE(Rat(static_cast<unsigned long>(sum)) >= c.threshold);
      REQUIRE(Rat(static_cast<unsigned long>(sum - lightest)) < c.threshold);
    }
  }
}

TEST_CASE("proof cap and oracle limits") {
  std::vector<std::uint32_t> flat(30, 1);
  const auto c = make_gap_ip_challenge(1, 5, flat);
  CHECK_THROWS_AS(enumerate_min_proofs(c, 1000), ProofSpaceOverflow);
  CHECK_THROWS_AS(enumerate_min_proofs(c, 1000), ResourceLimit);
  CHECK(enumerate_min_proofs(c, 10000000).size() == 5852925);  // C(30, 8)
  CHECK_THROWS_AS(oracle::brute_min_proofs(flat, 8), ResourceLimit);
}

TEST_CASE("restricted enumeration keeps exactly the proofs both sides can accept") {
  SeededRng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_family(12, 14, 0.5, rng);
    const auto b = random_family(12, 14, 0.5, rng);
    const auto c = sample_gap_ip_challenge(14, 3, 4, rng);
    std::vector<std::vector<std::size_t>> expected;
    for (const auto& p : enumerate_min_proofs(c)) {
      bool in_a = false, in_b = false;
      for (const auto& x : a) in_a = in_a || contains(x, p.coords);
      for (const auto& y : b) in_b = in_b || contains(y, p.coords);
      if (in_a && in_b) expected.push_back(p.coords);
    }
    REQUIRE(coords_of(enumerate_min_proofs_restricted(c, a, b)) == expected);
  }
}

TEST_CASE("accept vectors and direct protocol runs agree") {
  SeededRng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 12;
    const auto c = sample_gap_ip_challenge(d, 2, 3, rng);
    const auto proofs = enumerate_min_proofs(c);
    const auto f = random_family(2, d, 0.6, rng);
    const auto ax = accept_vector(f[0], c, proofs);
    const auto ay = accept_vector(f[1], c, proofs);
    REQUIRE((inner_product(ax, ay) > 0) == protocol_accepts(c, f[0], f[1]));
    CHECK(accept_vector(BitVector::ones(d), c, proofs).popcount() == proofs.size());
    CHECK(accept_vector(BitVector(d), c, proofs).none());
  }
}

TEST_CASE("calibration") {
  const SeededRng rng(11);
  std::vector<std::size_t> ks;
  for (const Rat& eps : {ratio(1, 16), ratio(1, 8), ratio(1, 4)}) {
    const std::size_t k = calibrate_k(eps, 8, 64, 2000, rng);
    CHECK(k <= calibration_envelope(eps));
    ks.push_back(k);
    // Fresh challenges: completeness at |X AND Y| = 2 tau.
    SeededRng check(500);
    const auto e = estimate_protocol_errors(64, 8, k, 10000, check);
    const double target = static_cast<double>(to_long_double(eps));
    const double slack = 3 * std::sqrt(target * (1 - target) / 10000);
    CHECK(e.completeness_error <= target + slack);
    CHECK(e.soundness_error <= target + slack);
  }
  CHECK(ks[0] >= ks[1]);
  CHECK(ks[1] >= ks[2]);
  CHECK(calibration_envelope(ratio(1, 8)) == 208);
  CHECK_THROWS_AS(calibrate_k(ratio(1, 4), 8, 64, 999, rng), InvalidArgument);
  CHECK(calibrate_k(ratio(1, 4), 8, 64, 1000, rng) == calibrate_k(ratio(1, 4), 8, 64, 1000, rng));
}

TEST_CASE("grouped product is positive exactly when some member pair accepts a common proof") {
  SeededRng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_family(11, 12, 0.5, rng);
    const auto b = random_family(9, 12, 0.5, rng);
    const GapIpProtocol protocol(2, 3, ratio(1, 4), kDefaultProofCap, trial % 2 == 0);
    SeededRng round_rng = rng.derive(trial);
    const auto round = protocol.draw_round(round_rng, a, b);
    const std::size_t m = 1 + trial % 4;
    const auto ma = grouped_accept_matrix(protocol.accept_lists(round, a), a.size(), m);
    const auto mb = grouped_accept_matrix(protocol.accept_lists(round, b), b.size(), m);
    Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic> votes =
        Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(ma.rows(), mb.rows());
    detail::add_votes(ma, mb, votes);
    for (std::size_t i = 0; i * m < a.size(); ++i)
      for (std::size_t j = 0; j * m < b.size(); ++j) {
        bool any = false;
        for (std::size_t k = i * m; k < std::min(a.size(), (i + 1) * m); ++k)
          for (std::size_t l = j * m; l < std::min(b.size(), (j + 1) * m); ++l)
            any = any || protocol_accepts(round.challenge, a[k], b[l]);
        REQUIRE((votes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 1) == any);
      }
  }
}

TEST_CASE("group size and repetition defaults") {
  CHECK(satisfying_pair_group_size(ratio(1, 4)) == 1);
  CHECK(satisfying_pair_group_size(ratio(1, 400)) == 2);
  CHECK(satisfying_pair_group_size(ratio(1, 10000)) == 10);
  CHECK(satisfying_pair_group_size(ratio(1, 9999)) == 9);
  CHECK(majority_repetitions(128) == 59);
  CHECK(majority_repetitions(1) == 1);
  CHECK(repetitions_for(1, ratio(1, 2), ratio(1, 4)) == 6);
  CHECK_THROWS_AS(repetitions_for(4, ratio(1, 10), ratio(1, 2)), InvalidArgument);
}

TEST_CASE("satisfying pair on gap instances") {
  SeededRng rng(12);
  const Rat eps = ratio(1, 4);
  const std::size_t tau = 8, d = 64, n = 128;
  const std::size_t k = calibrate_k(eps, tau, d, 2000, SeededRng(1));
  const GapIpProtocol protocol(tau, k, eps);
  const std::size_t reps = majority_repetitions(n);
  int correct_no = 0, correct_yes = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    VectorFamily a(d), b(d);
    do {
      a = random_family(n, d, 0.15, rng);
      b = random_family(n, d, 0.15, rng);
    } while (oracle::brute_max_ip(a, b) > tau);
    correct_no += !satisfying_pair(a, b, protocol, eps, reps, rng.derive(2 * run)).answer;

    BitVector x(d), y(d);
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    for (std::size_t i = 0; i < 2 * tau; ++i) std::swap(perm[i], perm[i + rng.uniform_below(d - i)]);
    for (std::size_t i = 0; i < 2 * tau; ++i) {
      x.set(perm[i]);
      y.set(perm[i]);
    }
    a.mutable_at(rng.uniform_below(n)) = x;
    b.mutable_at(rng.uniform_below(n)) = y;
    correct_yes += satisfying_pair(a, b, protocol, eps, reps, rng.derive(2 * run + 1)).answer;
  }
  CHECK(correct_no >= 19);
  CHECK(correct_yes >= 19);
}

TEST_CASE("satisfying pair edge cases") {
  SeededRng rng(13);
  const auto a = random_family(6, 16, 0.5, rng);
  const auto b = random_family(6, 16, 0.5, rng);
  // Group size 100 exceeds n: a single group pair.
  const GapIpProtocol protocol(2, 5, ratio(1, 1000000));
  const auto r = satisfying_pair(a, b, protocol, ratio(1, 1000000), 5, rng);
  CHECK(r.group_size == 100);
  CHECK(r.groups_a == 1);
  CHECK_THROWS_AS(satisfying_pair(a, b, GapIpProtocol(2, 5, ratio(1, 2)), ratio(1, 4), 5, rng), InvalidArgument);

  const GapIpProtocol p4(2, 5, ratio(1, 4));
  const auto one = satisfying_pair(a, b, p4, ratio(1, 4), 21, SeededRng(3), 1);
  const auto three = satisfying_pair(a, b, p4, ratio(1, 4), 21, SeededRng(3), 3);
  CHECK(one.answer == three.answer);
  CHECK(one.max_votes == three.max_votes);
  CHECK(one.repetitions_run == three.repetitions_run);
}

TEST_CASE("max-IP two-approximation") {
  SeededRng rng(14);
  VectorFamily single(64);
  BitVector x(64);
  for (std::size_t i = 0; i < 16; ++i) x.set(3 * i + 1);
  single.push_back(x);
  int held = 0;
  for (int run = 0; run < 10; ++run) {
    const auto r = max_ip_approx(single, single, ratio(1, 20), SeededRng(run));
    held += r.v <= 16 && 16 <= 2 * r.v;
  }
  CHECK(held >= 9);

  VectorFamily left(10), right(10);
  left.push_back(BitVector::from_string("1100000000"));
  right.push_back(BitVector::from_string("0011000000"));
  right.push_back(BitVector::from_string("0000000000"));
  const auto zero = max_ip_approx(left, right, ratio(1, 20), rng);
  CHECK(zero.v == 0);
  CHECK(zero.zero_test);
  CHECK(zero.probes.empty());

  for (int run = 0; run < 5; ++run) {
    const auto a = random_family(32, 24, 0.5, rng);
    const auto b = random_family(32, 24, 0.5, rng);
    const auto r = max_ip_approx(a, b, ratio(1, 20), rng.derive(run));
    const std::size_t exact = oracle::brute_max_ip(a, b);
    CHECK(r.v <= exact);
    CHECK(exact <= 2 * r.v);
    CHECK(r.probes.size() <= r.call_budget);
  }
  CHECK_THROWS_AS(max_ip_approx(left, right, Rat(1), rng), InvalidArgument);
}
