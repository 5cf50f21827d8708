#include "ovkit/ovdecide.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ovkit/core/combinatorics.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/core/parallel.hpp"

namespace ovkit {

namespace {

constexpr std::size_t kMaxLevel = 20;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

BitVector random_bits(std::size_t m, SeededRng& rng) {
  BitVector out(m);
  for (auto& w : out.words()) w = rng.next_u64();
  if (m % 64 != 0) out.words().back() &= (BitVector::Word{1} << (m % 64)) - 1;
  return out;
}

// Row s of the result holds, for every group i, the parity of u_k over the members k
// of group i whose column in `features` has bit s set.
F2Matrix group_reduce(const F2Matrix& features, const BitVector& u, std::size_t m) {
  const std::size_t n = features.cols();
  const std::size_t g = ceil_div(n, m);
  if (m == 1) return features;  // only called with u != 0
  F2Matrix out(features.rows(), g);
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < n; ++k)
    if (u.test(k % m)) members.push_back(k);
  for (std::size_t s = 0; s < features.rows(); ++s) {
    for (const std::size_t k : members)
      if (features.get(s, k)) out.flip(s, k / m);
  }
  return out;
}

void check_inputs(const VectorFamily& a, const VectorFamily& b, const OvDecideParams& params) {
  if (a.dim() != b.dim()) throw InvalidArgument("families must share a dimension");
  if (a.size() != b.size()) throw InvalidArgument("families must have the same size");
  if (a.empty()) throw InvalidArgument("families must be non-empty");
  validate_ov_params(params, a.size());
}

}  // namespace

std::size_t default_group_size(std::size_t level) {
  // floor(sqrt(2^L) / 10) = floor(sqrt(2^L / 100)), computed exactly.
  const std::uint64_t ratio = (std::uint64_t{1} << level) / 100;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(ratio)));
  while (root * root > ratio) --root;
  while ((root + 1) * (root + 1) <= ratio) ++root;
  return std::max<std::size_t>(1, root);
}

GroupPairBounds group_pair_bounds(std::size_t level, std::size_t group_size) {
  if (level == 0 || level > 62) throw InvalidArgument("level must be in [1, 62]");
  if (group_size == 0) throw InvalidArgument("group size must be positive");
  Rat eps(1);
  eps /= Rat(mpz_class(1) << static_cast<mp_bitcnt_t>(level));
  const Rat pairs = Rat(static_cast<unsigned long>(group_size * group_size));
  Rat rank_term(1);
  rank_term /= Rat(mpz_class(1) << static_cast<mp_bitcnt_t>(std::min<std::size_t>(group_size + 1, 4096)));
  GroupPairBounds b;
  b.false_positive = eps * pairs * (ratio(1, 2) - rank_term);
  b.true_positive = (Rat(1) - eps * pairs) / 4;
  b.admissible = b.false_positive <= ratio(1, 100) && b.true_positive >= ratio(24, 100);
  return b;
}

OvDecideParams derive_ov_params(std::size_t n, std::size_t d) {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if (d == 0) throw InvalidArgument("d must be at least 1");
  // C(d, <= L) <= n^0.1  <=>  C(d, <= L)^10 <= n.
  std::size_t level = 0;
  for (std::size_t l = 1; l <= std::min(d, kMaxLevel); ++l) {
    BigInt width = binomial_prefix_sum(d, l);
    mpz_pow_ui(width.get_mpz_t(), width.get_mpz_t(), 10);
    if (width > BigInt(static_cast<unsigned long>(n))) break;
    level = l;
  }
  OvDecideParams p;
  p.eps_exponent = std::clamp<std::size_t>(level, 1, kMaxLevel);
  p.group_size = default_group_size(p.eps_exponent);
  p.group_count = ceil_div(n, p.group_size);
  p.repetitions = static_cast<std::size_t>(std::ceil(1000.0 * std::log(static_cast<double>(n))));
  return p;
}

OvDecideParams make_admissible(OvDecideParams params, std::size_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  for (std::size_t l = std::max<std::size_t>(params.eps_exponent, 1); l <= 62; ++l) {
    const std::size_t m = default_group_size(l);
    if (group_pair_bounds(l, m).admissible) {
      params.eps_exponent = l;
      params.group_size = m;
      params.group_count = ceil_div(n, m);
      return params;
    }
  }
  throw InvalidArgument("no admissible level");
}

void validate_ov_params(const OvDecideParams& params, std::size_t n) {
  if (params.group_size == 0) throw InvalidArgument("group size must be positive");
  if (params.repetitions == 0) throw InvalidArgument("repetitions must be positive");
  if (params.group_count != ceil_div(n, params.group_size))
    throw InvalidArgument("group count " + std::to_string(params.group_count) + " does not match ceil(n/m) = " +
                          std::to_string(ceil_div(n, params.group_size)));
  if (params.accept_fraction <= 0 || params.accept_fraction >= 1)
    throw InvalidArgument("accept fraction must lie in (0, 1)");
  const auto bounds = group_pair_bounds(params.eps_exponent, params.group_size);
  if (!bounds.admissible)
    throw InvalidArgument("level " + std::to_string(params.eps_exponent) + " with group size " +
                          std::to_string(params.group_size) + " is outside the union-bound regime (false positive bound " +
                          to_decimal(bounds.false_positive, 4) + ", true positive bound " +
                          to_decimal(bounds.true_positive, 4) + ")");
}

OvRepetition ov_repetition(const VectorFamily& a, const VectorFamily& b, const OvDecideParams& params,
                           SeededRng rng, unsigned threads) {
  check_inputs(a, b, params);
  OvRepetition rep;
  rep.u = random_bits(params.group_size, rng);
  rep.v = random_bits(params.group_size, rng);
  rep.poly = sample_disj_poly(a.dim(), params.eps_exponent, rng, params.rank_cap);
  if (rep.u.none() || rep.v.none()) {
    rep.product = F2Matrix(params.group_count, params.group_count);
    return rep;
  }
  const F2Matrix ua = group_reduce(feature_matrix(rep.poly, a), rep.u, params.group_size);
  const F2Matrix vb = group_reduce(feature_matrix(rep.poly, b), rep.v, params.group_size);
  rep.product = f2_matmul_tn(ua, vb, threads);
  return rep;
}

OvDecision ov_decide(const VectorFamily& a, const VectorFamily& b, const OvDecideParams& params,
                     const SeededRng& rng, unsigned threads) {
  check_inputs(a, b, params);
  const std::size_t g = params.group_count;
  const std::size_t workers = worker_count(params.repetitions, threads);
  std::vector<CounterMatrix> partial(workers, CounterMatrix::Zero(static_cast<Eigen::Index>(g),
                                                                  static_cast<Eigen::Index>(g)));
  parallel_chunks(params.repetitions, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    CounterMatrix& counters = partial[w];
    for (std::size_t t = begin; t < end; ++t) {
      SeededRng rep_rng = rng.derive(t);
      const BitVector u = random_bits(params.group_size, rep_rng);
      const BitVector v = random_bits(params.group_size, rep_rng);
      // u = 0 or v = 0 makes every U_i . V_j vanish whatever M is.
      if (u.none() || v.none()) continue;
      const DisjProbPoly poly = sample_disj_poly(a.dim(), params.eps_exponent, rep_rng, params.rank_cap);
      const F2Matrix ua = group_reduce(feature_matrix(poly, a), u, params.group_size);
      const F2Matrix vb = group_reduce(feature_matrix(poly, b), v, params.group_size);
      const F2Matrix product = f2_matmul_tn(ua, vb);
      for (std::size_t i = 0; i < g; ++i) {
        const auto row = product.row(i);
        for (std::size_t word = 0; word < row.size(); ++word)
          for (auto bits = row[word]; bits; bits &= bits - 1)
            ++counters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(word * 64 + std::countr_zero(bits)));
      }
    }
  });
  OvDecision out;
  out.params = params;
  out.counters = partial.front();
  for (std::size_t w = 1; w < workers; ++w) out.counters += partial[w];
  out.max_counter = out.counters.size() == 0 ? 0 : out.counters.maxCoeff();
  out.answer = Rat(static_cast<unsigned long>(out.max_counter)) >
               params.accept_fraction * Rat(static_cast<unsigned long>(params.repetitions));
  return out;
}

}  // namespace ovkit
