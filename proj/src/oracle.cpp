#include "ovkit/oracle.hpp"

#include <algorithm>
#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit::oracle {

std::size_t slow_inner_product(const BitVector& x, const BitVector& y) {
  if (x.dim() != y.dim()) throw InvalidArgument("dimension mismatch");
  std::size_t total = 0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x.test(i) && y.test(i)) ++total;
  return total;
}

BigInt brute_count_ov(const VectorFamily& a, const VectorFamily& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  std::uint64_t count = 0;
  for (const auto& x : a)
    for (const auto& y : b)
      if (slow_inner_product(x, y) == 0) ++count;
  return BigInt(static_cast<unsigned long>(count));
}

BigInt brute_count_kov(std::span<const VectorFamily> families) {
  if (families.empty()) throw InvalidArgument("need at least one family");
  const std::size_t d = families.front().dim();
  for (const auto& f : families)
    if (f.dim() != d) throw InvalidArgument("dimension mismatch");
  for (const auto& f : families)
    if (f.empty()) return 0;

  std::uint64_t count = 0;
  std::vector<std::size_t> pick(families.size(), 0);
  while (true) {
    bool orthogonal = true;
    for (std::size_t i = 0; i < d && orthogonal; ++i) {
      bool all = true;
      for (std::size_t f = 0; f < families.size() && all; ++f) all = families[f][pick[f]].test(i);
      if (all) orthogonal = false;
    }
    if (orthogonal) ++count;
    std::size_t f = families.size();
    while (f > 0) {
      --f;
      if (++pick[f] < families[f].size()) break;
      pick[f] = 0;
      if (f == 0) return BigInt(static_cast<unsigned long>(count));
    }
  }
}

std::size_t brute_max_ip(const VectorFamily& a, const VectorFamily& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  std::size_t best = 0;
  for (const auto& x : a)
    for (const auto& y : b) best = std::max(best, slow_inner_product(x, y));
  return best;
}

bool brute_satisfying_pair(const VectorFamily& a, const VectorFamily& b, const PairPredicate& predicate) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  for (const auto& x : a)
    for (const auto& y : b)
      if (predicate(x, y)) return true;
  return false;
}

std::vector<std::vector<std::size_t>> brute_min_proofs(std::span<const std::uint32_t> weights,
                                                       std::uint64_t min_weight) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0) support.push_back(i);
  if (support.size() > kMaxOracleSupport)
    throw ResourceLimit("proof oracle support " + std::to_string(support.size()) + " exceeds " +
                        std::to_string(kMaxOracleSupport));

  const std::size_t s = support.size();
  auto weight_of = [&](std::uint32_t mask) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1u) total += weights[support[i]];
    return total;
  };
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << s); ++mask) {
    if (weight_of(mask) < min_weight) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < s && minimal; ++i)
      if ((mask >> i & 1u) && weight_of(mask & ~(std::uint32_t{1} << i)) >= min_weight) minimal = false;
    if (!minimal) continue;
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1u) set.push_back(support[i]);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

}  // namespace ovkit::oracle
