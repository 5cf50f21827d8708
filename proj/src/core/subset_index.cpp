#include "ovkit/core/subset_index.hpp"

#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit {

namespace {

// C(n, k) in 64 bits, or 0 on overflow; only used for small arguments.
std::uint64_t small_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw ResourceLimit("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

SubsetIndex subset_rank(std::span<const std::size_t> subset, std::size_t d) {
  SubsetIndex out{subset.size(), 0};
  for (std::size_t t = 0; t < subset.size(); ++t) {
    if (subset[t] >= d) throw InvalidArgument("coordinate " + std::to_string(subset[t]) + " out of range");
    if (t > 0 && subset[t] <= subset[t - 1]) throw InvalidArgument("subset must be strictly increasing");
    out.colex_rank += small_binom(subset[t], t + 1);
  }
  return out;
}

std::vector<std::size_t> subset_unrank(SubsetIndex index, std::size_t d) {
  if (index.size > d || index.colex_rank >= small_binom(d, index.size))
    throw InvalidArgument("subset index out of range");
  std::vector<std::size_t> out(index.size);
  std::uint64_t rank = index.colex_rank;
  std::size_t hi = d;
  for (std::size_t t = index.size; t-- > 0;) {
    // Largest c < hi with C(c, t+1) <= rank.
    std::size_t c = hi - 1;
    while (small_binom(c, t + 1) > rank) --c;
    out[t] = c;
    rank -= small_binom(c, t + 1);
    hi = c;
  }
  return out;
}

SubsetIndexer::SubsetIndexer(std::size_t d, std::size_t max_size)
    : d_(d), max_size_(max_size), stride_(max_size + 2), table_((d + 1) * (max_size + 2), 0), offsets_(max_size + 2, 0) {
  if (max_size > d) throw InvalidArgument("subset size bound exceeds dimension");
  for (std::size_t n = 0; n <= d; ++n) {
    table_[n * stride_] = 1;
    for (std::size_t k = 1; k < stride_ && k <= n; ++k) {
      const std::uint64_t a = table_[(n - 1) * stride_ + k - 1];
      const std::uint64_t b = k <= n - 1 ? table_[(n - 1) * stride_ + k] : 0;
      if (a > UINT64_MAX - b) throw ResourceLimit("subset index space exceeds 64 bits");
      table_[n * stride_ + k] = a + b;
    }
  }
  for (std::size_t j = 0; j <= max_size; ++j) {
    const std::uint64_t c = binom(d, j);
    if (offsets_[j] > UINT64_MAX - c) throw ResourceLimit("subset index space exceeds 64 bits");
    offsets_[j + 1] = offsets_[j] + c;
  }
}

SubsetIndex SubsetIndexer::unflatten(std::uint64_t flat) const {
  if (flat >= width()) throw InvalidArgument("flat subset index out of range");
  std::size_t j = 0;
  while (offsets_[j + 1] <= flat) ++j;
  return {j, flat - offsets_[j]};
}

}  // namespace ovkit
