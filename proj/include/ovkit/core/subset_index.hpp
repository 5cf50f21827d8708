#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ovkit {

/// A subset S of [d] named by its size and its colexicographic rank among
/// subsets of that size.
struct SubsetIndex {
  std::size_t size = 0;
  std::uint64_t colex_rank = 0;

  friend auto operator<=>(const SubsetIndex&, const SubsetIndex&) = default;
};

struct SubsetIndexHash {
  std::size_t operator()(const SubsetIndex& s) const noexcept {
    return static_cast<std::size_t>(s.colex_rank * 0x9E3779B97F4A7C15ull ^ (s.size << 1));
  }
};

/// Colex rank of a strictly increasing coordinate list within [0, d).
SubsetIndex subset_rank(std::span<const std::size_t> subset, std::size_t d);
std::vector<std::size_t> subset_unrank(SubsetIndex index, std::size_t d);

/// Size-major, then colex, flat indexing of all subsets of [d] with |S| <= max_size.
/// Binomials are held as 64-bit words; construction fails with ResourceLimit
/// when C(d, <= max_size) does not fit.
class SubsetIndexer {
 public:
  SubsetIndexer(std::size_t d, std::size_t max_size);

  std::size_t dim() const noexcept { return d_; }
  std::size_t max_size() const noexcept { return max_size_; }
  /// C(d, <= max_size).
  std::uint64_t width() const noexcept { return offsets_.back(); }
  /// Flat index of the first subset of size j.
  std::uint64_t class_offset(std::size_t j) const { return offsets_[j]; }
  /// C(n, k) for n <= d, k <= max_size + 1 (0 when k > n).
  std::uint64_t binom(std::size_t n, std::size_t k) const { return k > n ? 0 : table_[n * stride_ + k]; }

  std::uint64_t flatten(SubsetIndex s) const { return offsets_[s.size] + s.colex_rank; }
  SubsetIndex unflatten(std::uint64_t flat) const;

 private:
  std::size_t d_;
  std::size_t max_size_;
  std::size_t stride_;
  std::vector<std::uint64_t> table_;
  std::vector<std::uint64_t> offsets_;
};

}  // namespace ovkit
