#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ovkit/core/bit_vector.hpp"

namespace ovkit {

/// Ordered multiset of vectors sharing one dimension. In sparse mode every
/// member has popcount at most sparse_bound.
class VectorFamily {
 public:
  explicit VectorFamily(std::size_t dim, std::optional<std::size_t> sparse_bound = std::nullopt);
  VectorFamily(std::size_t dim, std::vector<BitVector> vectors,
               std::optional<std::size_t> sparse_bound = std::nullopt);

  void push_back(BitVector v);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool empty() const noexcept { return vectors_.empty(); }
  std::optional<std::size_t> sparse_bound() const noexcept { return sparse_bound_; }
  bool is_sparse() const noexcept { return sparse_bound_.has_value(); }

  const BitVector& operator[](std::size_t i) const { return vectors_[i]; }
  BitVector& mutable_at(std::size_t i) { return vectors_[i]; }
  const std::vector<BitVector>& vectors() const noexcept { return vectors_; }
  auto begin() const { return vectors_.begin(); }
  auto end() const { return vectors_.end(); }

  std::size_t max_weight() const;

  /// Column c has bit k set iff member k has coordinate c set.
  std::vector<BitVector> coordinate_columns() const;

  friend bool operator==(const VectorFamily&, const VectorFamily&) = default;

 private:
  void check(const BitVector& v) const;

  std::size_t dim_;
  std::vector<BitVector> vectors_;
  std::optional<std::size_t> sparse_bound_;
};

}  // namespace ovkit
