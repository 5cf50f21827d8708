#include "ovkit/core/vector_family.hpp"

#include <algorithm>
#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit {

VectorFamily::VectorFamily(std::size_t dim, std::optional<std::size_t> sparse_bound)
    : dim_(dim), sparse_bound_(sparse_bound) {
  if (dim == 0) throw InvalidArgument("vector family dimension must be positive");
  if (sparse_bound && *sparse_bound == 0) throw InvalidArgument("sparse bound must be positive");
}

VectorFamily::VectorFamily(std::size_t dim, std::vector<BitVector> vectors, std::optional<std::size_t> sparse_bound)
    : VectorFamily(dim, sparse_bound) {
  for (const auto& v : vectors) check(v);
  vectors_ = std::move(vectors);
}

void VectorFamily::push_back(BitVector v) {
  check(v);
  vectors_.push_back(std::move(v));
}

void VectorFamily::check(const BitVector& v) const {
  if (v.dim() != dim_)
    throw InvalidArgument("vector of dimension " + std::to_string(v.dim()) + " in family of dimension " +
                          std::to_string(dim_));
  if (sparse_bound_ && v.popcount() > *sparse_bound_)
    throw InvalidArgument("vector weight " + std::to_string(v.popcount()) + " exceeds sparse bound " +
                          std::to_string(*sparse_bound_));
}

std::size_t VectorFamily::max_weight() const {
  std::size_t best = 0;
  for (const auto& v : vectors_) best = std::max(best, v.popcount());
  return best;
}

std::vector<BitVector> VectorFamily::coordinate_columns() const {
  std::vector<BitVector> columns(dim_, BitVector(vectors_.size()));
  for (std::size_t k = 0; k < vectors_.size(); ++k) vectors_[k].for_each_set([&](std::size_t c) { columns[c].set(k); });
  return columns;
}

}  // namespace ovkit
