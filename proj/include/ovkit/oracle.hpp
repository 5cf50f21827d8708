#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ovkit/core/bit_vector.hpp"
#include "ovkit/core/rational.hpp"
#include "ovkit/core/vector_family.hpp"

/// Brute-force references. Everything here loops coordinate by coordinate and
/// shares no code with the algorithms it checks.
namespace ovkit::oracle {

/// Largest support the exhaustive proof oracle accepts.
inline constexpr std::size_t kMaxOracleSupport = 20;

BigInt brute_count_ov(const VectorFamily& a, const VectorFamily& b);
BigInt brute_count_kov(std::span<const VectorFamily> families);
std::size_t brute_max_ip(const VectorFamily& a, const VectorFamily& b);

using PairPredicate = std::function<bool(const BitVector&, const BitVector&)>;
bool brute_satisfying_pair(const VectorFamily& a, const VectorFamily& b, const PairPredicate& predicate);

/// All inclusion-minimal sets (as sorted coordinate lists, sorted by size then
/// lexicographically) of positive-weight coordinates whose weight sum reaches
/// min_weight. Exhaustive over subsets of the support; throws ResourceLimit
/// past kMaxOracleSupport positive coordinates.
std::vector<std::vector<std::size_t>> brute_min_proofs(std::span<const std::uint32_t> weights,
                                                       std::uint64_t min_weight);

/// Inner product by explicit coordinate loop.
std::size_t slow_inner_product(const BitVector& x, const BitVector& y);

}  // namespace ovkit::oracle
