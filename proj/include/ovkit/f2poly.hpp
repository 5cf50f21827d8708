#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ovkit/core/bit_vector.hpp"
#include "ovkit/core/rng.hpp"
#include "ovkit/core/vector_family.hpp"
#include "ovkit/f2matrix.hpp"

namespace ovkit {

/// Monomials are coordinate masks, so the dimension is capped at 64.
inline constexpr std::size_t kMaxF2PolyDim = 64;
inline constexpr std::size_t kDefaultMonomialCap = std::size_t{1} << 22;

/// prod_{l=1}^{L} (1 + sum_{i in T_l} z_i) over GF(2), in factored form and
/// multilinearly expanded. On z = x AND y it is 1 when x, y are disjoint and
/// otherwise 1 with probability 2^-L over the choice of the T_l.
struct DisjProbPoly {
  std::size_t dim = 0;
  std::size_t level = 0;
  std::vector<std::uint64_t> subsets;
  /// Surviving monomials, ordered by size and then by mask value (colex).
  std::vector<std::uint64_t> monomials;

  std::size_t rank() const noexcept { return monomials.size(); }

  friend bool operator==(const DisjProbPoly&, const DisjProbPoly&) = default;
};

std::uint64_t to_mask(const BitVector& x);

/// Expands prod (1 + sum_{i in T_l} z_i) one factor at a time with XOR cancellation.
/// Throws ResourceLimit once a partial product exceeds `cap` monomials.
std::vector<std::uint64_t> expand_disj_poly(std::span<const std::uint64_t> subsets,
                                            std::size_t cap = kDefaultMonomialCap);

/// Each T_l contains each coordinate independently with probability 1/2.
DisjProbPoly sample_disj_poly(std::size_t d, std::size_t level, SeededRng& rng,
                              std::size_t cap = kDefaultMonomialCap);

bool eval_factored(const DisjProbPoly& p, std::uint64_t z);
bool eval_expanded(const DisjProbPoly& p, std::uint64_t z);
/// XOR over monomials S of z_S.
bool eval_disj_poly(const DisjProbPoly& p, const BitVector& z);

/// Bit j is [monomials[j] within support(x)]. phi_y is the same map.
BitVector phi_x(const DisjProbPoly& p, const BitVector& x);
BitVector phi_y(const DisjProbPoly& p, const BitVector& y);

/// rank x |family| matrix whose column k is phi_x(family[k]).
F2Matrix feature_matrix(const DisjProbPoly& p, const VectorFamily& family);

}  // namespace ovkit
