#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "ovkit/core/bit_vector.hpp"
#include "ovkit/core/rational.hpp"
#include "ovkit/core/rng.hpp"
#include "ovkit/core/vector_family.hpp"
#include "ovkit/f2matrix.hpp"
#include "ovkit/f2poly.hpp"

namespace ovkit {

struct OvDecideParams {
  /// L, so the polynomial error is eps = 2^-L.
  std::size_t eps_exponent = 5;
  std::size_t group_size = 1;
  std::size_t group_count = 0;
  std::size_t repetitions = 1;
  Rat accept_fraction = ratio(3, 20);
  /// Cap on the monomial count of each sampled polynomial.
  std::size_t rank_cap = kDefaultMonomialCap;

  friend bool operator==(const OvDecideParams&, const OvDecideParams&) = default;
};

/// max(1, floor(sqrt(2^L) / 10)).
std::size_t default_group_size(std::size_t level);

/// Exact per-group-pair bounds for level L and group size m:
/// Pr[U_i V_j = 1] <= eps m^2 (1/2 - 2^-(m+1)) when no pair in the groups is orthogonal,
/// and >= (1 - eps m^2) / 4 when one is.
struct GroupPairBounds {
  Rat false_positive;
  Rat true_positive;
  /// false_positive <= 1/100 and true_positive >= 24/100.
  bool admissible = false;
};
GroupPairBounds group_pair_bounds(std::size_t level, std::size_t group_size);

/// L = largest level with C(d, <= L) <= n^0.1, clamped to [1, 20]; default m, g and
/// T = ceil(1000 ln n).
OvDecideParams derive_ov_params(std::size_t n, std::size_t d);

/// Raises L (recomputing m and g) to the smallest admissible level not below the current one.
OvDecideParams make_admissible(OvDecideParams params, std::size_t n);

/// Throws InvalidArgument when the parameters are inconsistent with n or not admissible.
void validate_ov_params(const OvDecideParams& params, std::size_t n);

/// One repetition: polynomial M, sign vectors u, v in GF(2)^m and the g x g matrix of
/// bits U_i . V_j, where U_i = sum_k u_k phi_x(A_{i,k}).
struct OvRepetition {
  DisjProbPoly poly;
  BitVector u;
  BitVector v;
  F2Matrix product;
};
OvRepetition ov_repetition(const VectorFamily& a, const VectorFamily& b, const OvDecideParams& params,
                           SeededRng rng, unsigned threads = 1);

using CounterMatrix = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>;

struct OvDecision {
  bool answer = false;
  std::uint32_t max_counter = 0;
  /// T_ij: repetitions in which U_i . V_j = 1.
  CounterMatrix counters;
  OvDecideParams params;
};

/// Yes iff some counter exceeds accept_fraction * T. Repetition t draws from rng.derive(t),
/// so the result does not depend on `threads`.
OvDecision ov_decide(const VectorFamily& a, const VectorFamily& b, const OvDecideParams& params,
                     const SeededRng& rng, unsigned threads = 1);

}  // namespace ovkit
