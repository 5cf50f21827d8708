#pragma once

#include <cstddef>
#include <vector>

#include "ovkit/core/rational.hpp"

namespace ovkit {

/// [C(d,0), ..., C(d,D)], exact. Requires D <= d.
std::vector<BigInt> binomial_table(std::size_t d, std::size_t D);

/// Sum of binomial_table(d, D): the number of subsets of [d] of size <= D.
BigInt binomial_prefix_sum(std::size_t d, std::size_t D);

/// table[k][j] = S2(k, j) for 0 <= j <= k <= D; entries with j > k are absent.
std::vector<std::vector<BigInt>> stirling2_table(std::size_t D);

BigInt factorial(std::size_t n);

/// x (x-1) ... (x-j+1).
BigInt falling_factorial(const BigInt& x, std::size_t j);

}  // namespace ovkit
