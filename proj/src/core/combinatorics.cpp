#include "ovkit/core/combinatorics.hpp"

#include "ovkit/core/errors.hpp"

namespace ovkit {

std::vector<BigInt> binomial_table(std::size_t d, std::size_t D) {
  if (D > d) throw InvalidArgument("binomial_table requires D <= d");
  std::vector<BigInt> row(D + 1);
  row[0] = 1;
  for (std::size_t j = 1; j <= D; ++j) {
    row[j] = row[j - 1] * static_cast<unsigned long>(d - j + 1);
    row[j] /= static_cast<unsigned long>(j);
  }
  return row;
}

BigInt binomial_prefix_sum(std::size_t d, std::size_t D) {
  BigInt total = 0;
  for (const auto& c : binomial_table(d, std::min(d, D))) total += c;
  return total;
}

std::vector<std::vector<BigInt>> stirling2_table(std::size_t D) {
  std::vector<std::vector<BigInt>> s(D + 1);
  for (std::size_t k = 0; k <= D; ++k) {
    s[k].assign(k + 1, 0);
    if (k == 0) {
      s[0][0] = 1;
      continue;
    }
    for (std::size_t j = 1; j <= k; ++j) {
      const BigInt keep = j < k ? s[k - 1][j] : BigInt(0);
      s[k][j] = keep * static_cast<unsigned long>(j) + s[k - 1][j - 1];
    }
  }
  return s;
}

BigInt factorial(std::size_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt falling_factorial(const BigInt& x, std::size_t j) {
  BigInt out = 1;
  for (std::size_t i = 0; i < j; ++i) out *= x - static_cast<unsigned long>(i);
  return out;
}

}  // namespace ovkit
