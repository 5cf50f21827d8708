#include "ovkit/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit {

std::uint64_t to_mask(const BitVector& x) {
  if (x.dim() > kMaxF2PolyDim) throw InvalidArgument("GF(2) polynomials support at most 64 coordinates");
  return x.words().empty() ? 0 : x.words()[0];
}

std::vector<std::uint64_t> expand_disj_poly(std::span<const std::uint64_t> subsets, std::size_t cap) {
  std::vector<std::uint64_t> current{0};
  std::vector<std::uint64_t> next;
  for (const std::uint64_t t : subsets) {
    const std::size_t terms = static_cast<std::size_t>(std::popcount(t)) + 1;
    if (current.size() * terms > 16 * cap)
      throw ResourceLimit("GF(2) expansion would generate " + std::to_string(current.size() * terms) +
                          " intermediate terms");
    next.clear();
    next.reserve(current.size() * terms);
    for (const std::uint64_t m : current) {
      next.push_back(m);
      for (std::uint64_t bits = t; bits; bits &= bits - 1) next.push_back(m | (bits & -bits));
    }
    std::sort(next.begin(), next.end());
    // Keep each mask with odd multiplicity exactly once.
    current.clear();
    for (std::size_t i = 0; i < next.size();) {
      std::size_t j = i;
      while (j < next.size() && next[j] == next[i]) ++j;
      if ((j - i) % 2 == 1) current.push_back(next[i]);
      i = j;
    }
    if (current.size() > cap)
      throw ResourceLimit("GF(2) expansion has " + std::to_string(current.size()) + " monomials, cap is " +
                          std::to_string(cap));
  }
  std::sort(current.begin(), current.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return current;
}

DisjProbPoly sample_disj_poly(std::size_t d, std::size_t level, SeededRng& rng, std::size_t cap) {
  if (d == 0 || d > kMaxF2PolyDim) throw InvalidArgument("dimension must be in [1, 64]");
  if (level == 0) throw InvalidArgument("level must be at least 1");
  const std::uint64_t full = d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
  DisjProbPoly p;
  p.dim = d;
  p.level = level;
  p.subsets.reserve(level);
  for (std::size_t l = 0; l < level; ++l) p.subsets.push_back(rng.next_u64() & full);
  p.monomials = expand_disj_poly(p.subsets, cap);
  return p;
}

bool eval_factored(const DisjProbPoly& p, std::uint64_t z) {
  for (const std::uint64_t t : p.subsets)
    if (std::popcount(t & z) % 2 == 1) return false;
  return true;
}

bool eval_expanded(const DisjProbPoly& p, std::uint64_t z) {
  bool value = false;
  for (const std::uint64_t s : p.monomials) value ^= (s & ~z) == 0;
  return value;
}

bool eval_disj_poly(const DisjProbPoly& p, const BitVector& z) {
  if (z.dim() != p.dim) throw InvalidArgument("vector dimension does not match polynomial");
  return eval_expanded(p, to_mask(z));
}

BitVector phi_x(const DisjProbPoly& p, const BitVector& x) {
  if (x.dim() != p.dim) throw InvalidArgument("vector dimension does not match polynomial");
  const std::uint64_t mask = to_mask(x);
  BitVector out(p.rank());
  for (std::size_t j = 0; j < p.monomials.size(); ++j)
    if ((p.monomials[j] & ~mask) == 0) out.set(j);
  return out;
}

BitVector phi_y(const DisjProbPoly& p, const BitVector& y) { return phi_x(p, y); }

F2Matrix feature_matrix(const DisjProbPoly& p, const VectorFamily& family) {
  if (family.dim() != p.dim) throw InvalidArgument("family dimension does not match polynomial");
  const std::size_t n = family.size();
  F2Matrix out(p.rank(), n);
  if (n == 0) return out;
  // missing[c] marks the members lacking coordinate c; S fits member k iff no c in S is missing there.
  std::vector<BitVector> missing = family.coordinate_columns();
  const BitVector all = BitVector::ones(n);
  for (auto& col : missing) col ^= all;
  const std::size_t stride = out.words_per_row();
  std::vector<std::uint64_t> acc(stride);
  for (std::size_t j = 0; j < p.monomials.size(); ++j) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint64_t bits = p.monomials[j]; bits; bits &= bits - 1) {
      const auto col = missing[static_cast<std::size_t>(std::countr_zero(bits))].words();
      for (std::size_t w = 0; w < stride; ++w) acc[w] |= col[w];
    }
    auto row = out.row(j);
    const auto ones = all.words();
    for (std::size_t w = 0; w < stride; ++w) row[w] = ~acc[w] & ones[w];
  }
  return out;
}

}  // namespace ovkit
