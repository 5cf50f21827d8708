#include "ovkit/core/bit_vector.hpp"

#include <algorithm>

#include "ovkit/core/errors.hpp"

namespace ovkit {

BitVector::BitVector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {}

BitVector BitVector::ones(std::size_t dim) {
  BitVector v(dim);
  std::fill(v.words_.begin(), v.words_.end(), ~Word{0});
  v.clear_tail();
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw InvalidArgument("bit string may only contain '0' and '1'");
  }
  return v;
}

BitVector BitVector::from_indices(std::size_t dim, std::span<const std::size_t> indices) {
  BitVector v(dim);
  for (std::size_t i : indices) {
    if (i >= dim) throw InvalidArgument("coordinate " + std::to_string(i) + " out of range");
    v.set(i);
  }
  return v;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitVector::is_subset_of(const BitVector& other) const {
  if (dim_ != other.dim_) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  out.reserve(popcount());
  for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::string BitVector::to_string() const {
  std::string s(dim_, '0');
  for_each_set([&](std::size_t i) { s[i] = '1'; });
  return s;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (dim_ != other.dim_) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  if (dim_ != other.dim_) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (dim_ != other.dim_) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  // Compare as big-endian numbers over the words, highest word first.
  for (std::size_t w = a.words_.size(); w-- > 0;)
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  return std::strong_ordering::equal;
}

void BitVector::clear_tail() noexcept {
  if (const std::size_t rem = dim_ % kWordBits; rem != 0 && !words_.empty())
    words_.back() &= (Word{1} << rem) - 1;
}

std::size_t inner_product(const BitVector& x, const BitVector& y) {
  if (x.dim() != y.dim()) throw InvalidArgument("dimension mismatch");
  const auto xs = x.words();
  const auto ys = y.words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < xs.size(); ++w) total += static_cast<std::size_t>(std::popcount(xs[w] & ys[w]));
  return total;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ v.dim();
  for (auto w : v.words()) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ovkit
