#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ovkit/core/rng.hpp"

namespace ovkit {

/// Dense matrix over GF(2), rows packed into 64-bit words. Bits past cols are zero.
class F2Matrix {
 public:
  using Word = std::uint64_t;

  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  static F2Matrix identity(std::size_t n);
  static F2Matrix random(std::size_t rows, std::size_t cols, SeededRng& rng);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const { return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t r, std::size_t c, bool value = true) {
    const Word mask = Word{1} << (c % 64);
    Word& w = bits_[r * stride_ + c / 64];
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] ^= Word{1} << (c % 64); }

  std::span<const Word> row(std::size_t r) const { return {bits_.data() + r * stride_, stride_}; }
  std::span<Word> row(std::size_t r) { return {bits_.data() + r * stride_, stride_}; }

  std::size_t popcount() const noexcept;
  F2Matrix transpose() const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

/// a * b over GF(2), Method of Four Russians with 8-row lookup tables.
/// Output rows are split across `threads` workers.
F2Matrix f2_matmul(const F2Matrix& a, const F2Matrix& b, unsigned threads = 1);

/// transpose(a) * b without materializing the transpose: row s of a selects
/// which output rows receive row s of b. Cheap when a is sparse.
F2Matrix f2_matmul_tn(const F2Matrix& a, const F2Matrix& b, unsigned threads = 1);

}  // namespace ovkit
