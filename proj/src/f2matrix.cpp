#include "ovkit/f2matrix.hpp"

#include <array>
#include <bit>
#include <string>

#include "ovkit/core/errors.hpp"
#include "ovkit/core/parallel.hpp"

namespace ovkit {

namespace {

constexpr std::size_t kTableBits = 8;

void xor_into(std::span<F2Matrix::Word> dst, std::span<const F2Matrix::Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

F2Matrix F2Matrix::random(std::size_t rows, std::size_t cols, SeededRng& rng) {
  F2Matrix m(rows, cols);
  const Word tail = cols % 64 == 0 ? ~Word{0} : (Word{1} << (cols % 64)) - 1;
  for (std::size_t r = 0; r < rows; ++r) {
    auto words = m.row(r);
    for (auto& w : words) w = rng.next_u64();
    if (!words.empty()) words.back() &= tail;
  }
  return m;
}

std::size_t F2Matrix::popcount() const noexcept {
  std::size_t total = 0;
  for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto words = row(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      Word bits = words[w];
      while (bits) {
        t.set(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)), r);
        bits &= bits - 1;
      }
    }
  }
  return t;
}

F2Matrix f2_matmul(const F2Matrix& a, const F2Matrix& b, unsigned threads) {
  if (a.cols() != b.rows())
    throw InvalidArgument("f2_matmul shape mismatch: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
  F2Matrix c(a.rows(), b.cols());
  const std::size_t stride = b.words_per_row();
  if (stride == 0 || a.rows() == 0) return c;

  parallel_chunks(a.rows(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    // table[mask] = XOR of the rows of b selected by mask within the current 8-row block.
    std::vector<F2Matrix::Word> table((std::size_t{1} << kTableBits) * stride);
    for (std::size_t k0 = 0; k0 < b.rows(); k0 += kTableBits) {
      const std::size_t span = std::min(kTableBits, b.rows() - k0);
      std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(stride), 0);
      for (std::size_t mask = 1; mask < (std::size_t{1} << span); ++mask) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
        const std::size_t prev = mask & (mask - 1);
        for (std::size_t w = 0; w < stride; ++w)
          table[mask * stride + w] = table[prev * stride + w] ^ b.row(k0 + low)[w];
      }
      const std::size_t word = k0 / 64;
      const std::size_t shift = k0 % 64;
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t mask =
            static_cast<std::size_t>(a.row(i)[word] >> shift) & ((std::size_t{1} << span) - 1);
        if (mask != 0) xor_into(c.row(i), {table.data() + mask * stride, stride});
      }
    }
  });
  return c;
}

F2Matrix f2_matmul_tn(const F2Matrix& a, const F2Matrix& b, unsigned threads) {
  if (a.rows() != b.rows())
    throw InvalidArgument("f2_matmul_tn shape mismatch: " + std::to_string(a.rows()) + " vs " +
                          std::to_string(b.rows()));
  F2Matrix c(a.cols(), b.cols());
  if (a.cols() == 0) return c;
  // Workers own disjoint ranges of output rows, i.e. of bit positions in a's rows.
  parallel_chunks(a.cols(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t s = 0; s < a.rows(); ++s) {
      const auto sel = a.row(s);
      const auto src = b.row(s);
      for (std::size_t w = begin / 64; w * 64 < end; ++w) {
        F2Matrix::Word bits = sel[w];
        if (w * 64 < begin) bits &= ~F2Matrix::Word{0} << (begin - w * 64);
        if (end - w * 64 < 64) bits &= (F2Matrix::Word{1} << (end - w * 64)) - 1;
        while (bits) {
          xor_into(c.row(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))), src);
          bits &= bits - 1;
        }
      }
    }
  });
  return c;
}

}  // namespace ovkit
