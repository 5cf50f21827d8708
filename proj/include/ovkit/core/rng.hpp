#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ovkit {

/// Philox-4x32-10 counter-based generator. A (seed, stream_id) pair fixes the
/// whole output sequence on every platform; derive() gives child streams for
/// per-repetition work so results do not depend on scheduling.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  /// Independent child stream; the same (parent, index) always yields the same child.
  SeededRng derive(std::uint64_t index) const noexcept;

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
};

}  // namespace ovkit
