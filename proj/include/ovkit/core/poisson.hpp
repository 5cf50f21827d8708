#pragma once

#include <cstdint>

#include "ovkit/core/rational.hpp"
#include "ovkit/core/rng.hpp"

namespace ovkit {

/// Largest rate accepted by exact inversion sampling.
inline constexpr long double kMaxPoissonRate = 30.0L;

/// Exact Poisson(lambda) draws by inversion of the CDF, accumulated in
/// extended precision. 0 < lambda <= kMaxPoissonRate.
class PoissonSampler {
 public:
  explicit PoissonSampler(const Rat& lambda);
  explicit PoissonSampler(long double lambda);

  long double rate() const noexcept { return lambda_; }
  std::uint32_t operator()(SeededRng& rng) const noexcept;

 private:
  long double lambda_;
  long double p0_;
  std::uint32_t guard_;
};

std::uint32_t pois_sample(const Rat& lambda, SeededRng& rng);

/// Poisson(lambda) for any positive lambda, drawn as a sum of independent
/// pieces of rate <= kMaxPoissonRate (sums of Poissons are Poisson).
class SplitPoissonSampler {
 public:
  explicit SplitPoissonSampler(const Rat& lambda);

  std::uint64_t operator()(SeededRng& rng) const noexcept;

 private:
  std::uint64_t full_pieces_;
  PoissonSampler piece_;
  bool has_rest_;
  PoissonSampler rest_;
};

}  // namespace ovkit
