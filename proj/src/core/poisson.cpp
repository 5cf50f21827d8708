#include "ovkit/core/poisson.hpp"

#include <cmath>

#include "ovkit/core/errors.hpp"

namespace ovkit {

PoissonSampler::PoissonSampler(const Rat& lambda) : PoissonSampler(lambda > 0 ? to_long_double(lambda) : -1.0L) {}

PoissonSampler::PoissonSampler(long double lambda) : lambda_(lambda) {
  if (!(lambda > 0)) throw InvalidArgument("Poisson rate must be positive");
  if (lambda > kMaxPoissonRate) throw InvalidArgument("Poisson rate exceeds the exact-inversion limit of 30");
  p0_ = std::exp(-lambda);
  // Past this point the remaining tail mass is far below one ulp of the CDF.
  guard_ = static_cast<std::uint32_t>(lambda + 40.0L * std::sqrt(lambda) + 60.0L);
}

std::uint32_t PoissonSampler::operator()(SeededRng& rng) const noexcept {
  const long double u = rng.uniform01();
  long double term = p0_;
  long double cdf = term;
  std::uint32_t i = 0;
  while (u >= cdf && i < guard_) {
    ++i;
    term *= lambda_ / static_cast<long double>(i);
    cdf += term;
  }
  return i;
}

std::uint32_t pois_sample(const Rat& lambda, SeededRng& rng) { return PoissonSampler(lambda)(rng); }

namespace {

std::uint64_t piece_count(const Rat& lambda) {
  if (lambda <= 0) throw InvalidArgument("Poisson rate must be positive");
  const BigInt pieces = floor_of(Rat(lambda / 30));
  return pieces.get_ui();
}

}  // namespace

SplitPoissonSampler::SplitPoissonSampler(const Rat& lambda)
    : full_pieces_(piece_count(lambda)),
      piece_(kMaxPoissonRate),
      has_rest_(Rat(lambda - 30 * full_pieces_) > 0),
      rest_(has_rest_ ? to_long_double(Rat(lambda - 30 * full_pieces_)) : 1.0L) {}

std::uint64_t SplitPoissonSampler::operator()(SeededRng& rng) const noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < full_pieces_; ++i) total += piece_(rng);
  if (has_rest_) total += rest_(rng);
  return total;
}

}  // namespace ovkit
