#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ovkit/core/bit_vector.hpp"
#include "ovkit/core/rational.hpp"
#include "ovkit/core/rng.hpp"
#include "ovkit/core/subset_index.hpp"
#include "ovkit/core/vector_family.hpp"
#include "ovkit/orpoly.hpp"

namespace ovkit {

enum class SketchBackend { dense, sparse };

/// Default dense-width cap: 2^26 counters.
inline constexpr std::uint64_t kDefaultDenseCap = std::uint64_t{1} << 26;

struct SketchOptions {
  /// Unset: dense when C(dim, <= degree) fits dense_cap, sparse otherwise.
  std::optional<SketchBackend> backend;
  std::uint64_t dense_cap = kDefaultDenseCap;
  unsigned threads = 1;
};

/// Additive summary of a vector family: entry[S] = #{x aggregated : S within support(x)}
/// for every |S| <= degree. Sketches of disjoint multisets add entrywise.
class Sketch {
 public:
  Sketch(std::size_t dim, std::size_t degree, SketchBackend backend, std::uint64_t dense_cap = kDefaultDenseCap);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t degree() const noexcept { return degree_; }
  SketchBackend backend() const noexcept { return backend_; }
  std::uint64_t count() const noexcept { return count_; }
  /// Largest popcount among aggregated vectors.
  std::size_t max_weight() const noexcept { return max_weight_; }
  /// C(dim, <= degree): the number of indexable subsets.
  std::uint64_t width() const noexcept { return indexer_.width(); }
  std::size_t nonzero_count() const;

  std::int64_t at(SubsetIndex s) const;
  std::int64_t at(std::span<const std::size_t> subset) const { return at(subset_rank(subset, dim_)); }

  /// fn(SubsetIndex, value) for every nonzero entry.
  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (backend_ == SketchBackend::dense) {
      for (std::uint64_t flat = 0; flat < dense_.size(); ++flat)
        if (dense_[flat] != 0) fn(indexer_.unflatten(flat), dense_[flat]);
    } else {
      for (const auto& [s, v] : sparse_)
        if (v != 0) fn(s, v);
    }
  }

  /// Adds x: every S within support(x) with |S| <= degree gains 1.
  void add_vector(const BitVector& x);

  Sketch& operator+=(const Sketch& other);
  friend Sketch operator+(Sketch a, const Sketch& b) { return a += b; }
  /// Same shape and entrywise equal, regardless of backend.
  friend bool operator==(const Sketch& a, const Sketch& b);

  const SubsetIndexer& indexer() const noexcept { return indexer_; }

 private:
  std::size_t dim_;
  std::size_t degree_;
  SketchBackend backend_;
  SubsetIndexer indexer_;
  std::uint64_t count_ = 0;
  std::size_t max_weight_ = 0;
  std::vector<std::int64_t> dense_;
  std::unordered_map<SubsetIndex, std::int64_t, SubsetIndexHash> sparse_;
};

/// Backend the options resolve to for a (dim, degree) sketch.
SketchBackend resolve_backend(std::size_t dim, std::size_t degree, const SketchOptions& options);

Sketch sketch_vector(const BitVector& x, std::size_t degree, SketchBackend backend,
                     std::uint64_t dense_cap = kDefaultDenseCap);
Sketch merge_sketches(const Sketch& a, const Sketch& b);
Sketch sketch_family(const VectorFamily& family, std::size_t degree, const SketchOptions& options = {});

/// The estimate E together with its deterministic error bound eps * prod n_i.
struct CountEstimate {
  Rat value;
  Rat error_bound;
  Rat eps;
  std::size_t arity = 2;
  std::size_t degree = 0;
  std::uint64_t sketch_width = 0;
};

/// Degree a sketch must have to pair with p: monomials beyond p.dim vanish on
/// every vector the certificate covers.
std::size_t sketch_degree_for(const OrPolynomial& p);

/// E = sum_j c_j sum_{|S| = j} prod_i sketch_i[S], exactly.
CountEstimate estimate_tuple_count(std::span<const Sketch> sketches, const OrPolynomial& p);

/// Additive eps * |A| |B| approximation of the number of orthogonal pairs.
CountEstimate count_ov_approx(const VectorFamily& a, const VectorFamily& b, const Rat& eps,
                              const SketchOptions& options = {});
/// Additive eps * prod |X_i| approximation of the number of orthogonal k-tuples.
CountEstimate count_kov_approx(std::span<const VectorFamily> families, const Rat& eps,
                               const SketchOptions& options = {});
/// Sparse variant: the polynomial is certified on [1, sparse_bound] only and
/// sketches are hash maps over the universe.
CountEstimate count_sparse_ov_approx(const VectorFamily& a, const VectorFamily& b, const Rat& eps,
                                     const SketchOptions& options = {});

/// sum over tuples of q(<u_1, ..., u_k>). Quadratic (or worse) in n; a second
/// evaluation route that must equal estimate_tuple_count exactly.
Rat direct_poly_count(std::span<const VectorFamily> families, const OrPolynomial& p);
Rat direct_poly_count(const VectorFamily& a, const VectorFamily& b, const OrPolynomial& p);

/// Randomized baseline: fraction of `trials` uniform pairs that are orthogonal,
/// scaled by |A| |B|. By Hoeffding the error exceeds t |A| |B| with probability
/// at most 2 exp(-2 trials t^2). For benchmark comparison only.
double sample_count_estimate(const VectorFamily& a, const VectorFamily& b, std::size_t trials, SeededRng& rng);

}  // namespace ovkit
