#include "ovkit/sketch.hpp"

#include <algorithm>
#include <string>

#include "ovkit/core/errors.hpp"
#include "ovkit/core/parallel.hpp"

namespace ovkit {

namespace {

// Visits (|S|, colex rank of S) for every S within `support` with |S| <= max_size.
// support must be sorted; elements are appended in increasing order so the
// element added at position t contributes C(s, t + 1) to the colex rank.
template <class Fn>
void for_each_small_subset(const std::vector<std::size_t>& support, std::size_t max_size, const SubsetIndexer& idx,
                           Fn&& fn) {
  fn(std::size_t{0}, std::uint64_t{0});
  if (max_size == 0) return;
  struct Frame {
    std::size_t next;
    std::size_t size;
    std::uint64_t rank;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    for (std::size_t i = f.next; i < support.size(); ++i) {
      const std::uint64_t rank = f.rank + idx.binom(support[i], f.size + 1);
      fn(f.size + 1, rank);
      if (f.size + 1 < max_size) stack.push_back({i + 1, f.size + 1, rank});
    }
  }
}

void check_same_shape(const Sketch& a, const Sketch& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw InvalidArgument("sketch shape mismatch: (" + std::to_string(a.dim()) + ", " + std::to_string(a.degree()) +
                          ") vs (" + std::to_string(b.dim()) + ", " + std::to_string(b.degree()) + ")");
}

SubsetIndexer checked_indexer(std::size_t dim, std::size_t degree) {
  if (dim == 0) throw InvalidArgument("sketch dimension must be positive");
  if (degree > dim) throw InvalidArgument("sketch degree exceeds dimension");
  return SubsetIndexer(dim, degree);
}

}  // namespace

Sketch::Sketch(std::size_t dim, std::size_t degree, SketchBackend backend, std::uint64_t dense_cap)
    : dim_(dim), degree_(degree), backend_(backend), indexer_(checked_indexer(dim, degree)) {
  if (backend_ == SketchBackend::dense) {
    if (indexer_.width() > dense_cap)
      throw ResourceLimit("dense sketch width " + std::to_string(indexer_.width()) + " exceeds cap " +
                          std::to_string(dense_cap));
    dense_.assign(indexer_.width(), 0);
  }
}

std::size_t Sketch::nonzero_count() const {
  if (backend_ == SketchBackend::dense)
    return static_cast<std::size_t>(std::count_if(dense_.begin(), dense_.end(), [](std::int64_t v) { return v != 0; }));
  return static_cast<std::size_t>(std::count_if(sparse_.begin(), sparse_.end(), [](const auto& kv) { return kv.second != 0; }));
}

std::int64_t Sketch::at(SubsetIndex s) const {
  if (s.size > degree_) throw InvalidArgument("subset larger than sketch degree");
  if (backend_ == SketchBackend::dense) return dense_[indexer_.flatten(s)];
  const auto it = sparse_.find(s);
  return it == sparse_.end() ? 0 : it->second;
}

void Sketch::add_vector(const BitVector& x) {
  if (x.dim() != dim_) throw InvalidArgument("vector dimension does not match sketch");
  const auto support = x.support();
  if (backend_ == SketchBackend::dense) {
    for_each_small_subset(support, degree_, indexer_,
                          [&](std::size_t size, std::uint64_t rank) { ++dense_[indexer_.class_offset(size) + rank]; });
  } else {
    for_each_small_subset(support, degree_, indexer_,
                          [&](std::size_t size, std::uint64_t rank) { ++sparse_[SubsetIndex{size, rank}]; });
  }
  ++count_;
  max_weight_ = std::max(max_weight_, support.size());
}

Sketch& Sketch::operator+=(const Sketch& other) {
  check_same_shape(*this, other);
  if (backend_ == SketchBackend::dense && other.backend_ == SketchBackend::dense) {
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += other.dense_[i];
  } else if (backend_ == SketchBackend::dense) {
    for (const auto& [s, v] : other.sparse_) dense_[indexer_.flatten(s)] += v;
  } else {
    other.for_each_nonzero([&](SubsetIndex s, std::int64_t v) { sparse_[s] += v; });
  }
  count_ += other.count_;
  max_weight_ = std::max(max_weight_, other.max_weight_);
  return *this;
}

bool operator==(const Sketch& a, const Sketch& b) {
  if (a.dim_ != b.dim_ || a.degree_ != b.degree_ || a.count_ != b.count_ || a.max_weight_ != b.max_weight_) return false;
  if (a.nonzero_count() != b.nonzero_count()) return false;
  bool equal = true;
  a.for_each_nonzero([&](SubsetIndex s, std::int64_t v) { equal = equal && b.at(s) == v; });
  return equal;
}

SketchBackend resolve_backend(std::size_t dim, std::size_t degree, const SketchOptions& options) {
  if (options.backend) return *options.backend;
  try {
    return SubsetIndexer(dim, degree).width() <= options.dense_cap ? SketchBackend::dense : SketchBackend::sparse;
  } catch (const ResourceLimit&) {
    return SketchBackend::sparse;
  }
}

Sketch sketch_vector(const BitVector& x, std::size_t degree, SketchBackend backend, std::uint64_t dense_cap) {
  Sketch s(x.dim(), degree, backend, dense_cap);
  s.add_vector(x);
  return s;
}

Sketch merge_sketches(const Sketch& a, const Sketch& b) { return a + b; }

Sketch sketch_family(const VectorFamily& family, std::size_t degree, const SketchOptions& options) {
  const SketchBackend backend = resolve_backend(family.dim(), degree, options);
  const std::size_t workers = worker_count(family.size(), options.threads);
  std::vector<Sketch> partial(workers, Sketch(family.dim(), degree, backend, options.dense_cap));
  parallel_chunks(family.size(), options.threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) partial[w].add_vector(family[i]);
  });
  Sketch total = std::move(partial.front());
  for (std::size_t w = 1; w < partial.size(); ++w) total += partial[w];
  return total;
}

std::size_t sketch_degree_for(const OrPolynomial& p) { return std::min(p.degree, p.dim); }

CountEstimate estimate_tuple_count(std::span<const Sketch> sketches, const OrPolynomial& p) {
  if (sketches.empty()) throw InvalidArgument("need at least one sketch");
  if (!p.certified) throw InvalidArgument("polynomial is not certified");
  const std::size_t degree = sketch_degree_for(p);
  if (p.elem_coeffs.size() <= degree) throw InvalidArgument("polynomial is missing elementary coefficients");
  for (const auto& s : sketches) {
    check_same_shape(sketches.front(), s);
    if (s.degree() != degree)
      throw InvalidArgument("sketch degree " + std::to_string(s.degree()) + " does not match polynomial (" +
                            std::to_string(degree) + ")");
    if (s.max_weight() > p.dim)
      throw InvalidArgument("sketched vector weight " + std::to_string(s.max_weight()) +
                            " exceeds the polynomial's certified range " + std::to_string(p.dim));
  }

  const auto driver = std::min_element(sketches.begin(), sketches.end(), [](const Sketch& a, const Sketch& b) {
    return a.nonzero_count() < b.nonzero_count();
  });
  std::vector<BigInt> class_sums(degree + 1, BigInt(0));
  driver->for_each_nonzero([&](SubsetIndex s, std::int64_t v) {
    BigInt prod = static_cast<long>(v);
    for (auto it = sketches.begin(); it != sketches.end(); ++it) {
      if (it == driver) continue;
      const std::int64_t w = it->at(s);
      if (w == 0) return;
      prod *= static_cast<long>(w);
    }
    class_sums[s.size] += prod;
  });

  CountEstimate out;
  out.value = 0;
  for (std::size_t j = 0; j <= degree; ++j) out.value += p.elem_coeffs[j] * Rat(class_sums[j]);
  BigInt total = 1;
  for (const auto& s : sketches) total *= static_cast<unsigned long>(s.count());
  out.error_bound = p.eps * Rat(total);
  out.eps = p.eps;
  out.arity = sketches.size();
  out.degree = degree;
  out.sketch_width = sketches.front().width();
  return out;
}

CountEstimate count_kov_approx(std::span<const VectorFamily> families, const Rat& eps, const SketchOptions& options) {
  if (families.size() < 2) throw InvalidArgument("need at least two families");
  for (const auto& f : families)
    if (f.dim() != families.front().dim()) throw InvalidArgument("families must share a dimension");
  const OrPolynomial p = build_or_polynomial(families.front().dim(), eps);
  std::vector<Sketch> sketches;
  sketches.reserve(families.size());
  for (const auto& f : families) sketches.push_back(sketch_family(f, sketch_degree_for(p), options));
  return estimate_tuple_count(sketches, p);
}

CountEstimate count_ov_approx(const VectorFamily& a, const VectorFamily& b, const Rat& eps, const SketchOptions& options) {
  const std::vector<VectorFamily> pair{a, b};
  return count_kov_approx(pair, eps, options);
}

CountEstimate count_sparse_ov_approx(const VectorFamily& a, const VectorFamily& b, const Rat& eps,
                                     const SketchOptions& options) {
  if (!a.is_sparse() || !b.is_sparse()) throw InvalidArgument("sparse counting needs families with a sparse bound");
  if (a.dim() != b.dim()) throw InvalidArgument("families must share a universe");
  const std::size_t bound = std::min(a.dim(), std::max(*a.sparse_bound(), *b.sparse_bound()));
  const OrPolynomial p = build_or_polynomial(bound, eps);
  SketchOptions sparse_options = options;
  if (!sparse_options.backend) sparse_options.backend = SketchBackend::sparse;
  const std::vector<Sketch> sketches{sketch_family(a, sketch_degree_for(p), sparse_options),
                                     sketch_family(b, sketch_degree_for(p), sparse_options)};
  return estimate_tuple_count(sketches, p);
}

Rat direct_poly_count(std::span<const VectorFamily> families, const OrPolynomial& p) {
  if (families.empty()) throw InvalidArgument("need at least one family");
  if (!p.certified) throw InvalidArgument("polynomial is not certified");
  const std::size_t dim = families.front().dim();
  for (const auto& f : families) {
    if (f.dim() != dim) throw InvalidArgument("families must share a dimension");
    if (f.max_weight() > p.dim) throw InvalidArgument("vector weight exceeds the polynomial's certified range");
  }
  for (const auto& f : families)
    if (f.empty()) return Rat(0);

  // Histogram of tuple inner products, then one exact evaluation of q per value.
  std::vector<std::uint64_t> histogram(dim + 1, 0);
  const std::size_t k = families.size();
  std::vector<std::size_t> pos(k, 0);
  std::vector<BitVector> prefix(k);
  prefix[0] = families[0][0];
  for (std::size_t i = 1; i < k; ++i) prefix[i] = prefix[i - 1] & families[i][0];
  while (true) {
    ++histogram[prefix[k - 1].popcount()];
    // Odometer step: advance the last family, carrying leftwards.
    std::size_t level = k;
    while (level-- > 0) {
      if (++pos[level] < families[level].size()) break;
      pos[level] = 0;
    }
    if (level == static_cast<std::size_t>(-1)) break;
    for (std::size_t i = level; i < k; ++i)
      prefix[i] = i == 0 ? families[0][pos[0]] : prefix[i - 1] & families[i][pos[i]];
  }
  Rat total = 0;
  for (std::size_t t = 0; t <= dim; ++t)
    if (histogram[t] != 0) total += Rat(static_cast<unsigned long>(histogram[t])) * eval_univariate(p, t);
  return total;
}

Rat direct_poly_count(const VectorFamily& a, const VectorFamily& b, const OrPolynomial& p) {
  const std::vector<VectorFamily> pair{a, b};
  return direct_poly_count(pair, p);
}

double sample_count_estimate(const VectorFamily& a, const VectorFamily& b, std::size_t trials, SeededRng& rng) {
  if (a.dim() != b.dim()) throw InvalidArgument("families must share a dimension");
  if (trials == 0) throw InvalidArgument("need at least one trial");
  if (a.empty() || b.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& x = a[rng.uniform_below(a.size())];
    const auto& y = b[rng.uniform_below(b.size())];
    if (inner_product(x, y) == 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials) * static_cast<double>(a.size()) *
         static_cast<double>(b.size());
}

}  // namespace ovkit
