#include "ovkit/amsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ovkit/core/poisson.hpp"

namespace ovkit {

namespace {

struct Item {
  std::size_t coord;
  std::uint32_t weight;
};

// Positive-weight coordinates, heaviest first. Along a DFS path in this order the
// last element added is the lightest, so a qualifying set is minimal exactly when it
// stopped qualifying without that element.
std::vector<Item> sorted_items(const GapIpChallenge& c) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < c.weights.size(); ++i)
    if (c.weights[i] > 0) items.push_back({i, c.weights[i]});
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.weight > y.weight; });
  return items;
}

struct NoFilter {
  bool push(std::size_t) { return true; }
  void pop() {}
};

// Keeps the members of a and b whose support contains the current partial set.
class MemberFilter {
 public:
  MemberFilter(const VectorFamily& a, const VectorFamily& b)
      : cols_a_(a.coordinate_columns()), cols_b_(b.coordinate_columns()) {
    stack_a_.push_back(BitVector::ones(a.size()));
    stack_b_.push_back(BitVector::ones(b.size()));
  }
  bool push(std::size_t coord) {
    BitVector na = stack_a_.back() & cols_a_[coord];
    if (na.none()) return false;
    BitVector nb = stack_b_.back() & cols_b_[coord];
    if (nb.none()) return false;
    stack_a_.push_back(std::move(na));
    stack_b_.push_back(std::move(nb));
    return true;
  }
  void pop() {
    stack_a_.pop_back();
    stack_b_.pop_back();
  }

 private:
  std::vector<BitVector> cols_a_;
  std::vector<BitVector> cols_b_;
  std::vector<BitVector> stack_a_;
  std::vector<BitVector> stack_b_;
};

template <class Filter>
ProofList enumerate_with(const GapIpChallenge& c, std::size_t cap, Filter& filter) {
  if (cap == 0) throw InvalidArgument("proof cap must be positive");
  const std::vector<Item> items = sorted_items(c);
  std::vector<std::uint64_t> suffix(items.size() + 1, 0);
  for (std::size_t i = items.size(); i-- > 0;) suffix[i] = suffix[i + 1] + items[i].weight;

  ProofList proofs;
  std::vector<std::size_t> chosen;
  auto dfs = [&](auto&& self, std::size_t pos, std::uint64_t sum) -> void {
    for (std::size_t i = pos; i < items.size(); ++i) {
      if (sum + suffix[i] < c.min_weight) break;
      if (!filter.push(items[i].coord)) continue;
      chosen.push_back(items[i].coord);
      const std::uint64_t next = sum + items[i].weight;
      if (next >= c.min_weight) {
        if (proofs.size() == cap)
          throw ProofSpaceOverflow("more than " + std::to_string(cap) + " minimal proofs; raise eps or lower k");
        Proof p{chosen, next};
        std::sort(p.coords.begin(), p.coords.end());
        proofs.push_back(std::move(p));
      } else {
        self(self, i + 1, next);
      }
      chosen.pop_back();
      filter.pop();
    }
  };
  if (c.min_weight > 0) dfs(dfs, 0, 0);
  std::sort(proofs.begin(), proofs.end(), [](const Proof& x, const Proof& y) {
    return x.coords.size() != y.coords.size() ? x.coords.size() < y.coords.size() : x.coords < y.coords;
  });
  return proofs;
}

}  // namespace

Rat gap_threshold_factor(const Rat& kappa) {
  if (kappa <= 1) throw InvalidArgument("gap kappa must exceed 1");
  return (Rat(2) + 3 * kappa) / 5;
}

GapIpChallenge make_gap_ip_challenge(std::size_t tau, std::size_t k, std::vector<std::uint32_t> weights,
                                     const Rat& kappa) {
  if (tau == 0) throw InvalidArgument("tau must be at least 1");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  GapIpChallenge c;
  c.dim = weights.size();
  c.tau = tau;
  c.k = k;
  c.weights = std::move(weights);
  c.threshold = gap_threshold_factor(kappa) * Rat(static_cast<unsigned long>(k));
  c.min_weight = ceil_of(c.threshold).get_ui();
  return c;
}

GapIpChallenge sample_gap_ip_challenge(std::size_t d, std::size_t tau, std::size_t k, SeededRng& rng,
                                       const Rat& kappa) {
  if (tau == 0) throw InvalidArgument("tau must be at least 1");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  const SplitPoissonSampler sampler(ratio(static_cast<long>(k), static_cast<long>(tau)));
  std::vector<std::uint32_t> weights(d);
  for (auto& w : weights) w = static_cast<std::uint32_t>(sampler(rng));
  return make_gap_ip_challenge(tau, k, std::move(weights), kappa);
}

ProofList enumerate_min_proofs(const GapIpChallenge& c, std::size_t cap) {
  NoFilter filter;
  return enumerate_with(c, cap, filter);
}

ProofList enumerate_min_proofs_restricted(const GapIpChallenge& c, const VectorFamily& a, const VectorFamily& b,
                                          std::size_t cap) {
  if (a.dim() != c.dim || b.dim() != c.dim) throw InvalidArgument("family dimension does not match challenge");
  if (a.empty() || b.empty()) return {};
  MemberFilter filter(a, b);
  return enumerate_with(c, cap, filter);
}

BitVector accept_vector(const BitVector& x, const GapIpChallenge& c, const ProofList& proofs) {
  if (x.dim() != c.dim) throw InvalidArgument("vector dimension does not match challenge");
  BitVector out(proofs.size());
  for (std::size_t j = 0; j < proofs.size(); ++j)
    if (std::all_of(proofs[j].coords.begin(), proofs[j].coords.end(), [&](std::size_t i) { return x.test(i); }))
      out.set(j);
  return out;
}

bool protocol_accepts(const GapIpChallenge& c, const BitVector& x, const BitVector& y) {
  if (x.dim() != c.dim || y.dim() != c.dim) throw InvalidArgument("vector dimension does not match challenge");
  std::uint64_t sum = 0;
  (x & y).for_each_set([&](std::size_t i) { sum += c.weights[i]; });
  return c.min_weight > 0 && sum >= c.min_weight;
}

ProtocolErrors estimate_protocol_errors(std::size_t d, std::size_t tau, std::size_t k, std::size_t trials,
                                        SeededRng& rng) {
  if (2 * tau > d) throw InvalidArgument("need 2 tau <= d");
  if (trials == 0) throw InvalidArgument("need at least one trial");
  std::size_t missed = 0;
  std::size_t false_accepts = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const GapIpChallenge c = sample_gap_ip_challenge(d, tau, k, rng);
    const std::uint64_t low = std::accumulate(c.weights.begin(), c.weights.begin() + static_cast<std::ptrdiff_t>(tau),
                                              std::uint64_t{0});
    const std::uint64_t high = std::accumulate(c.weights.begin() + static_cast<std::ptrdiff_t>(tau),
                                               c.weights.begin() + static_cast<std::ptrdiff_t>(2 * tau), low);
    if (high < c.min_weight) ++missed;
    if (low >= c.min_weight) ++false_accepts;
  }
  ProtocolErrors e;
  e.trials = trials;
  e.completeness_error = static_cast<double>(missed) / static_cast<double>(trials);
  e.soundness_error = static_cast<double>(false_accepts) / static_cast<double>(trials);
  return e;
}

std::size_t calibration_envelope(const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InvalidArgument("eps must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(100.0L * std::log(1.0L / to_long_double(eps)) - 1e-12L));
}

std::size_t calibrate_k(const Rat& eps, std::size_t tau, std::size_t d, std::size_t trials, const SeededRng& rng) {
  if (trials < 1000) throw InvalidArgument("calibration needs at least 1000 trials");
  const std::size_t envelope = calibration_envelope(eps);
  const double half = static_cast<double>(to_long_double(eps)) / 2.0;
  auto passes = [&](std::size_t k) {
    SeededRng stream = rng.derive(k);
    const ProtocolErrors e = estimate_protocol_errors(d, tau, k, trials, stream);
    return e.completeness_error <= half && e.soundness_error <= half;
  };
  std::size_t hi = 1;
  while (hi < envelope && !passes(hi)) hi *= 2;
  if (hi >= envelope) {
    hi = envelope;
    if (!passes(hi)) return envelope;
  }
  std::size_t lo = hi / 2;  // fails (or 0)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

GapIpProtocol::GapIpProtocol(std::size_t tau, std::size_t k, Rat eps, std::size_t proof_cap, bool restrict_proofs)
    : tau_(tau), k_(k), eps_(std::move(eps)), proof_cap_(proof_cap), restrict_(restrict_proofs) {
  if (tau_ == 0 || k_ == 0) throw InvalidArgument("tau and k must be at least 1");
  if (eps_ <= 0 || eps_ >= 1) throw InvalidArgument("eps must lie in (0, 1)");
}

GapIpProtocol::Round GapIpProtocol::draw_round(SeededRng& rng, const VectorFamily& a, const VectorFamily& b) const {
  Round r;
  r.challenge = sample_gap_ip_challenge(a.dim(), tau_, k_, rng);
  r.proofs = restrict_ ? enumerate_min_proofs_restricted(r.challenge, a, b, proof_cap_)
                       : enumerate_min_proofs(r.challenge, proof_cap_);
  return r;
}

AcceptLists GapIpProtocol::accept_lists(const Round& r, const VectorFamily& family) const {
  if (family.dim() != r.challenge.dim) throw InvalidArgument("family dimension does not match challenge");
  const auto cols = family.coordinate_columns();
  AcceptLists out(r.proofs.size());
  BitVector members(family.size());
  for (std::size_t j = 0; j < r.proofs.size(); ++j) {
    members = BitVector::ones(family.size());
    for (const std::size_t i : r.proofs[j].coords) members &= cols[i];
    members.for_each_set([&](std::size_t k) { out[j].push_back(static_cast<std::uint32_t>(k)); });
  }
  return out;
}

GroupedAcceptMatrix grouped_accept_matrix(const AcceptLists& accepts, std::size_t members, std::size_t group_size) {
  if (group_size == 0) throw InvalidArgument("group size must be positive");
  const std::size_t groups = (members + group_size - 1) / group_size;
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  for (std::size_t j = 0; j < accepts.size(); ++j)
    for (const std::uint32_t k : accepts[j]) {
      if (k >= members) throw InvalidArgument("accept list names a member out of range");
      entries.emplace_back(static_cast<Eigen::Index>(k / group_size), static_cast<Eigen::Index>(j), 1);
    }
  GroupedAcceptMatrix m(static_cast<Eigen::Index>(groups), static_cast<Eigen::Index>(accepts.size()));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

std::size_t satisfying_pair_group_size(const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InvalidArgument("eps must lie in (0, 1)");
  // floor(1 / (10 sqrt(eps))) = isqrt(floor(1 / (100 eps))).
  BigInt q = floor_of(Rat(Rat(1) / (100 * eps)));
  mpz_sqrt(q.get_mpz_t(), q.get_mpz_t());
  return std::max<std::size_t>(1, q.get_ui());
}

std::size_t majority_repetitions(std::size_t n, double c) {
  if (n < 2) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c * std::log(static_cast<double>(n)))));
}

namespace detail {

void add_votes(const GroupedAcceptMatrix& ma, const GroupedAcceptMatrix& mb,
               Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>& votes) {
  const GroupedAcceptMatrix product = ma * mb.transpose();
  for (Eigen::Index col = 0; col < product.outerSize(); ++col)
    for (GroupedAcceptMatrix::InnerIterator it(product, col); it; ++it)
      if (it.value() > 0) ++votes(it.row(), it.col());
}

}  // namespace detail

std::size_t repetitions_for(std::size_t group_pairs, const Rat& delta_call, const Rat& beta) {
  if (delta_call <= 0 || delta_call >= 1) throw InvalidArgument("per-call delta must lie in (0, 1)");
  if (beta < 0 || beta >= ratio(1, 2)) throw InvalidArgument("per-pair error must be below 1/2");
  const long double gap = 0.5L - to_long_double(beta);
  const long double need =
      std::log(static_cast<long double>(std::max<std::size_t>(group_pairs, 1)) / to_long_double(delta_call)) /
      (2.0L * gap * gap);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(need)));
}

MaxIpResult max_ip_approx(const VectorFamily& a, const VectorFamily& b, const Rat& delta, const SeededRng& rng,
                          const MaxIpOptions& options) {
  if (a.dim() != b.dim()) throw InvalidArgument("families must share a dimension");
  if (a.empty() || b.empty()) throw InvalidArgument("families must be non-empty");
  if (delta <= 0 || delta >= 1) throw InvalidArgument("delta must lie in (0, 1)");
  const std::size_t d = a.dim();

  MaxIpResult out;
  // Sum over pairs of <a, b> = sum_i cntA_i cntB_i; zero iff every pair is orthogonal.
  const auto cols_a = a.coordinate_columns();
  const auto cols_b = b.coordinate_columns();
  BigInt total = 0;
  for (std::size_t i = 0; i < d; ++i)
    total += BigInt(static_cast<unsigned long>(cols_a[i].popcount())) *
             BigInt(static_cast<unsigned long>(cols_b[i].popcount()));
  if (total == 0) {
    out.zero_test = true;
    return out;
  }
  if (d == 1) {
    out.v = 1;
    return out;
  }

  // The completeness and soundness sums are Pois(2k) and Pois(k) whatever tau is,
  // so one calibration at tau = 1 serves every probe.
  out.k = calibrate_k(options.protocol_eps, 1, d, options.calibration_trials, rng.derive(0));
  out.group_size = satisfying_pair_group_size(options.protocol_eps);
  const Rat beta = Rat(static_cast<unsigned long>(out.group_size * out.group_size)) * options.protocol_eps / 2;
  out.call_budget = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(d)))) + 1;
  out.per_call_delta = delta / Rat(static_cast<unsigned long>(out.call_budget));
  const std::size_t ga = (a.size() + out.group_size - 1) / out.group_size;
  const std::size_t gb = (b.size() + out.group_size - 1) / out.group_size;
  out.repetitions = repetitions_for(ga * gb, out.per_call_delta, beta);

  // Invariant: a yes at tau means Max > tau, a no means Max < 2 tau.
  std::size_t lo = 1, hi = d, best = 0;
  while (lo <= hi) {
    const std::size_t tau = lo + (hi - lo) / 2;
    const GapIpProtocol protocol(tau, out.k, options.protocol_eps, options.proof_cap);
    const auto r = satisfying_pair(a, b, protocol, options.protocol_eps, out.repetitions, rng.derive(tau),
                                   options.threads);
    out.probes.push_back({tau, r.answer, r.repetitions_run, r.max_proofs});
    for (const auto& w : r.warnings)
      if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end()) out.warnings.push_back(w);
    if (r.answer) {
      best = tau;
      lo = tau + 1;
    } else {
      hi = tau - 1;
    }
  }
  out.v = best + 1;
  return out;
}

}  // namespace ovkit
