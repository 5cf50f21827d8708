#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ovkit/core/bit_vector.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/core/parallel.hpp"
#include "ovkit/core/rational.hpp"
#include "ovkit/core/rng.hpp"
#include "ovkit/core/vector_family.hpp"

namespace ovkit {

inline constexpr std::size_t kDefaultProofCap = std::size_t{1} << 20;

/// Threshold factor for gap kappa: (2 + 3 kappa) / 5, which is 8/5 at kappa = 2.
Rat gap_threshold_factor(const Rat& kappa);

/// Shared randomness of the Gap-Inner-Product protocol: p_i ~ Pois(k / tau) on every
/// coordinate, and the proof threshold factor * k.
struct GapIpChallenge {
  std::size_t dim = 0;
  std::size_t tau = 1;
  std::size_t k = 1;
  std::vector<std::uint32_t> weights;
  Rat threshold;
  /// ceil(threshold): the least integer weight sum that qualifies.
  std::uint64_t min_weight = 0;
};

GapIpChallenge make_gap_ip_challenge(std::size_t tau, std::size_t k, std::vector<std::uint32_t> weights,
                                     const Rat& kappa = Rat(2));
GapIpChallenge sample_gap_ip_challenge(std::size_t d, std::size_t tau, std::size_t k, SeededRng& rng,
                                       const Rat& kappa = Rat(2));

/// A qualifying coordinate set, coords increasing.
struct Proof {
  std::vector<std::size_t> coords;
  std::uint64_t weight_sum = 0;

  friend bool operator==(const Proof&, const Proof&) = default;
};
/// Inclusion-minimal qualifying sets, ordered by size and then lexicographically.
using ProofList = std::vector<Proof>;

/// All inclusion-minimal S with weight sum >= threshold over positive-weight coordinates.
/// More than `cap` proofs throws ProofSpaceOverflow.
ProofList enumerate_min_proofs(const GapIpChallenge& c, std::size_t cap = kDefaultProofCap);

/// The minimal proofs contained in the support of at least one member of a and one of b.
/// Any other proof has an all-zero accept column on one side.
ProofList enumerate_min_proofs_restricted(const GapIpChallenge& c, const VectorFamily& a, const VectorFamily& b,
                                          std::size_t cap = kDefaultProofCap);

/// Bit j is [proofs[j] within support(x)].
BitVector accept_vector(const BitVector& x, const GapIpChallenge& c, const ProofList& proofs);

/// Direct protocol run: some qualifying S lies in X AND Y, i.e. the weight of X AND Y
/// reaches the threshold.
bool protocol_accepts(const GapIpChallenge& c, const BitVector& x, const BitVector& y);

struct ProtocolErrors {
  /// Pr[reject] at |X AND Y| = 2 tau.
  double completeness_error = 0;
  /// Pr[accept] at |X AND Y| = tau.
  double soundness_error = 0;
  std::size_t trials = 0;
};
/// Monte Carlo over `trials` challenges at the two extremal intersection sizes.
ProtocolErrors estimate_protocol_errors(std::size_t d, std::size_t tau, std::size_t k, std::size_t trials,
                                        SeededRng& rng);

/// ceil(100 ln(1/eps)).
std::size_t calibration_envelope(const Rat& eps);

/// Smallest k on a doubling-then-binary schedule whose estimated errors are both <= eps/2.
/// Candidate k is tested on rng.derive(k), so the answer is a function of (eps, tau, d, trials, seed).
/// Falls back to the envelope when nothing below it passes.
std::size_t calibrate_k(const Rat& eps, std::size_t tau, std::size_t d, std::size_t trials, const SeededRng& rng);

/// accepts[j] lists the members that accept proof j.
using AcceptLists = std::vector<std::vector<std::uint32_t>>;

/// An AM protocol as seen by the satisfying-pair engine: a round is the shared randomness
/// plus the proof space, and each side's acceptance is a member x proof incidence.
template <class P>
concept AmProtocol = requires(const P& p, SeededRng& rng, const VectorFamily& f, const typename P::Round& r) {
  { p.draw_round(rng, f, f) } -> std::same_as<typename P::Round>;
  { P::proof_count(r) } -> std::convertible_to<std::size_t>;
  { p.accept_lists(r, f) } -> std::same_as<AcceptLists>;
  { p.error() } -> std::convertible_to<Rat>;
};

/// The Poisson Gap-Inner-Product protocol: accepts when <x, y> >= 2 tau, rejects
/// when <x, y> <= tau, each with error at most eps once k is calibrated.
class GapIpProtocol {
 public:
  struct Round {
    GapIpChallenge challenge;
    ProofList proofs;
  };

  GapIpProtocol(std::size_t tau, std::size_t k, Rat eps, std::size_t proof_cap = kDefaultProofCap,
                bool restrict_proofs = true);

  std::size_t tau() const noexcept { return tau_; }
  std::size_t k() const noexcept { return k_; }
  Rat error() const { return eps_; }

  Round draw_round(SeededRng& rng, const VectorFamily& a, const VectorFamily& b) const;
  static std::size_t proof_count(const Round& r) { return r.proofs.size(); }
  AcceptLists accept_lists(const Round& r, const VectorFamily& family) const;

 private:
  std::size_t tau_;
  std::size_t k_;
  Rat eps_;
  std::size_t proof_cap_;
  bool restrict_;
};

using GroupedAcceptMatrix = Eigen::SparseMatrix<std::int64_t>;

/// g x |P| matrix: entry (i, j) counts the members of group i accepting proof j.
GroupedAcceptMatrix grouped_accept_matrix(const AcceptLists& accepts, std::size_t members, std::size_t group_size);

/// max(1, floor(1 / (10 sqrt(eps)))), exactly.
std::size_t satisfying_pair_group_size(const Rat& eps);

/// ceil(c ln n), at least 1.
std::size_t majority_repetitions(std::size_t n, double c = 12.0);

struct SatisfyingPairResult {
  bool answer = false;
  std::size_t group_size = 1;
  std::size_t groups_a = 0;
  std::size_t groups_b = 0;
  std::size_t repetitions = 0;
  /// Repetitions actually run; the outcome was already decided when this is smaller.
  std::size_t repetitions_run = 0;
  std::uint32_t max_votes = 0;
  std::size_t max_proofs = 0;
  std::vector<std::string> warnings;
};

namespace detail {

void add_votes(const GroupedAcceptMatrix& ma, const GroupedAcceptMatrix& mb,
               Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>& votes);

inline constexpr std::size_t kRepetitionBatch = 8;

}  // namespace detail

/// Decides whether some (a, b) satisfies the protocol's predicate. Groups of size m,
/// per repetition the integer product M_A M_B^T of grouped accept matrices, and a yes
/// iff some group pair is positive in a strict majority of repetitions. Repetitions run
/// in fixed batches, stopping once the majority outcome is settled; repetition t uses
/// rng.derive(t), so neither the answer nor the report depends on `threads`.
template <AmProtocol P>
SatisfyingPairResult satisfying_pair(const VectorFamily& a, const VectorFamily& b, const P& protocol,
                                     const Rat& eps, std::size_t reps, const SeededRng& rng, unsigned threads = 1) {
  if (a.dim() != b.dim()) throw InvalidArgument("families must share a dimension");
  if (a.empty() || b.empty()) throw InvalidArgument("families must be non-empty");
  if (reps == 0) throw InvalidArgument("need at least one repetition");
  if (protocol.error() > eps) throw InvalidArgument("protocol error exceeds eps");

  SatisfyingPairResult out;
  out.group_size = satisfying_pair_group_size(eps);
  out.groups_a = (a.size() + out.group_size - 1) / out.group_size;
  out.groups_b = (b.size() + out.group_size - 1) / out.group_size;
  out.repetitions = reps;
  using Votes = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>;
  Votes votes = Votes::Zero(static_cast<Eigen::Index>(out.groups_a), static_cast<Eigen::Index>(out.groups_b));
  const std::uint32_t majority = static_cast<std::uint32_t>(reps / 2 + 1);

  std::size_t done = 0;
  while (done < reps) {
    const std::size_t batch = std::min(detail::kRepetitionBatch, reps - done);
    std::vector<Votes> partial(worker_count(batch, threads), Votes::Zero(votes.rows(), votes.cols()));
    std::vector<std::size_t> proof_counts(batch, 0);
    parallel_chunks(batch, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        SeededRng rep_rng = rng.derive(done + i);
        const auto round = protocol.draw_round(rep_rng, a, b);
        proof_counts[i] = P::proof_count(round);
        const auto ma = grouped_accept_matrix(protocol.accept_lists(round, a), a.size(), out.group_size);
        const auto mb = grouped_accept_matrix(protocol.accept_lists(round, b), b.size(), out.group_size);
        detail::add_votes(ma, mb, partial[w]);
      }
    });
    for (const auto& p : partial) votes += p;
    for (const auto c : proof_counts) out.max_proofs = std::max(out.max_proofs, c);
    done += batch;
    out.max_votes = votes.size() == 0 ? 0 : votes.maxCoeff();
    // Settled: a pair already has a majority, or none can reach one.
    if (out.max_votes >= majority || out.max_votes + (reps - done) < majority) break;
  }
  out.repetitions_run = done;
  out.answer = out.max_votes >= majority;

  // Fast rectangular multiplication would need 2^T <= (sqrt(eps) n)^0.1 with T the proof bits.
  const double n = static_cast<double>(std::max(a.size(), b.size()));
  const double proof_bits = std::log2(static_cast<double>(std::max<std::size_t>(out.max_proofs, 1)));
  const double budget = 0.1 * std::log2(std::max(1.0, std::sqrt(static_cast<double>(to_long_double(eps))) * n));
  if (proof_bits > budget)
    out.warnings.push_back("proof space exceeds the fast rectangular multiplication regime; blocked multiplication used");
  return out;
}

struct MaxIpOptions {
  /// Error of the gap protocol fed to calibrate_k.
  Rat protocol_eps = ratio(1, 2);
  std::size_t calibration_trials = 2000;
  std::size_t proof_cap = kDefaultProofCap;
  unsigned threads = 1;
};

struct MaxIpProbe {
  std::size_t tau = 0;
  bool answer = false;
  std::size_t repetitions_run = 0;
  std::size_t max_proofs = 0;
};

struct MaxIpResult {
  std::uint64_t v = 0;
  bool zero_test = false;
  std::size_t k = 0;
  std::size_t call_budget = 0;
  Rat per_call_delta;
  std::size_t repetitions = 0;
  std::size_t group_size = 1;
  std::vector<MaxIpProbe> probes;
  std::vector<std::string> warnings;
};

/// Majority repetitions so that all g_a * g_b group pairs are right with probability
/// >= 1 - delta_call, given per-pair error beta < 1/2 (Hoeffding and a union bound).
std::size_t repetitions_for(std::size_t group_pairs, const Rat& delta_call, const Rat& beta);

/// 2-approximation of Max(A, B): v <= Max <= 2v with probability >= 1 - delta.
MaxIpResult max_ip_approx(const VectorFamily& a, const VectorFamily& b, const Rat& delta, const SeededRng& rng,
                          const MaxIpOptions& options = {});

}  // namespace ovkit
