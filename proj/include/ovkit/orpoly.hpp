#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "ovkit/core/rational.hpp"

namespace ovkit {

/// Largest degree build_or_polynomial will construct.
inline constexpr std::size_t kMaxOrDegree = 64;

/// Univariate q with q(0) = 1 and |q(t)| <= eps on t = 1..dim, so that
/// q(sum z_i) approximates [OR(z) = 0] on {0,1}^dim.
///
/// power_coeffs[k] is the coefficient of t^k. elem_coeffs[j] is the weight of
/// the elementary symmetric polynomial e_j in q(sum z_i) = sum_j c_j e_j(z),
/// which is what the sketch counters consume: every monomial z_S of size j
/// carries the same coefficient c_j.
struct OrPolynomial {
  std::size_t dim = 1;
  Rat eps;
  std::size_t degree = 0;
  std::vector<Rat> power_coeffs;
  std::vector<Rat> elem_coeffs;
  bool certified = false;

  friend bool operator==(const OrPolynomial&, const OrPolynomial&) = default;
};

struct CertificationReport {
  Rat value_at_zero;
  /// max over t in [1, dim] of |q(t)|.
  Rat max_deviation;
  std::size_t worst_t = 0;
  bool certified = false;
};

/// Smallest D with T_D((d+1)/(d-1)) >= 1/eps, where T_D is the Chebyshev
/// polynomial of the first kind; 1 when d = 1. Evaluated exactly.
std::size_t choose_degree(std::size_t d, const Rat& eps);

/// q(t) = T_D(m(t)) / T_D(m(0)) with m(t) = (d+1-2t)/(d-1); q(t) = 1 - t for d = 1.
/// m maps {1..d} into [-1, 1] where |T_D| <= 1, so |q(t)| <= 1/T_D(m(0)) <= eps.
/// Throws ResourceLimit when D > kMaxOrDegree and CertificationError if the
/// exact check fails.
OrPolynomial build_or_polynomial(std::size_t d, const Rat& eps);

/// Exact evaluation at t = 0..dim. Does not modify p.
CertificationReport certify(const OrPolynomial& p);

/// certify(), then record the outcome in p.certified.
CertificationReport verify_or_polynomial(OrPolynomial& p);

/// Exact Horner evaluation of q at t.
Rat eval_univariate(const OrPolynomial& p, std::size_t t);

/// c_j = j! * sum_{k >= j} a_k S2(k, j), using s^k = sum_j S2(k,j) j! e_j(z)
/// for z in {0,1}^d with s = sum z_i. Entries with j > d multiply e_j = 0 and
/// are kept only so that the result has one entry per power coefficient.
std::vector<Rat> power_to_elementary(std::span<const Rat> power_coeffs, std::size_t d, std::size_t D);

nlohmann::json to_json(const OrPolynomial& p);
/// Parses and re-certifies; the stored "certified" flag is ignored.
OrPolynomial or_polynomial_from_json(const nlohmann::json& j);

}  // namespace ovkit
