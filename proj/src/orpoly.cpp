#include "ovkit/orpoly.hpp"

#include <string>

#include "ovkit/core/combinatorics.hpp"
#include "ovkit/core/errors.hpp"

namespace ovkit {

namespace {

void check_inputs(std::size_t d, const Rat& eps) {
  if (d == 0) throw InvalidArgument("dimension must be positive");
  if (eps <= 0 || eps >= 1) throw InvalidArgument("eps must lie in (0, 1)");
}

using Poly = std::vector<Rat>;

Poly poly_axpy_shift(const Poly& p, const Rat& constant, const Rat& linear) {
  // (constant + linear * t) * p(t)
  Poly out(p.size() + 1, Rat(0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += constant * p[k];
    out[k + 1] += linear * p[k];
  }
  return out;
}

}  // namespace

std::size_t choose_degree(std::size_t d, const Rat& eps) {
  check_inputs(d, eps);
  if (d == 1) return 1;
  const Rat x = ratio(static_cast<long>(d + 1), static_cast<long>(d - 1));
  const Rat target = 1 / eps;
  Rat prev = 1;  // T_0(x)
  Rat cur = x;   // T_1(x)
  std::size_t degree = 1;
  while (cur < target) {
    Rat next = 2 * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
    ++degree;
  }
  return degree;
}

OrPolynomial build_or_polynomial(std::size_t d, const Rat& eps) {
  OrPolynomial p;
  p.dim = d;
  p.eps = eps;
  p.degree = choose_degree(d, eps);
  if (p.degree > kMaxOrDegree)
    throw ResourceLimit("OR polynomial degree " + std::to_string(p.degree) + " exceeds cap " +
                        std::to_string(kMaxOrDegree));

  if (d == 1) {
    p.power_coeffs = {Rat(1), Rat(-1)};
  } else {
    // m(t) = alpha + beta t; T_k(m(t)) by the three-term recurrence on polynomials in t.
    const Rat alpha = ratio(static_cast<long>(d + 1), static_cast<long>(d - 1));
    const Rat beta = ratio(-2, static_cast<long>(d - 1));
    Poly prev{Rat(1)};
    Poly cur{alpha, beta};
    for (std::size_t k = 2; k <= p.degree; ++k) {
      Poly next = poly_axpy_shift(cur, 2 * alpha, 2 * beta);
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
      prev = std::move(cur);
      cur = std::move(next);
    }
    const Rat normalizer = cur[0];  // T_D(m(0))
    for (auto& a : cur) a /= normalizer;
    p.power_coeffs = std::move(cur);
  }
  p.elem_coeffs = power_to_elementary(p.power_coeffs, d, p.degree);

  const auto report = verify_or_polynomial(p);
  if (!report.certified)
    throw CertificationError("OR polynomial failed certification at t = " + std::to_string(report.worst_t),
                             report.worst_t);
  return p;
}

Rat eval_univariate(const OrPolynomial& p, std::size_t t) {
  Rat acc = 0;
  const Rat x(static_cast<unsigned long>(t));
  for (std::size_t k = p.power_coeffs.size(); k-- > 0;) acc = acc * x + p.power_coeffs[k];
  return acc;
}

CertificationReport certify(const OrPolynomial& p) {
  CertificationReport report;
  report.value_at_zero = eval_univariate(p, 0);
  report.max_deviation = 0;
  for (std::size_t t = 1; t <= p.dim; ++t) {
    const Rat dev = abs_value(eval_univariate(p, t));
    if (t == 1 || dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_t = t;
    }
  }
  report.certified = report.value_at_zero == 1 && report.max_deviation <= p.eps;
  if (report.value_at_zero != 1) report.worst_t = 0;
  return report;
}

CertificationReport verify_or_polynomial(OrPolynomial& p) {
  auto report = certify(p);
  p.certified = report.certified;
  return report;
}

std::vector<Rat> power_to_elementary(std::span<const Rat> power_coeffs, std::size_t d, std::size_t D) {
  if (d == 0) throw InvalidArgument("dimension must be positive");
  if (power_coeffs.size() != D + 1) throw InvalidArgument("expected D + 1 power coefficients");
  const auto s2 = stirling2_table(D);
  std::vector<Rat> elem(D + 1, Rat(0));
  for (std::size_t j = 0; j <= D; ++j) {
    Rat acc = 0;
    for (std::size_t k = j; k <= D; ++k) acc += power_coeffs[k] * Rat(s2[k][j]);
    elem[j] = acc * Rat(factorial(j));
  }
  return elem;
}

nlohmann::json to_json(const OrPolynomial& p) {
  nlohmann::json j;
  j["d"] = p.dim;
  j["eps"] = to_string(p.eps);
  j["degree"] = p.degree;
  auto& power = j["power_coeffs"] = nlohmann::json::array();
  for (const auto& a : p.power_coeffs) power.push_back(to_string(a));
  auto& elem = j["elem_coeffs"] = nlohmann::json::array();
  for (const auto& c : p.elem_coeffs) elem.push_back(to_string(c));
  j["certified"] = p.certified;
  return j;
}

OrPolynomial or_polynomial_from_json(const nlohmann::json& j) {
  OrPolynomial p;
  try {
    p.dim = j.at("d").get<std::size_t>();
    p.eps = parse_rational(j.at("eps").get<std::string>());
    p.degree = j.at("degree").get<std::size_t>();
    for (const auto& a : j.at("power_coeffs")) p.power_coeffs.push_back(parse_rational(a.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed polynomial document: ") + e.what());
  }
  if (p.dim == 0) throw InvalidArgument("polynomial dimension must be positive");
  if (p.eps <= 0 || p.eps >= 1) throw InvalidArgument("polynomial eps must lie in (0, 1)");
  if (p.power_coeffs.size() != p.degree + 1) throw InvalidArgument("polynomial has wrong number of coefficients");
  // Elementary coefficients are recomputed rather than trusted.
  p.elem_coeffs = power_to_elementary(p.power_coeffs, p.dim, p.degree);
  if (j.contains("elem_coeffs")) {
    std::vector<Rat> stored;
    for (const auto& c : j.at("elem_coeffs")) stored.push_back(parse_rational(c.get<std::string>()));
    if (stored != p.elem_coeffs) throw InvalidArgument("polynomial elem_coeffs disagree with power_coeffs");
  }
  verify_or_polynomial(p);
  return p;
}

}  // namespace ovkit
