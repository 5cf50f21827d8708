#include "ovkit/core/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "ovkit/core/errors.hpp"

namespace ovkit {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidArgument("malformed number '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidArgument("malformed number '" + std::string(whole) + "'");
  return BigInt(std::string(digits));
}

}  // namespace

Rat parse_rational(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw InvalidArgument("empty number");
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rat value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), whole);
    const BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(whole) + "'");
    value = Rat(num, den);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      const BigInt magnitude = parse_integer(exp_text, whole);
      if (magnitude > 4096) throw InvalidArgument("exponent too large in '" + std::string(whole) + "'");
      exponent = magnitude.get_si() * (exp_negative ? -1 : 1);
      text = text.substr(0, e);
    }
    std::string digits;
    long scale = 0;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto int_part = text.substr(0, dot);
      const auto frac_part = text.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw InvalidArgument("malformed number '" + std::string(whole) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      scale = static_cast<long>(frac_part.size());
    } else {
      digits = std::string(text);
    }
    BigInt num = parse_integer(digits, whole);
    exponent -= scale;
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rat(num, pow10) : Rat(num * pow10);
    value.canonicalize();
  }
  return negative ? Rat(-value) : value;
}

std::string to_string(const Rat& value) { return value.get_str(); }
std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_decimal(const Rat& value, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero.
  const Rat scaled = abs_value(value) * scale;
  BigInt q = floor_of(Rat(scaled + Rat(1, 2)));
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (value < 0 && q != 0) s.insert(0, "-");
  return s;
}

long double to_long_double(const Rat& value) {
  // Scale into range before dividing so huge numerators/denominators keep precision.
  const long num_exp = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2));
  const long den_exp = static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  BigInt num = value.get_num();
  BigInt den = value.get_den();
  long shift = 0;
  if (num_exp > 64) {
    mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(num_exp - 64));
    shift += num_exp - 64;
  }
  if (den_exp > 64) {
    mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(den_exp - 64));
    shift -= den_exp - 64;
  }
  const long double n = std::stold(num.get_str());
  const long double d = std::stold(den.get_str());
  return std::ldexp(n / d, static_cast<int>(shift));
}

BigInt floor_of(const Rat& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

BigInt ceil_of(const Rat& value) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

}  // namespace ovkit
