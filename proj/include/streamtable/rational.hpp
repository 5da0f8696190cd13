#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace streamtable {

// All weights, coordinates and metrics are exact. Floats only appear when
// rendering or when importing solver output.
using Rational = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace detail

/// Returns true when the literal is a plain decimal (as opposed to "p/q" or
/// an integer); used to decide whether imported values are inexact.
inline bool is_decimal_literal(std::string_view text) {
  text = detail::trim(text);
  return text.find_first_of(".eE") != std::string_view::npos;
}

/// Parses "p/q", an integer, or a decimal with optional exponent. Decimals are
/// converted exactly, so "0.25" becomes 1/4.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = detail::trim(s.substr(0, slash));
    std::string_view den = detail::trim(s.substr(slash + 1));
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
    mpz_class p(std::string(num), 10);
    mpz_class q(std::string(den), 10);
    if (q == 0) return fail();
    Rational r(negative ? mpz_class(-p) : p, q);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!detail::all_digits(exp_text) || exp_text.size() > 6) return fail();
    long value = 0;
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), value);
    exponent = exp_negative ? -value : value;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if ((!int_part.empty() && !detail::all_digits(int_part)) ||
      (!frac_part.empty() && !detail::all_digits(frac_part))) {
    return fail();
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  exponent -= static_cast<long>(frac_part.size());
  Rational r;
  if (exponent >= 0) {
    r = Rational(mpz_class(mantissa * detail::pow10(static_cast<unsigned long>(exponent))));
  } else {
    r = Rational(mantissa, detail::pow10(static_cast<unsigned long>(-exponent)));
    r.canonicalize();
  }
  return r;
}

/// Canonical text form: "p/q", or just "p" for integers.
inline std::string to_string(const Rational& value) { return value.get_str(); }

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Closest rational to `value` whose denominator does not exceed
/// `max_denominator` (continued-fraction convergents plus the last
/// semiconvergent).
inline Rational limit_denominator(const Rational& value, const mpz_class& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  if (value.get_den() <= max_denominator) return value;

  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = value.get_num();
  mpz_class d = value.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), mpz_class(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
  Rational bound1(mpz_class(p0 + k * p1), mpz_class(q0 + k * q1));
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  Rational err1 = abs(Rational(bound1 - value));
  Rational err2 = abs(Rational(bound2 - value));
  return err2 <= err1 ? bound2 : bound1;
}

}  // namespace streamtable
