#pragma once

// Exact rational scalars. Everything in qthyper is computed over Q; the
// GMP rational type is canonical (lowest terms, positive denominator) after
// every arithmetic operation we perform through the helpers below.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qthyper {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

/// x^e for any integer e; x^0 = 1 (including 0^0). Negative e requires x != 0.
inline Rational pow(const Rational& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("zero raised to a negative power");
    Rational inv = 1 / x;
    return pow(inv, -e);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

inline Integer factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Binomial coefficient C(n, k), zero outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// "p/q" (or "p") form, always in lowest terms.
inline std::string to_string(const Rational& x) { return x.get_str(10); }

/// Scientific decimal rendering with `digits` significant digits, rounded
/// toward zero. Deterministic: computed with integer arithmetic only.
inline std::string to_decimal(const Rational& x, int digits = 20) {
  if (x == 0) return "0";
  Rational a = abs(x);
  // Find e with 10^e <= a < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto ten_pow = [](long k) { return pow(Rational(10), k); };
  while (a >= ten_pow(e + 1)) ++e;
  while (a < ten_pow(e)) --e;
  Rational scaled = a * ten_pow(digits - 1 - e);
  Integer mant = scaled.get_num() / scaled.get_den();
  std::string m = mant.get_str();
  std::string out = x < 0 ? "-" : "";
  out += m.substr(0, 1);
  if (m.size() > 1) {
    std::string frac = m.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  out += "e" + std::to_string(e);
  return out;
}

inline double to_double(const Rational& x) { return x.get_d(); }

/// Parses "p/q", an integer, or a decimal with optional exponent
/// ("0.25", "1e-10", "-3.5E2") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
      throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal: " + s);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("bad rational literal: " + s);
    std::string ex = s.substr(i + 1);
    if (ex.empty()) throw std::invalid_argument("bad rational literal: " + s);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(ex, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
    if (used != ex.size()) throw std::invalid_argument("bad rational literal: " + s);
    scale += e;
  }
  Rational r(Integer(digits, 10));
  r *= pow(Rational(10), scale);
  return neg ? Rational(-r) : r;
}

}  // namespace qthyper
