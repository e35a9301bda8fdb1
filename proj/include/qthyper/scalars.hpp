#pragma once

// Scalar q-functions over exact rationals: finite and certified-infinite
// q-Pochhammer symbols, q-Gamma at integer arguments, the shifted product
// Gamma_{q,n}, and ordinary rising factorials.

#include <optional>
#include <stdexcept>
#include <string>

#include "qthyper/rational.hpp"

namespace qthyper {

/// A rational approximation together with a certified bound on its
/// distance from the true value: true value in [value - tail_bound, value + tail_bound].
struct TruncatedValue {
  Rational value = 0;
  Rational tail_bound = 0;

  TruncatedValue() = default;
  TruncatedValue(Rational v, Rational e = 0) : value(std::move(v)), tail_bound(std::move(e)) {
    if (tail_bound < 0) throw std::invalid_argument("negative tail bound");
  }

  bool exact() const { return tail_bound == 0; }
  Rational lower() const { return value - tail_bound; }
  Rational upper() const { return value + tail_bound; }
  bool contains(const Rational& x) const { return abs(x - value) <= tail_bound; }

  friend TruncatedValue operator+(const TruncatedValue& a, const TruncatedValue& b) {
    return {a.value + b.value, a.tail_bound + b.tail_bound};
  }
  friend TruncatedValue operator-(const TruncatedValue& a, const TruncatedValue& b) {
    return {a.value - b.value, a.tail_bound + b.tail_bound};
  }
  friend TruncatedValue operator*(const TruncatedValue& a, const TruncatedValue& b) {
    return {a.value * b.value,
            abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound};
  }
  /// Requires the divisor interval to exclude zero.
  friend TruncatedValue operator/(const TruncatedValue& a, const TruncatedValue& b) {
    Rational den = abs(b.value);
    if (den <= b.tail_bound) throw std::domain_error("division by an interval containing zero");
    Rational err = (a.tail_bound * den + abs(a.value) * b.tail_bound) / (den * (den - b.tail_bound));
    return {a.value / b.value, err};
  }
  TruncatedValue& operator*=(const TruncatedValue& b) { return *this = *this * b; }
  TruncatedValue& operator/=(const TruncatedValue& b) { return *this = *this / b; }
  TruncatedValue& operator+=(const TruncatedValue& b) { return *this = *this + b; }
};

/// A specialization point for (q, t). When `k` is present, t = q^k exactly.
struct ParamPoint {
  Rational q;
  Rational t;
  std::optional<long> k;

  ParamPoint(Rational q_, Rational t_) : q(std::move(q_)), t(std::move(t_)) { validate(); }

  static ParamPoint with_k(const Rational& q, long k) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    ParamPoint p(q, pow(q, k), k);
    return p;
  }

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;

 private:
  ParamPoint(Rational q_, Rational t_, long k_) : q(std::move(q_)), t(std::move(t_)), k(k_) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0,1)");
    if (!(t > 0 && t <= 1)) throw std::invalid_argument("t must lie in (0,1]");
  }
  void validate() const {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0,1)");
    if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
  }
};

/// (u; q)_m = prod_{i<m} (1 - u q^i).
inline Rational qpoch_finite(const Rational& u, const Rational& q, long m) {
  if (m < 0) throw std::invalid_argument("qpoch_finite: negative length");
  Rational r = 1, f = u;
  for (long i = 0; i < m; ++i) {
    r *= 1 - f;
    f *= q;
  }
  return r;
}

/// (u; q)_infinity truncated at the first N whose certified tail bound is <= tol.
///
/// With z_i = u q^i and L = |u| q^N / ((1-q)(1-|u|q^N)), the omitted factor R
/// satisfies |log R| <= L, hence |R - 1| <= L/(1-L) and the truncation error of
/// the partial product P_N is at most |P_N| L/(1-L).
inline TruncatedValue qpoch_infinite(const Rational& u, const Rational& q, const Rational& tol) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("qpoch_infinite: q must lie in (0,1)");
  if (abs(u) >= 1) throw std::invalid_argument("qpoch_infinite: requires |u| < 1");
  if (tol <= 0) throw std::invalid_argument("qpoch_infinite: tol must be positive");
  if (u == 0) return {1, 0};
  Rational au = abs(u);
  Rational prod = 1, z = u, az = au;  // z = u q^N, az = |z|
  for (;;) {
    if (az < 1) {
      Rational L = az / ((1 - q) * (1 - az));
      if (L < 1) {
        Rational bound = abs(prod) * L / (1 - L);
        if (bound <= tol) return {prod, bound};
      }
    }
    prod *= 1 - z;
    z *= q;
    az *= q;
  }
}

/// Gamma_q(x) = (q;q)_{x-1} / (1-q)^{x-1} for positive integer x (exact).
/// Non-integer x would need q^x, which is irrational for rational q in general.
inline TruncatedValue qgamma(const Rational& x, const Rational& q, const Rational& /*tol*/ = Rational(0)) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("qgamma: q must lie in (0,1)");
  if (x.get_den() != 1) throw std::domain_error("qgamma: q^x is not rational for non-integer x");
  if (x <= 0) throw std::domain_error("qgamma: pole at nonpositive integer");
  long m = x.get_num().get_si() - 1;
  return {qpoch_finite(q, q, m) / pow(1 - q, m), 0};
}

/// Gamma_{q,n}(a') = prod_{i=1}^n Gamma_q(a' - k(i-1)).
inline TruncatedValue qgamma_n(const Rational& aprime, long k, long n, const Rational& q,
                               const Rational& tol = Rational(0)) {
  if (n < 1) throw std::invalid_argument("qgamma_n: n must be positive");
  TruncatedValue r{1, 0};
  for (long i = 1; i <= n; ++i) r *= qgamma(aprime - k * (i - 1), q, tol);
  return r;
}

/// (x+1)_a = prod_{j=1}^a (x + j).
inline Rational rising_factorial(const Rational& x, long a) {
  if (a < 0) throw std::invalid_argument("rising_factorial: negative length");
  Rational r = 1;
  for (long j = 1; j <= a; ++j) r *= x + j;
  return r;
}

}  // namespace qthyper
