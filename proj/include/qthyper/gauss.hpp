#pragma once

// Gauss summation for 2Phi_1 at the point x_i = c t^{1-i}, c = b/(a1 a2):
//   2Phi1(a1,a2;b;x) = prod_i (b t^{1-i}/a1)_inf (b t^{1-i}/a2)_inf
//                             / ((b t^{1-i})_inf (b t^{1-i}/(a1 a2))_inf).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthyper/macdonald.hpp"
#include "qthyper/report.hpp"
#include "qthyper/scalars.hpp"

namespace qthyper {

/// J*_lambda at x_i = c t^{1-i} (i = 1..n), via homogeneity and the principal
/// specialization: c^{|l|} t^{(1-n)|l|} t^{n(l)} (t^n;q,t)_l / (c_l c'_l).
inline Rational jstar_at_geometric_point(const Partition& lam, const Rational& c, int n, const ParamPoint& pp) {
  long w = lam.weight();
  Rational v = pow(c, w) * pow(pp.t, (1 - n) * w + nlambda(lam));
  v *= qpoch_partition(pow(pp.t, n), lam, pp);
  return v / (c_lambda(lam, pp) * c_prime_lambda(lam, pp));
}

/// Same value through the Gram-Schmidt polynomial, for cross-checking.
inline Rational jstar_at_geometric_point(const Partition& lam, const Rational& c, int n, const MacdonaldBasis& basis) {
  std::vector<Rational> x;
  for (int i = 1; i <= n; ++i) x.push_back(c * pow(basis.params().t, 1 - i));
  return evaluate(basis.Jstar(lam, n), x);
}

namespace detail {

/// N >= 0 with a == q^{-N}, if any (N bounded by the size of a).
inline std::optional<long> negative_q_power(const Rational& a, const Rational& q) {
  if (a < 1) return a == 1 ? std::optional<long>(0) : std::nullopt;
  Rational p = 1;
  for (long N = 0; N <= 4096 && p <= a; ++N, p /= q)
    if (p == a) return N;
  return std::nullopt;
}

/// Whether (u;q)_inf vanishes exactly, i.e. u = q^{-j} for some j >= 0.
inline bool infinite_product_vanishes(const Rational& u, const Rational& q) {
  return u > 0 && negative_q_power(u, q).has_value();
}

/// Upper bound for prod_{j>=0} (1 + u q^j), u >= 0.
inline Rational plus_product_upper(const Rational& u, const Rational& q) {
  Rational v = 1, uq = u;
  while (uq / (1 - q) > Rational(1, 4096)) {
    v *= 1 + uq;
    uq *= q;
  }
  // the rest is at most exp(x) <= 1/(1-x), x = u q^J/(1-q)
  return v / (1 - uq / (1 - q));
}

/// Lower bound for prod_{j>=0} (1 - v q^j), 0 <= v < 1.
inline Rational minus_product_lower(const Rational& v, const Rational& q) {
  Rational p = 1, vq = v;
  while (vq / (1 - q) > Rational(1, 4096)) {
    p *= 1 - vq;
    vq *= q;
  }
  return p * (1 - vq / (1 - q));
}

/// Bound on sum_{|lambda|>D, l(lambda)<=n} |term| using, box by box,
/// |(a)_lambda| <= prod_i (-|a| t^{1-i};q)_inf, |(b)_lambda| >= prod_i (|b| t^{1-i};q)_inf,
/// (t^n)_lambda <= 1, c_lambda c'_lambda >= ((t;q)_inf (q;q)_inf)^n and at most
/// C(w+n-1,n-1) partitions of w. Needs |c t^{1-n}| < 1 and |b| t^{1-n} < 1.
inline std::optional<Rational> gauss_tail_bound(const Rational& a1, const Rational& a2, const Rational& b, int n,
                                                const ParamPoint& pp, int D) {
  const Rational& q = pp.q;
  const Rational& t = pp.t;
  Rational rho = abs(b / (a1 * a2)) * pow(t, 1 - n);
  if (rho >= 1 || abs(b) * pow(t, 1 - n) >= 1) return std::nullopt;
  Rational C = 1;
  for (int i = 1; i <= n; ++i) {
    Rational ti = pow(t, 1 - i);
    C *= plus_product_upper(abs(a1) * ti, q) * plus_product_upper(abs(a2) * ti, q);
    C /= minus_product_lower(abs(b) * ti, q) * minus_product_lower(t, q) * minus_product_lower(q, q);
  }
  // sum_{w>D} C(w+n-1,n-1) rho^w = (1-rho)^{-n} - partial sum
  Rational partial = 0;
  for (long w = 0; w <= D; ++w) partial += Rational(binomial(w + n - 1, n - 1)) * pow(rho, w);
  return C * (1 / pow(1 - rho, n) - partial);
}

}  // namespace detail

struct GaussSeriesValue {
  TruncatedValue value;
  bool terminating = false;
  bool rigorous_tail = false;
};

/// Left side: the one-alphabet 2Phi1 series summed over |lambda| <= D, l(lambda) <= n.
inline GaussSeriesValue gauss_lhs(const Rational& a1, const Rational& a2, const Rational& b, int n,
                                  const ParamPoint& pp, int D) {
  const Rational& q = pp.q;
  const Rational& t = pp.t;
  const Rational c = b / (a1 * a2);
  std::optional<long> term_len = detail::negative_q_power(a1, q);
  if (!term_len) term_len = detail::negative_q_power(a2, q);

  auto term = [&](const Partition& lam) -> Rational {
    Rational den = qpoch_partition(b, lam, pp);
    if (den == 0) throw std::domain_error("gauss: lower parameter vanishes on " + lam.to_string());
    return qpoch_partition(a1, lam, pp) * qpoch_partition(a2, lam, pp) / den * pow(t, nlambda(lam)) *
           jstar_at_geometric_point(lam, c, n, pp);
  };

  GaussSeriesValue out;
  if (term_len) {
    // (q^{-N}; q, t)_lambda = 0 once lambda_1 > N: the series is finite.
    Rational sum = 0;
    for (int w = 0; w <= *term_len * n; ++w)
      for (const auto& lam : partitions_of(w, n, static_cast<int>(*term_len))) sum += term(lam);
    out.value = {sum, 0};
    out.terminating = true;
    out.rigorous_tail = true;
    return out;
  }

  Rational rate = abs(c) * pow(t, 1 - n);  // max_i |x_i|
  if (rate >= 1) throw std::domain_error("gauss: series diverges, |c t^{1-n}| >= 1");
  std::vector<Rational> block_abs(D + 1, Rational(0));
  Rational sum = 0;
  for (int w = 0; w <= D; ++w) {
    for (const auto& lam : partitions_of(w, n)) {
      Rational v = term(lam);
      sum += v;
      block_abs[w] += abs(v);
    }
  }

  Rational tail;
  std::optional<Rational> box_bound = detail::gauss_tail_bound(a1, a2, b, n, pp, D);
  if (n == 1) {
    // term_{m+1}/term_m = c (1-a1 q^m)(1-a2 q^m) / ((1-b q^m)(1-q^{m+1})); bound it for m >= D.
    Rational qD = pow(q, D);
    if (abs(b) * qD >= 1) throw std::domain_error("gauss: truncation degree too small for a tail bound");
    Rational rho = abs(c) * (1 + abs(a1) * qD) * (1 + abs(a2) * qD) / ((1 - abs(b) * qD) * (1 - q * qD));
    if (rho >= 1) throw std::domain_error("gauss: truncation degree too small for a tail bound");
    tail = block_abs[D] * rho / (1 - rho);
    if (box_bound && *box_bound < tail) tail = *box_bound;
    out.rigorous_tail = true;
  } else if (box_bound) {
    tail = *box_bound;
    out.rigorous_tail = true;
  } else {
    // Geometric estimate from the last observed block ratios, floored at the asymptotic rate.
    Rational rho = rate;
    for (int w = std::max(1, D - 3); w <= D; ++w)
      if (block_abs[w - 1] != 0) rho = std::max(rho, Rational(block_abs[w] / block_abs[w - 1]));
    if (rho >= 1) throw std::domain_error("gauss: truncation degree too small for a tail estimate");
    tail = block_abs[D] * rho / (1 - rho);
  }
  out.value = {sum, tail};
  return out;
}

/// Right side: product of infinite q-Pochhammer ratios, exact when terminating.
inline TruncatedValue gauss_rhs(const Rational& a1, const Rational& a2, const Rational& b, int n,
                                const ParamPoint& pp, const Rational& tol) {
  const Rational& q = pp.q;
  const Rational& t = pp.t;
  std::optional<long> N1 = detail::negative_q_power(a1, q), N2 = detail::negative_q_power(a2, q);
  if (N1 || N2) {
    long N = N1 ? *N1 : *N2;
    const Rational& other = N1 ? a2 : a1;
    Rational v = 1;
    for (int i = 1; i <= n; ++i) {
      Rational bt = b * pow(t, 1 - i);
      v *= qpoch_finite(bt / other, q, N) / qpoch_finite(bt, q, N);
    }
    return {v, 0};
  }
  for (int i = 1; i <= n; ++i) {
    Rational bt = b * pow(t, 1 - i);
    if (detail::infinite_product_vanishes(bt / a1, q) || detail::infinite_product_vanishes(bt / a2, q))
      return {0, 0};
  }
  Rational inner_tol = tol / (16 * n);
  TruncatedValue v{1, 0};
  for (int i = 1; i <= n; ++i) {
    Rational bt = b * pow(t, 1 - i);
    for (const Rational& u : std::vector<Rational>{bt / a1, bt / a2, bt, bt / (a1 * a2)})
      if (abs(u) >= 1) throw std::domain_error("gauss: infinite product argument " + to_string(u) + " outside |u|<1");
    v *= qpoch_infinite(bt / a1, q, inner_tol) * qpoch_infinite(bt / a2, q, inner_tol);
    v /= qpoch_infinite(bt, q, inner_tol) * qpoch_infinite(bt / (a1 * a2), q, inner_tol);
  }
  return v;
}

/// Certified comparison of both sides of the Gauss summation.
inline CheckReport gauss_check(const Rational& a1, const Rational& a2, const Rational& b, int n, const ParamPoint& pp,
                               int D, const Rational& tol) {
  ParamList params{{"a1", to_string(a1)}, {"a2", to_string(a2)}, {"b", to_string(b)}, {"n", std::to_string(n)},
                   {"q", to_string(pp.q)},  {"t", to_string(pp.t)},  {"D", std::to_string(D)}};
  GaussSeriesValue lhs = gauss_lhs(a1, a2, b, n, pp, D);
  TruncatedValue rhs = gauss_rhs(a1, a2, b, n, pp, tol);
  if (lhs.terminating && rhs.exact()) {
    CheckReport r = exact_report("gauss_4_1", params, lhs.value.value, rhs.value);
    r.detail = "terminating; " + (r.detail.empty() ? std::string("exact equality") : r.detail);
    return r;
  }
  CheckReport r = certified_report("gauss_4_1", params, lhs.value, rhs, tol);
  r.detail += lhs.rigorous_tail ? ", series tail certified" : ", series tail is a geometric estimate";
  return r;
}

}  // namespace qthyper
