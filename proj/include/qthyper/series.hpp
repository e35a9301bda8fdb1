#pragma once

// Truncated multivariate q-hypergeometric series in one and two alphabets of
// n variables each, the Cauchy-type kernel Pi, and the explicit product
// expansions they are compared against.

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qthyper/macdonald.hpp"
#include "qthyper/partition.hpp"
#include "qthyper/scalars.hpp"
#include "qthyper/sympoly.hpp"

namespace qthyper {

/// One-alphabet symmetric series, truncated at total degree `cap`.
struct TruncSeries {
  int cap = 0;
  SymPoly poly;  // monomial basis

  TruncSeries(int nvars, int cap_) : cap(cap_), poly(nvars, Basis::monomial) {}
  TruncSeries(SymPoly p, int cap_) : cap(cap_), poly(to_basis(p, Basis::monomial).truncated(cap_)) {}

  int nvars() const { return poly.nvars(); }
  SymPoly component(int d) const { return poly.homogeneous_part(d); }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.cap == b.cap && a.poly == b.poly; }
};

/// Two-alphabet series in the basis m_mu(x) m_nu(y), truncated at bidegree (cap_x, cap_y).
struct TruncSeries2 {
  using Key = std::pair<Partition, Partition>;

  int nvars = 1;
  int cap_x = 0;
  int cap_y = 0;
  std::map<Key, Rational> terms;

  TruncSeries2(int n, int cx, int cy) : nvars(n), cap_x(cx), cap_y(cy) {}

  void add_term(const Partition& mu, const Partition& nu, const Rational& c) {
    if (c == 0 || mu.length() > nvars || nu.length() > nvars) return;
    if (mu.weight() > cap_x || nu.weight() > cap_y) return;
    auto [it, inserted] = terms.try_emplace(Key{mu, nu}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  /// Adds c * f(x) g(y).
  void add_product(const SymPoly& f, const SymPoly& g, const Rational& c) {
    SymPoly mf = to_basis(f, Basis::monomial), mg = to_basis(g, Basis::monomial);
    for (const auto& [mu, a] : mf.terms())
      for (const auto& [nu, b] : mg.terms()) add_term(mu, nu, c * a * b);
  }
  Rational coeff(const Partition& mu, const Partition& nu) const {
    auto it = terms.find(Key{mu, nu});
    return it == terms.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const TruncSeries2& a, const TruncSeries2& b) {
    return a.nvars == b.nvars && a.cap_x == b.cap_x && a.cap_y == b.cap_y && a.terms == b.terms;
  }
};

/// First bidegree-ordered term where two series differ, if any.
inline std::optional<TruncSeries2::Key> first_difference(const TruncSeries2& a, const TruncSeries2& b) {
  auto ia = a.terms.begin(), ib = b.terms.begin();
  while (ia != a.terms.end() || ib != b.terms.end()) {
    if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) return ia->first;
    if (ia == a.terms.end() || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia, ++ib;
  }
  return std::nullopt;
}

inline std::optional<Partition> first_difference(const TruncSeries& a, const TruncSeries& b) {
  SymPoly d = a.poly - b.poly;
  if (d.is_zero()) return std::nullopt;
  return d.terms().begin()->first;
}

/// Parameters of rPhi_s with upper list a, lower list b, over n variables,
/// truncated at partition weight D.
struct HyperParams {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  ParamPoint params;
  int n = 1;
  int D = 0;

  HyperParams(std::vector<Rational> a, std::vector<Rational> b, ParamPoint pp, int n_, int D_)
      : upper(std::move(a)), lower(std::move(b)), params(std::move(pp)), n(n_), D(D_) {
    if (n < 1 || D < 0) throw std::invalid_argument("HyperParams: need n >= 1 and D >= 0");
    for (const auto& lam : partitions_upto(D, n))
      for (const auto& b : lower)
        if (qpoch_partition(b, lam, params) == 0)
          throw std::domain_error("lower parameter " + to_string(b) + " vanishes on partition " + lam.to_string());
  }

  /// (a;q,t)_lambda / (b;q,t)_lambda.
  Rational coefficient(const Partition& lam) const {
    return qpoch_partition(upper, lam, params) / qpoch_partition(lower, lam, params);
  }
};

/// Partitionwise two-alphabet data: coefficient of P_lambda(x) Q_lambda(y).
using PartitionSeries = std::map<Partition, Rational>;

/// rPhi_s(a; b; x) = sum_lambda (a)_lambda/(b)_lambda t^{n(lambda)} J*_lambda(x), |lambda| <= D.
inline TruncSeries phi_one(const HyperParams& hp, const MacdonaldBasis& basis) {
  if (!(basis.params() == hp.params)) throw std::invalid_argument("phi_one: basis built for different (q,t)");
  SymPoly acc(hp.n, Basis::monomial);
  for (const auto& lam : partitions_upto(hp.D, hp.n)) {
    Rational c = hp.coefficient(lam);
    if (c == 0) continue;
    acc += basis.Jstar(lam, hp.n) * (c * pow(hp.params.t, nlambda(lam)));
  }
  return TruncSeries(acc, hp.D);
}

/// Partitionwise form of the kernel rPhi_s(a; b; x, y):
/// sum_lambda (a)_lambda / ((b)_lambda (t^n)_lambda) P_lambda(x) Q_lambda(y).
inline PartitionSeries phi_two_partitionwise(const HyperParams& hp, int D_y) {
  PartitionSeries s;
  Rational tn = pow(hp.params.t, hp.n);
  for (const auto& lam : partitions_upto(std::min(hp.D, D_y), hp.n)) {
    Rational c = hp.coefficient(lam) / qpoch_partition(tn, lam, hp.params);
    if (c != 0) s.emplace(lam, c);
  }
  return s;
}

inline TruncSeries2 partitionwise_to_monomial(const PartitionSeries& s, const MacdonaldBasis& basis, int n,
                                              int cap_x, int cap_y) {
  TruncSeries2 out(n, cap_x, cap_y);
  for (const auto& [lam, c] : s) out.add_product(basis.P(lam, n), basis.Q(lam, n), c);
  return out;
}

/// Two-alphabet series through the P(x)Q(y)/(t^n)_lambda form.
inline TruncSeries2 phi_two(const HyperParams& hp, int D_y, const MacdonaldBasis& basis) {
  int cap = std::min(hp.D, D_y);
  return partitionwise_to_monomial(phi_two_partitionwise(hp, D_y), basis, hp.n, cap, cap);
}

/// Two-alphabet series through J*_lambda(x,y) = J*(x) J*(y) / eps_{t^n,t}(J*_lambda)
/// with the t^{n(lambda)} weighting of the original definition.
inline TruncSeries2 phi_two_via_jstar(const HyperParams& hp, int D_y, const MacdonaldBasis& basis) {
  int cap = std::min(hp.D, D_y);
  TruncSeries2 out(hp.n, cap, cap);
  Specialization principal{pow(hp.params.t, hp.n), hp.params.t};
  for (const auto& lam : partitions_upto(cap, hp.n)) {
    Rational c = hp.coefficient(lam);
    if (c == 0) continue;
    SymPoly js = basis.Jstar(lam, hp.n, Basis::power_sum);
    Rational denom = eps_ut(js, principal);
    out.add_product(js, js, c * pow(hp.params.t, nlambda(lam)) / denom);
  }
  return out;
}

/// Pi(x,y;q,t) = sum_lambda z_lambda^{-1} prod_i (1-t^{lambda_i})/(1-q^{lambda_i}) p_lambda(x) p_lambda(y),
/// truncated at |lambda| <= D, expanded in monomials of n variables per alphabet.
inline TruncSeries2 kernel_Pi(int n, const ParamPoint& pp, int D) {
  if (D < 0) throw std::invalid_argument("kernel_Pi: negative truncation");
  TruncSeries2 out(n, D, D);
  for (const auto& lam : partitions_upto(D, D)) {
    Rational c = 1 / z_lambda_qt(lam, pp);
    SymPoly pl = SymPoly::power_sum(n, lam);
    out.add_product(pl, pl, c);
  }
  return out;
}

/// sum_lambda J_lambda(x) J*_lambda(y), |lambda| <= D.
inline TruncSeries2 cauchy_sum(int n, const MacdonaldBasis& basis, int D) {
  TruncSeries2 out(n, D, D);
  for (const auto& lam : partitions_upto(D, n)) out.add_product(basis.J(lam, n), basis.Jstar(lam, n), 1);
  return out;
}

/// epsilon_{t^n,t} on the y alphabet by substituting y_i = t^{i-1}.
inline TruncSeries specialize_y_substitution(const TruncSeries2& s, const Rational& t) {
  std::vector<Rational> point;
  for (int i = 0; i < s.nvars; ++i) point.push_back(pow(t, i));
  std::map<Partition, Rational> memo;
  SymPoly out(s.nvars, Basis::monomial);
  for (const auto& [key, c] : s.terms) {
    auto it = memo.find(key.second);
    if (it == memo.end()) it = memo.emplace(key.second, evaluate_monomial(key.second, point)).first;
    out.add_term(key.first, c * it->second);
  }
  return TruncSeries(out, s.cap_x);
}

/// epsilon_{t^n,t} on the y alphabet through the power-sum homomorphism.
inline TruncSeries specialize_y_homomorphism(const TruncSeries2& s, const Rational& t) {
  std::map<Partition, SymPoly> by_x;
  for (const auto& [key, c] : s.terms) {
    auto it = by_x.try_emplace(key.first, s.nvars, Basis::monomial).first;
    it->second.add_term(key.second, c);
  }
  Specialization principal{pow(t, s.nvars), t};
  SymPoly out(s.nvars, Basis::monomial);
  for (const auto& [mu, g] : by_x) out.add_term(mu, eps_ut(m_to_p(g), principal));
  return TruncSeries(out, s.cap_x);
}

/// prod_i (a x_i; q)_inf / (x_i; q)_inf through degree D: by the q-binomial
/// theorem the coefficient of m_mu is prod_j (a;q)_{mu_j} / (q;q)_{mu_j}.
inline TruncSeries product_series(const Rational& a, int n, const Rational& q, int D) {
  SymPoly out(n, Basis::monomial);
  for (const auto& mu : partitions_upto(D, n)) {
    Rational c = 1;
    for (int part : mu.parts()) c *= qpoch_finite(a, q, part) / qpoch_finite(q, q, part);
    out.add_term(mu, c);
  }
  return TruncSeries(out, D);
}

/// Gaussian binomial [n choose k]_q.
inline Rational qbinomial(long n, long k, const Rational& q) {
  if (k < 0 || k > n) return 0;
  return qpoch_finite(q, q, n) / (qpoch_finite(q, q, k) * qpoch_finite(q, q, n - k));
}

/// prod_i 1/(x_i; q)_m through degree D, via 1/(x;q)_m = sum_j [m+j-1 choose j]_q x^j.
inline TruncSeries finite_inverse_product_series(long m, int n, const Rational& q, int D) {
  SymPoly out(n, Basis::monomial);
  for (const auto& mu : partitions_upto(D, n)) {
    Rational c = 1;
    for (int part : mu.parts()) c *= qbinomial(m + part - 1, part, q);
    out.add_term(mu, c);
  }
  return TruncSeries(out, D);
}

}  // namespace qthyper
