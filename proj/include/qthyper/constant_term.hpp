#pragma once

// The constant-term scalar product
//   <f, g>' = (1/n!) [f(x) g(x^{-1}) Delta(x)]_1,
//   Delta = prod_{i != j} (x_i/x_j; q)_k      (t = q^k),
// its normalization <f,g>'' = <f,g>'/<1,1>', the q-Dyson evaluation of <1,1>',
// and the checks of the norm conjecture and its kernel reformulations.

#include <stdexcept>
#include <string>
#include <vector>

#include "qthyper/laurent.hpp"
#include "qthyper/macdonald.hpp"
#include "qthyper/report.hpp"
#include "qthyper/series.hpp"

namespace qthyper {

inline void require_t_is_q_power(const ParamPoint& pp, long k) {
  if (k < 0) throw std::invalid_argument("t = q^k needs k >= 0");
  if (pp.t != pow(pp.q, k)) throw std::invalid_argument("constant-term product requires t = q^k");
}

/// Delta(x; q, q^k) as an explicit Laurent polynomial.
inline LaurentPoly delta_laurent(int n, long k, const Rational& q) {
  LaurentPoly d = LaurentPoly::constant(n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (long r = 0; r < k; ++r) {
        LaurentPoly f = LaurentPoly::constant(n, 1);
        Exponent e(n, 0);
        e[i] = 1;
        e[j] = -1;
        f.add_term(e, -pow(q, r));
        d *= f;
      }
    }
  }
  return d;
}

/// Precomputed Delta for one (n, k, q); evaluates <f,g>' and <f,g>''.
class ConstantTermProduct {
 public:
  ConstantTermProduct(int n, long k, const ParamPoint& pp) : n_(n), k_(k), pp_(pp), delta_(n) {
    if (n < 1) throw std::invalid_argument("constant-term product needs n >= 1");
    require_t_is_q_power(pp, k);
    delta_ = delta_laurent(n, k, pp.q);
    one_one_ = prime(SymPoly::constant(n, Basis::monomial, 1), SymPoly::constant(n, Basis::monomial, 1));
  }

  int nvars() const { return n_; }
  long k() const { return k_; }
  const ParamPoint& params() const { return pp_; }
  const LaurentPoly& delta() const { return delta_; }

  Rational prime(const SymPoly& f, const SymPoly& g) const {
    if (f.nvars() != n_ || g.nvars() != n_) throw std::invalid_argument("constant-term product: variable count");
    LaurentPoly fg = LaurentPoly::from_symmetric(f) * bar_involution(LaurentPoly::from_symmetric(g));
    return constant_term_of_product(fg, delta_) / Rational(factorial(n_));
  }
  Rational double_prime(const SymPoly& f, const SymPoly& g) const { return prime(f, g) / one_one_; }
  const Rational& one_one() const { return one_one_; }

 private:
  int n_;
  long k_;
  ParamPoint pp_;
  LaurentPoly delta_;
  Rational one_one_ = 0;
};

/// <f, g>'_{q,t} at t = q^k.
inline Rational scalar_ct(const SymPoly& f, const SymPoly& g, int n, long k, const ParamPoint& pp) {
  return ConstantTermProduct(n, k, pp).prime(f, g);
}

/// <f, g>''_{q,t} = <f,g>' / <1,1>'.
inline Rational scalar_ct_normalized(const SymPoly& f, const SymPoly& g, int n, long k, const ParamPoint& pp) {
  return ConstantTermProduct(n, k, pp).double_prime(f, g);
}

/// q-Dyson value of <1,1>' through its finite form at t = q^k:
/// (t;q)^n_inf / ((t^n;q)_inf (q;q)^{n-1}_inf) prod_{i<n} (1-t^i)^{-1}
///   = (q;q)_{nk-1} / ((q;q)_{k-1}^n prod_{i=1}^{n-1} (1 - q^{ik})).
inline TruncatedValue qdyson_value(int n, long k, const ParamPoint& pp, const Rational& /*tol*/ = Rational(0)) {
  require_t_is_q_power(pp, k);
  if (n < 1) throw std::invalid_argument("qdyson_value: n >= 1");
  if (n == 1) return {1, 0};
  if (k < 1) throw std::invalid_argument("qdyson_value: k >= 1");
  const Rational& q = pp.q;
  Rational v = qpoch_finite(q, q, n * k - 1) / pow(qpoch_finite(q, q, k - 1), n);
  for (int i = 1; i < n; ++i) v /= 1 - pow(q, i * k);
  return {v, 0};
}

/// The same closed form evaluated literally with certified infinite products.
inline TruncatedValue qdyson_value_infinite(int n, long k, const ParamPoint& pp, const Rational& tol) {
  require_t_is_q_power(pp, k);
  if (n < 1 || k < 1) throw std::invalid_argument("qdyson_value_infinite: n, k >= 1");
  const Rational& q = pp.q;
  TruncatedValue t_inf = qpoch_infinite(pp.t, q, tol);
  TruncatedValue tn_inf = qpoch_infinite(pow(pp.t, n), q, tol);
  TruncatedValue q_inf = qpoch_infinite(q, q, tol);
  TruncatedValue num{1, 0}, den = tn_inf;
  for (int i = 0; i < n; ++i) num *= t_inf;
  for (int i = 0; i + 1 < n; ++i) den *= q_inf;
  TruncatedValue v = num / den;
  Rational finite = 1;
  for (int i = 1; i < n; ++i) finite *= 1 - pow(pp.t, i);
  return v * TruncatedValue(1 / finite, 0);
}

namespace detail {
inline ParamList grid_params(const Partition* lam, int n, long k, const ParamPoint& pp) {
  ParamList p;
  if (lam) p.emplace_back("lambda", lam->to_string());
  p.emplace_back("n", std::to_string(n));
  p.emplace_back("k", std::to_string(k));
  p.emplace_back("q", to_string(pp.q));
  return p;
}
}  // namespace detail

/// Norm conjecture: <P,P>'' = eps_{t^n,t}(P_lambda) / eps_{q t^{n-1},t}(Q_lambda), exactly.
inline CheckReport check_C1(const Partition& lam, const ConstantTermProduct& ct, const MacdonaldBasis& basis) {
  const int n = ct.nvars();
  const auto& pp = basis.params();
  if (!(pp == ct.params())) throw std::invalid_argument("check_C1: mismatched (q,t)");
  if (lam.length() > n) throw std::invalid_argument("check_C1: partition longer than n");
  SymPoly P = basis.P(lam, n);
  Rational lhs = ct.double_prime(P, P);
  Rational num = eps_ut(basis.P(lam, n, Basis::power_sum), {pow(pp.t, n), pp.t});
  Rational den = eps_ut(basis.Q(lam, n, Basis::power_sum), {pp.q * pow(pp.t, n - 1), pp.t});
  return exact_report("c1", detail::grid_params(&lam, n, ct.k(), pp), lhs, num / den);
}

inline CheckReport check_C1(const Partition& lam, int n, long k, const ParamPoint& pp) {
  return check_C1(lam, ConstantTermProduct(n, k, pp), MacdonaldBasis(pp));
}

/// Exact agreement of <1,1>' with the q-Dyson closed form, and containment of
/// the exact value in the certified infinite-product evaluation.
inline CheckReport check_qdyson(const ConstantTermProduct& ct, const Rational& tol) {
  const auto& pp = ct.params();
  auto params = detail::grid_params(nullptr, ct.nvars(), ct.k(), pp);
  std::vector<CheckReport> parts;
  parts.push_back(exact_report("qdyson_exact", params, ct.one_one(), qdyson_value(ct.nvars(), ct.k(), pp).value));
  if (ct.nvars() > 1) {
    parts.push_back(certified_report("qdyson_infinite_products", params, TruncatedValue(ct.one_one(), 0),
                                     qdyson_value_infinite(ct.nvars(), ct.k(), pp, tol), 0));
  }
  CheckReport r = combine_reports("qdyson", params, parts);
  r.lhs = to_string(ct.one_one());
  r.rhs = to_string(qdyson_value(ct.nvars(), ct.k(), pp).value);
  return r;
}

/// Pi''(x,y) = sum_lambda P(x) P(y) / <P,P>'' against 1Phi0(q t^{n-1}; x, y),
/// plus the one-alphabet specialization against prod_i (x_i;q)^{-1}_{k(n-1)+1}.
inline CheckReport check_Pi_dprime(int D, const ConstantTermProduct& ct, const MacdonaldBasis& basis) {
  const int n = ct.nvars();
  const long k = ct.k();
  const auto& pp = basis.params();
  if (!(pp == ct.params())) throw std::invalid_argument("check_Pi_dprime: mismatched (q,t)");
  auto params = detail::grid_params(nullptr, n, k, pp);
  params.emplace_back("D", std::to_string(D));

  TruncSeries2 pi_dd(n, D, D);
  for (const auto& lam : partitions_upto(D, n)) {
    SymPoly P = basis.P(lam, n);
    pi_dd.add_product(P, P, 1 / ct.double_prime(P, P));
  }
  HyperParams hp({pp.q * pow(pp.t, n - 1)}, {}, pp, n, D);
  TruncSeries2 kernel = phi_two(hp, D, basis);

  std::vector<CheckReport> parts;
  auto series_report = [&](std::string name, auto diff) {
    CheckReport r;
    r.check = std::move(name);
    r.parameters = params;
    r.status = diff ? Status::fail : Status::pass;
    r.lhs = r.rhs = diff ? "mismatch" : "equal";
    return r;
  };
  auto d1 = first_difference(pi_dd, kernel);
  CheckReport r1 = series_report("eq_2_4", d1);
  if (d1) r1.detail = "first differing term m" + d1->first.to_string() + "(x) m" + d1->second.to_string() + "(y)";
  parts.push_back(r1);

  TruncSeries lhs = specialize_y_substitution(pi_dd, pp.t);
  TruncSeries rhs = finite_inverse_product_series(k * (n - 1) + 1, n, pp.q, D);
  auto d2 = first_difference(lhs, rhs);
  CheckReport r2 = series_report("eq_2_5", d2);
  if (d2) r2.detail = "first differing coefficient m" + d2->to_string();
  parts.push_back(r2);
  return combine_reports("eq_2_4", params, parts);
}

}  // namespace qthyper
