#pragma once

// Macdonald polynomials over a fixed exact specialization of (q, t).
//
// P_lambda is built by Gram-Schmidt on the monomial basis of each degree,
// processed along a linear extension of dominance, using the power-sum form
// of the (q,t) scalar product
//   <p_lambda, p_mu> = delta z_lambda prod_i (1 - q^{lambda_i}) / (1 - t^{lambda_i}).
// The result is independent of the extension chosen; both supported orders
// are exercised in the tests.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "qthyper/partition.hpp"
#include "qthyper/report.hpp"
#include "qthyper/scalars.hpp"
#include "qthyper/sympoly.hpp"

namespace qthyper {

/// Principal specialization epsilon_{u,t}: p_r -> (1 - u^r) / (1 - t^r).
struct Specialization {
  Rational u;
  Rational t;
};

/// z_lambda(q,t) = <p_lambda, p_lambda>_{q,t}.
inline Rational z_lambda_qt(const Partition& lam, const ParamPoint& pp) {
  Rational z(z_lambda(lam));
  for (int r : lam.parts()) z *= (1 - pow(pp.q, r)) / (1 - pow(pp.t, r));
  return z;
}

/// <f, g>_{q,t}; monomial-basis arguments are lifted through m_to_p.
inline Rational scalar_qt(const SymPoly& f, const SymPoly& g, const ParamPoint& pp) {
  SymPoly pf = to_basis(f, Basis::power_sum), pg = to_basis(g, Basis::power_sum);
  Rational s = 0;
  for (const auto& [lam, c] : pf.terms()) {
    Rational d = pg.coeff(lam);
    if (d != 0) s += c * d * z_lambda_qt(lam, pp);
  }
  return s;
}

/// c_lambda = prod_{s} (1 - q^{a(s)} t^{l(s)+1}), so that J_lambda = c_lambda P_lambda.
inline Rational c_lambda(const Partition& lam, const ParamPoint& pp) {
  Partition conj = lam.conjugate();
  Rational c = 1;
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j)
      c *= 1 - pow(pp.q, lam.part(i) - j) * pow(pp.t, conj.part(j) - i + 1);
  return c;
}

/// c'_lambda = prod_{s} (1 - q^{a(s)+1} t^{l(s)}); <P,P>_{q,t} = c'_lambda / c_lambda.
inline Rational c_prime_lambda(const Partition& lam, const ParamPoint& pp) {
  Partition conj = lam.conjugate();
  Rational c = 1;
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j)
      c *= 1 - pow(pp.q, lam.part(i) - j + 1) * pow(pp.t, conj.part(j) - i);
  return c;
}

/// (u; q, t)_lambda = prod_i (u t^{1-i}; q)_{lambda_i}.
inline Rational qpoch_partition(const Rational& u, const Partition& lam, const ParamPoint& pp) {
  Rational r = 1;
  for (int i = 1; i <= lam.length() && r != 0; ++i) r *= qpoch_finite(u * pow(pp.t, 1 - i), pp.q, lam.part(i));
  return r;
}

/// Product of (a_j; q, t)_lambda over a parameter list.
inline Rational qpoch_partition(std::span<const Rational> as, const Partition& lam, const ParamPoint& pp) {
  Rational r = 1;
  for (const auto& a : as) r *= qpoch_partition(a, lam, pp);
  return r;
}

/// Ring homomorphism p_r -> (1-u^r)/(1-t^r) applied to f (power-sum form).
inline Rational eps_ut(const SymPoly& f, const Specialization& s) {
  SymPoly pf = to_basis(f, Basis::power_sum);
  std::map<int, Rational> image;
  Rational total = 0;
  for (const auto& [lam, c] : pf.terms()) {
    Rational term = c;
    for (int r : lam.parts()) {
      auto it = image.find(r);
      if (it == image.end()) it = image.emplace(r, (1 - pow(s.u, r)) / (1 - pow(s.t, r))).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

/// Linear extensions of dominance used for Gram-Schmidt.
enum class GramSchmidtOrder {
  lexicographic,  // lexicographically ascending
  n_lambda,       // n(lambda) descending, ties lexicographically ascending
};

/// Memo table of Macdonald P_lambda for one (q,t), all partitions of each
/// degree (no length restriction; restriction to n variables happens on read).
/// Single-writer / multi-reader: blocks are built under an exclusive lock and
/// never modified afterwards.
class MacdonaldBasis {
 public:
  struct DegreeBlock {
    int degree = 0;
    std::vector<Partition> parts;              // same order as the transition table
    std::vector<std::vector<Rational>> P;      // P[i] = coordinates of P_{parts[i]} over p_{parts[j]}
    std::vector<Rational> norm;                // <P_i, P_i>_{q,t}
  };

  explicit MacdonaldBasis(ParamPoint pp, GramSchmidtOrder order = GramSchmidtOrder::lexicographic)
      : pp_(std::move(pp)), order_(order) {}

  const ParamPoint& params() const { return pp_; }

  const DegreeBlock& block(int d) const {
    {
      std::shared_lock lock(mu_);
      auto it = blocks_.find(d);
      if (it != blocks_.end()) return *it->second;
    }
    auto built = build(d);
    std::unique_lock lock(mu_);
    auto& slot = blocks_[d];
    if (!slot) slot = std::move(built);
    return *slot;
  }

  /// P_lambda in n variables; the power-sum form is the full symmetric function.
  SymPoly P(const Partition& lam, int n, Basis b = Basis::monomial) const {
    if (lam.length() > n) throw std::invalid_argument("macdonald_P: partition longer than variable count");
    const auto& blk = block(lam.weight());
    const auto& tt = transition_table(lam.weight());
    const auto& coords = blk.P[tt.index.at(lam)];
    SymPoly f(n, Basis::power_sum);
    for (std::size_t j = 0; j < coords.size(); ++j) f.add_term(blk.parts[j], coords[j]);
    return to_basis(f, b);
  }

  /// <P_lambda, P_lambda>_{q,t}.
  Rational norm(const Partition& lam) const {
    const auto& blk = block(lam.weight());
    return blk.norm[transition_table(lam.weight()).index.at(lam)];
  }

  SymPoly Q(const Partition& lam, int n, Basis b = Basis::monomial) const { return P(lam, n, b) * (1 / norm(lam)); }
  SymPoly J(const Partition& lam, int n, Basis b = Basis::monomial) const {
    return P(lam, n, b) * c_lambda(lam, pp_);
  }
  /// J*_lambda = J_lambda / <J_lambda, J_lambda> = Q_lambda / c_lambda.
  SymPoly Jstar(const Partition& lam, int n, Basis b = Basis::monomial) const {
    return P(lam, n, b) * (1 / (norm(lam) * c_lambda(lam, pp_)));
  }

 private:
  std::unique_ptr<DegreeBlock> build(int d) const {
    const auto& tt = transition_table(d);
    const std::size_t N = tt.parts.size();
    std::vector<Rational> weight(N);
    for (std::size_t j = 0; j < N; ++j) weight[j] = z_lambda_qt(tt.parts[j], pp_);
    auto inner = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
      Rational s = 0;
      for (std::size_t j = 0; j < N; ++j)
        if (u[j] != 0 && v[j] != 0) s += u[j] * v[j] * weight[j];
      return s;
    };

    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) order[i] = N - 1 - i;  // lexicographically ascending
    if (order_ == GramSchmidtOrder::n_lambda) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return nlambda(tt.parts[a]) > nlambda(tt.parts[b]);
      });
    }

    auto blk = std::make_unique<DegreeBlock>();
    blk->degree = d;
    blk->parts = tt.parts;
    blk->P.assign(N, {});
    blk->norm.assign(N, Rational(0));
    std::vector<std::size_t> done;
    for (std::size_t idx : order) {
      std::vector<Rational> v = tt.m_to_p[idx];
      const std::vector<Rational> m = v;
      for (std::size_t prev : done) {
        Rational c = inner(m, blk->P[prev]) / blk->norm[prev];
        if (c == 0) continue;
        for (std::size_t j = 0; j < N; ++j) v[j] -= c * blk->P[prev][j];
      }
      blk->norm[idx] = inner(v, v);
      if (blk->norm[idx] == 0) throw std::domain_error("degenerate (q,t) scalar product");
      blk->P[idx] = std::move(v);
      done.push_back(idx);
    }
    return blk;
  }

  ParamPoint pp_;
  GramSchmidtOrder order_;
  mutable std::shared_mutex mu_;
  mutable std::map<int, std::unique_ptr<DegreeBlock>> blocks_;
};

/// P_lambda in n variables, monomial basis.
inline SymPoly macdonald_P(const Partition& lam, int n, const MacdonaldBasis& basis) { return basis.P(lam, n); }

/// Checks epsilon_{u,t}(J_lambda) = t^{n(lambda)} (u;q,t)_lambda exactly.
inline CheckReport check_eps_J(const Partition& lam, const Rational& u, int n, const MacdonaldBasis& basis) {
  const auto& pp = basis.params();
  Rational lhs = eps_ut(basis.J(lam, n, Basis::power_sum), {u, pp.t});
  Rational rhs = pow(pp.t, nlambda(lam)) * qpoch_partition(u, lam, pp);
  return exact_report("eq_1_6",
                      {{"lambda", lam.to_string()}, {"n", std::to_string(n)}, {"q", to_string(pp.q)},
                       {"t", to_string(pp.t)}, {"u", to_string(u)}},
                      lhs, rhs);
}

}  // namespace qthyper
