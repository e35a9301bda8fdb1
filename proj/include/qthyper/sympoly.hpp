#pragma once

// Symmetric polynomials in n variables, stored sparsely over partitions in
// either the monomial basis m_lambda or the power-sum basis p_lambda.
//
// Power sums are algebraically independent, so the p-basis representation is
// an element of the full ring of symmetric functions; the monomial
// representation is always the restriction to n variables (m_lambda with
// l(lambda) > n vanish there and are never stored).

#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "qthyper/partition.hpp"
#include "qthyper/rational.hpp"

namespace qthyper {

using Matrix = std::vector<std::vector<Rational>>;

namespace detail {

// Number of ways to assign the parts of `lambda` to the rows of `mu` so that
// row j receives total mu_j. This is the coefficient of m_mu in p_lambda.
inline long count_fillings(const std::vector<int>& lambda, std::size_t idx, std::vector<int>& room) {
  if (idx == lambda.size()) {
    for (int r : room)
      if (r != 0) return 0;
    return 1;
  }
  long total = 0;
  int part = lambda[idx];
  for (std::size_t j = 0; j < room.size(); ++j) {
    if (room[j] < part) continue;
    room[j] -= part;
    total += count_fillings(lambda, idx + 1, room);
    room[j] += part;
  }
  return total;
}

inline Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular transition matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Power-sum / monomial transition data for one degree d, over all
/// partitions of d (no length restriction).
struct TransitionTable {
  int degree = 0;
  std::vector<Partition> parts;  // lexicographically descending
  std::map<Partition, std::size_t> index;
  Matrix p_to_m;  // p_lambda = sum_mu p_to_m[lambda][mu] m_mu
  Matrix m_to_p;  // m_mu = sum_lambda m_to_p[mu][lambda] p_lambda

  explicit TransitionTable(int d) : degree(d), parts(partitions_of(d, d)) {
    const std::size_t n = parts.size();
    for (std::size_t i = 0; i < n; ++i) index.emplace(parts[i], i);
    p_to_m.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<int> room = parts[j].parts();
        p_to_m[i][j] = detail::count_fillings(parts[i].parts(), 0, room);
      }
    }
    m_to_p = detail::invert(p_to_m);
  }
};

/// Shared, lazily built transition tables. Parameter-free data, so one
/// process-wide memo suffices; guarded for concurrent readers.
inline const TransitionTable& transition_table(int d) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TransitionTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[d];
  if (!slot) slot = std::make_unique<TransitionTable>(d);
  return *slot;
}

enum class Basis { monomial, power_sum };

class SymPoly {
 public:
  using Terms = std::map<Partition, Rational>;

  SymPoly(int nvars, Basis basis) : nvars_(nvars), basis_(basis) {
    if (nvars < 1) throw std::invalid_argument("SymPoly needs at least one variable");
  }

  static SymPoly constant(int nvars, Basis basis, const Rational& c) {
    SymPoly f(nvars, basis);
    f.add_term(Partition{}, c);
    return f;
  }
  static SymPoly monomial(int nvars, const Partition& lambda, const Rational& c = 1) {
    SymPoly f(nvars, Basis::monomial);
    f.add_term(lambda, c);
    return f;
  }
  static SymPoly power_sum(int nvars, const Partition& lambda, const Rational& c = 1) {
    SymPoly f(nvars, Basis::power_sum);
    f.add_term(lambda, c);
    return f;
  }

  int nvars() const { return nvars_; }
  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c * basis_lambda. Monomials with more parts than variables vanish.
  void add_term(const Partition& lambda, const Rational& c) {
    if (c == 0) return;
    if (basis_ == Basis::monomial && lambda.length() > nvars_) return;
    auto [it, inserted] = terms_.try_emplace(lambda, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.weight(); }

  SymPoly truncated(int cap) const {
    SymPoly r(nvars_, basis_);
    for (const auto& [lam, c] : terms_)
      if (lam.weight() <= cap) r.terms_.emplace(lam, c);
    return r;
  }
  SymPoly homogeneous_part(int d) const {
    SymPoly r(nvars_, basis_);
    for (const auto& [lam, c] : terms_)
      if (lam.weight() == d) r.terms_.emplace(lam, c);
    return r;
  }

  SymPoly& operator+=(const SymPoly& o) {
    check_compatible(o);
    for (const auto& [lam, c] : o.terms_) add_term(lam, c);
    return *this;
  }
  SymPoly& operator-=(const SymPoly& o) {
    check_compatible(o);
    for (const auto& [lam, c] : o.terms_) add_term(lam, -c);
    return *this;
  }
  SymPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [lam, c] : terms_) c *= s;
    return *this;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const Rational& s) { return a *= s; }
  friend SymPoly operator*(const Rational& s, SymPoly a) { return a *= s; }

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.nvars_ == b.nvars_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

  void check_compatible(const SymPoly& o) const {
    if (o.nvars_ != nvars_ || o.basis_ != basis_)
      throw std::invalid_argument("SymPoly operands differ in variable count or basis");
  }

 private:
  int nvars_;
  Basis basis_;
  Terms terms_;
};

/// Expansion of a power-sum polynomial in monomials of n = f.nvars() variables.
inline SymPoly p_to_m(const SymPoly& f) {
  if (f.basis() != Basis::power_sum) throw std::invalid_argument("p_to_m expects the power-sum basis");
  SymPoly r(f.nvars(), Basis::monomial);
  for (const auto& [lam, c] : f.terms()) {
    const auto& tt = transition_table(lam.weight());
    const auto& row = tt.p_to_m[tt.index.at(lam)];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) r.add_term(tt.parts[j], c * row[j]);
  }
  return r;
}

/// Power-sum expression of the symmetric function whose monomial coefficients
/// are those of f (dropped long monomials count as zero).
inline SymPoly m_to_p(const SymPoly& f) {
  if (f.basis() != Basis::monomial) throw std::invalid_argument("m_to_p expects the monomial basis");
  SymPoly r(f.nvars(), Basis::power_sum);
  for (const auto& [mu, c] : f.terms()) {
    const auto& tt = transition_table(mu.weight());
    const auto& row = tt.m_to_p[tt.index.at(mu)];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) r.add_term(tt.parts[j], c * row[j]);
  }
  return r;
}

inline SymPoly to_basis(const SymPoly& f, Basis b) {
  if (f.basis() == b) return f;
  return b == Basis::monomial ? p_to_m(f) : m_to_p(f);
}

/// Product, optionally dropping every term of total degree above `cap`.
inline SymPoly multiply(const SymPoly& a, const SymPoly& b, int cap = -1) {
  a.check_compatible(b);
  SymPoly pa = to_basis(a, Basis::power_sum), pb = to_basis(b, Basis::power_sum);
  SymPoly prod(a.nvars(), Basis::power_sum);
  for (const auto& [la, ca] : pa.terms())
    for (const auto& [lb, cb] : pb.terms())
      if (cap < 0 || la.weight() + lb.weight() <= cap) prod.add_term(la.merged(lb), ca * cb);
  return to_basis(prod, a.basis());
}

inline SymPoly operator*(const SymPoly& a, const SymPoly& b) { return multiply(a, b); }

/// m_mu(x) for an explicit point: the sum over distinct rearrangements of mu.
inline Rational evaluate_monomial(const Partition& mu, std::span<const Rational> x) {
  const std::size_t n = x.size();
  if (static_cast<std::size_t>(mu.length()) > n) return 0;
  std::vector<int> e(n, 0);
  for (int i = 0; i < mu.length(); ++i) e[i] = mu.parts()[i];
  std::sort(e.begin(), e.end());
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n && term != 0; ++i)
      if (e[i]) term *= pow(x[i], e[i]);
    total += term;
  } while (std::next_permutation(e.begin(), e.end()));
  return total;
}

/// Exact value of f at a point of length f.nvars().
inline Rational evaluate(const SymPoly& f, std::span<const Rational> x) {
  if (x.size() != static_cast<std::size_t>(f.nvars()))
    throw std::invalid_argument("evaluate: point length differs from the variable count");
  Rational total = 0;
  if (f.basis() == Basis::monomial) {
    for (const auto& [mu, c] : f.terms()) total += c * evaluate_monomial(mu, x);
    return total;
  }
  std::map<int, Rational> psum;
  for (const auto& [lam, c] : f.terms()) {
    Rational term = c;
    for (int r : lam.parts()) {
      auto it = psum.find(r);
      if (it == psum.end()) {
        Rational s = 0;
        for (const auto& xi : x) s += pow(xi, r);
        it = psum.emplace(r, s).first;
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

}  // namespace qthyper
