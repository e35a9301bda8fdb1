#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "qthyper/rational.hpp"
#include "qthyper/sympoly.hpp"

namespace qthyper {

using Exponent = std::vector<int>;

/// Sparse Laurent polynomial in n variables with exact rational coefficients.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  explicit LaurentPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("LaurentPoly needs at least one variable");
  }

  static LaurentPoly constant(int nvars, const Rational& c) {
    LaurentPoly f(nvars);
    f.add_term(Exponent(nvars, 0), c);
    return f;
  }
  /// c * x_i^e (i is 0-based).
  static LaurentPoly variable(int nvars, int i, int e = 1, const Rational& c = 1) {
    LaurentPoly f(nvars);
    Exponent ex(nvars, 0);
    ex.at(i) = e;
    f.add_term(ex, c);
    return f;
  }
  /// Full expansion of a monomial-basis symmetric polynomial.
  static LaurentPoly from_symmetric(const SymPoly& f) {
    SymPoly m = to_basis(f, Basis::monomial);
    LaurentPoly r(m.nvars());
    for (const auto& [mu, c] : m.terms()) {
      Exponent e(m.nvars(), 0);
      for (int i = 0; i < mu.length(); ++i) e[i] = mu.parts()[i];
      std::sort(e.begin(), e.end());
      do {
        r.add_term(e, c);
      } while (std::next_permutation(e.begin(), e.end()));
    }
    return r;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Smallest exponent of each variable over all terms.
  Exponent min_exponents() const {
    Exponent lo(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (int i = 0; i < nvars_; ++i) lo[i] = first ? e[i] : std::min(lo[i], e[i]);
      first = false;
    }
    return lo;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b);
    LaurentPoly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Value at a point; coordinates must be nonzero where negative exponents occur.
  Rational evaluate(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluate: point length mismatch");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (int i = 0; i < nvars_; ++i)
        if (e[i]) term *= pow(x[i], e[i]);
      total += term;
    }
    return total;
  }

 private:
  void check(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("LaurentPoly variable counts differ");
  }

  int nvars_;
  Terms terms_;
};

/// Coefficient of x^0.
inline Rational constant_term(const LaurentPoly& f) { return f.coeff(Exponent(f.nvars(), 0)); }

/// x_i -> x_i^{-1}.
inline LaurentPoly bar_involution(const LaurentPoly& f) {
  LaurentPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponent neg = e;
    for (int& v : neg) v = -v;
    r.add_term(neg, c);
  }
  return r;
}

/// [f g]_1 without forming the full product.
inline Rational constant_term_of_product(const LaurentPoly& f, const LaurentPoly& g) {
  Rational total = 0;
  Exponent neg(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    for (int i = 0; i < f.nvars(); ++i) neg[i] = -e[i];
    auto it = g.terms().find(neg);
    if (it != g.terms().end()) total += c * it->second;
  }
  return total;
}

}  // namespace qthyper
