#pragma once

// Hahn polynomials in one variable, integer parameters a, b >= 0:
//   F_n(x) = (x-n+1)_{a+n} (N+1-x)_{b+n}
//   G_n^{(a,b)}(x;N) = (N-n)!/N! * Delta^n F_n(x) / ((x+1)_a (N+1-x)_b)
// where (x+1)_a = (x+1)(x+2)...(x+a).

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthyper/rational.hpp"
#include "qthyper/report.hpp"
#include "qthyper/scalars.hpp"

namespace qthyper {

struct HahnParams {
  long a = 0;
  long b = 0;
  long N = 0;
  long n = 0;

  void validate() const {
    if (a < 0 || b < 0) throw std::invalid_argument("HahnParams: a, b must be nonnegative");
    if (n < 0 || n > N) throw std::invalid_argument("HahnParams: need 0 <= n <= N");
  }
  ParamList to_params() const {
    return {{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"N", std::to_string(N)}, {"n", std::to_string(n)}};
  }
};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  /// s + c x
  static UniPoly linear(const Rational& s, const Rational& c) { return UniPoly({s, c}); }

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational coeff(long i) const { return i >= 0 && i < static_cast<long>(c_.size()) ? c_[i] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  friend UniPoly operator+(const UniPoly& p, const UniPoly& q) {
    std::vector<Rational> r(std::max(p.c_.size(), q.c_.size()), Rational(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + q * Rational(-1); }
  friend UniPoly operator*(const UniPoly& p, const Rational& s) {
    std::vector<Rational> r = p.c_;
    for (auto& v : r) v *= s;
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> r(p.c_.size() + q.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return UniPoly(std::move(r));
  }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// p(s + c x)
  UniPoly compose_linear(const Rational& s, const Rational& c) const {
    UniPoly r, power = constant(1), lin = linear(s, c);
    for (const auto& v : c_) {
      r = r + power * v;
      power = power * lin;
    }
    return r;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + qthyper::to_string(c_[i]) + ")";
      if (i) s += "x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Interpolating polynomial through (x_i, y_i), Lagrange form.
inline UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  UniPoly r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis = UniPoly::constant(1);
    Rational den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly::linear(-xs[j], 1);
      den *= xs[i] - xs[j];
    }
    if (den == 0) throw std::invalid_argument("interpolate: repeated node");
    r = r + basis * (ys[i] / den);
  }
  return r;
}

/// (z+1)_m as a polynomial, z = s + c x.
inline UniPoly rising_poly(const Rational& s, const Rational& c, long m) {
  UniPoly r = UniPoly::constant(1);
  for (long j = 1; j <= m; ++j) r = r * UniPoly::linear(s + j, c);
  return r;
}

/// Delta^m f(x) = sum_r (-1)^r C(m,r) f(x+m-r).
inline Rational forward_diff(const std::function<Rational(const Rational&)>& f, long m, const Rational& x) {
  if (m < 0) throw std::invalid_argument("forward_diff: negative order");
  Rational s = 0;
  for (long r = 0; r <= m; ++r) {
    Rational term = Rational(binomial(m, r)) * f(x + m - r);
    s += r % 2 ? -term : term;
  }
  return s;
}

/// Delta p as a polynomial: p(x+1) - p(x).
inline UniPoly forward_diff(const UniPoly& p) { return p.compose_linear(1, 1) - p; }

/// F_n(x) = (x-n+1)_{a+n} (N+1-x)_{b+n}.
inline Rational hahn_F(const HahnParams& hp, const Rational& x) {
  return rising_factorial(x - hp.n, hp.a + hp.n) * rising_factorial(hp.N - x, hp.b + hp.n);
}

/// G_n through its difference-operator definition, at an integer 0 <= x <= N.
inline Rational hahn_G_difference(const HahnParams& hp, long x) {
  if (x < 0 || x > hp.N) throw std::domain_error("hahn_G_difference: node outside 0..N");
  Rational num = forward_diff([&](const Rational& z) { return hahn_F(hp, z); }, hp.n, Rational(x));
  Rational den = rising_factorial(Rational(x), hp.a) * rising_factorial(Rational(hp.N - x), hp.b);
  return Rational(factorial(hp.N - hp.n)) / Rational(factorial(hp.N)) * num / den;
}

/// Explicit form: C(N,n)^{-1} sum_{q+r=n} (-1)^r/(q! r!) (x+a+1)_q (x-r+1)_r (y+b+1)_r (y-q+1)_q, y = N-x.
/// Each term is F_n(x+n-r)/((x+1)_a (N+1-x)_b), using x!/(x-r)! = (x-r+1)_r.
inline UniPoly hahn_G_explicit(const HahnParams& hp) {
  hp.validate();
  UniPoly sum;
  for (long r = 0; r <= hp.n; ++r) {
    long q = hp.n - r;
    UniPoly term = rising_poly(hp.a, 1, q) * rising_poly(-r, 1, r) * rising_poly(hp.N + hp.b, -1, r) *
                   rising_poly(hp.N - q, -1, q);
    Rational c = Rational(1) / Rational(factorial(q) * factorial(r));
    sum = sum + term * (r % 2 ? -c : c);
  }
  return sum * (Rational(1) / Rational(binomial(hp.N, hp.n)));
}

/// G_n by evaluating the difference definition at x = 0..n and interpolating;
/// the explicit form is computed alongside and any disagreement throws.
inline UniPoly hahn_G(const HahnParams& hp) {
  hp.validate();
  std::vector<Rational> xs, ys;
  for (long x = 0; x <= hp.n; ++x) {
    xs.emplace_back(x);
    ys.push_back(hahn_G_difference(hp, x));
  }
  UniPoly g = interpolate(xs, ys);
  if (!(g == hahn_G_explicit(hp)))
    throw std::logic_error("hahn_G: difference and explicit forms disagree at " + params_to_string(hp.to_params()));
  return g;
}

/// G^{(a,b)}_n(N-x) = (-1)^n G^{(b,a)}_n(x) as polynomials.
inline CheckReport check_symmetry(const HahnParams& hp) {
  UniPoly lhs = hahn_G(hp).compose_linear(hp.N, -1);
  UniPoly rhs = hahn_G({hp.b, hp.a, hp.N, hp.n}) * Rational(hp.n % 2 ? -1 : 1);
  CheckReport r;
  r.check = "hahn_symmetry";
  r.parameters = hp.to_params();
  r.status = lhs == rhs ? Status::pass : Status::fail;
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  if (!(lhs == rhs)) {
    for (long i = 0; i <= std::max(lhs.degree(), rhs.degree()); ++i)
      if (lhs.coeff(i) != rhs.coeff(i)) {
        r.detail = "first mismatch at x^" + std::to_string(i);
        break;
      }
  }
  return r;
}

/// sum_{x=0}^N (Delta f)(x) g(x) + sum_{x=0}^N f(x+1)(Delta g)(x) = f(N+1)g(N+1) - f(0)g(0).
inline CheckReport summation_by_parts_check(const UniPoly& f, const UniPoly& g, long N) {
  UniPoly df = forward_diff(f), dg = forward_diff(g);
  Rational lhs = 0;
  for (long x = 0; x <= N; ++x) lhs += df(x) * g(x) + f(x + 1) * dg(x);
  Rational rhs = f(N + 1) * g(N + 1) - f(0) * g(0);
  return exact_report("summation_by_parts", {{"N", std::to_string(N)}, {"deg_f", std::to_string(f.degree())},
                                  {"deg_g", std::to_string(g.degree())}},
                      lhs, rhs);
}

/// Weight C(x+a, x) C(N-x+b, N-x).
inline Rational hahn_weight(long a, long b, long N, long x) {
  return Rational(binomial(x + a, x) * binomial(N - x + b, N - x));
}

/// sum_x G_n G_m w: zero for n != m, positive for n = m.
inline CheckReport orthogonality_check(long n, long m, long a, long b, long N) {
  UniPoly gn = hahn_G({a, b, N, n}), gm = hahn_G({a, b, N, m});
  Rational s = 0;
  for (long x = 0; x <= N; ++x) s += gn(x) * gm(x) * hahn_weight(a, b, N, x);
  CheckReport r;
  r.check = "hahn_orthogonality";
  r.parameters = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"a", std::to_string(a)},
                  {"b", std::to_string(b)}, {"N", std::to_string(N)}};
  r.lhs = to_string(s);
  r.rhs = n == m ? "positive" : "0";
  r.status = (n == m ? s > 0 : s == 0) ? Status::pass : Status::fail;
  if (r.failed()) r.detail = "weighted sum " + to_string(s);
  return r;
}

/// All properties of one (a,b,N,n): difference vs explicit form, degree and
/// leading coefficient, endpoint values, the value of Delta^n F_n(0), symmetry.
inline std::vector<CheckReport> hahn_properties(const HahnParams& hp) {
  std::vector<CheckReport> out;
  ParamList p = hp.to_params();
  UniPoly g;
  try {
    g = hahn_G(hp);
    out.push_back(exact_report("hahn_forms", p, 0, 0));
  } catch (const std::logic_error& e) {
    CheckReport r = exact_report("hahn_forms", p, 0, 1);
    r.detail = e.what();
    out.push_back(r);
    g = hahn_G_explicit(hp);
  }
  const long a = hp.a, b = hp.b, N = hp.N, n = hp.n;
  out.push_back(exact_report("hahn_degree", p, g.degree(), n));
  Rational lead = Rational(binomial(a + b + 2 * n, n)) / Rational(binomial(N, n));
  out.push_back(exact_report("hahn_leading", p, g.leading(), n % 2 ? -lead : lead));
  out.push_back(exact_report("hahn_at_0", p, g(0), rising_factorial(Rational(a), n)));
  Rational endN = rising_factorial(Rational(b), n);
  out.push_back(exact_report("hahn_at_N", p, g(N), n % 2 ? -endN : endN));
  Rational d0 = forward_diff([&](const Rational& z) { return hahn_F(hp, z); }, n, 0);
  out.push_back(exact_report("hahn_delta_F_at_0", p, d0,
                             Rational(factorial(a + n) * factorial(N + b)) / Rational(factorial(N - n))));
  out.push_back(check_symmetry(hp));
  return out;
}

/// Every property, summation by parts on pairs of Hahn polynomials, and orthogonality,
/// for 0 <= n, m <= N <= max_N and a, b <= max_ab.
inline CheckReport hahn_suite(long max_N, long max_ab) {
  std::vector<CheckReport> parts;
  for (long a = 0; a <= max_ab; ++a)
    for (long b = 0; b <= max_ab; ++b)
      for (long N = 0; N <= max_N; ++N) {
        std::vector<UniPoly> gs;
        for (long n = 0; n <= N; ++n) {
          for (auto& r : hahn_properties({a, b, N, n})) parts.push_back(std::move(r));
          gs.push_back(hahn_G_explicit({a, b, N, n}));
        }
        for (long n = 0; n <= N; ++n)
          for (long m = 0; m <= N; ++m) {
            if (n < m) parts.push_back(orthogonality_check(n, m, a, b, N));
            if (n <= m) parts.push_back(summation_by_parts_check(gs[n], gs[m], N));
          }
      }
  CheckReport r = combine_reports("hahn_suite", {{"max_N", std::to_string(max_N)}, {"max_ab", std::to_string(max_ab)}},
                                  parts);
  r.lhs = std::to_string(std::count_if(parts.begin(), parts.end(), [](const CheckReport& c) { return c.passed(); }));
  r.rhs = std::to_string(parts.size());
  return r;
}

}  // namespace qthyper
