// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qthyper/constant_term.hpp"
#include "qthyper/gauss.hpp"
#include "qthyper/hahn.hpp"
#include "qthyper/registry.hpp"
#include "qthyper/selberg.hpp"
#include "qthyper/series.hpp"
#include "test_util.hpp"

using namespace qthyper;

namespace {

const Rational half = make_rational(1, 2);
const Rational third = make_rational(1, 3);
const Rational tol8 = Rational(1, 100000000);

struct Outcome {
  bool ok = true;
  std::string note;
  long count = 0;

  void expect(bool cond, const std::string& what) {
    ++count;
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  void expect(const CheckReport& r) {
    expect(r.passed(), r.check + " " + params_to_string(r.parameters) + ": " + r.detail);
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s && out.ok) {
    out.ok = false;
    out.note = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s";
  }
  std::printf("%s  %2d  %-58s %6ld checks  %7.2f s%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), out.count,
              secs, out.ok ? "" : "  ", out.note.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

ParamPoint random_point(testutil::RationalGen& g) {
  for (;;) {
    Rational q = g.unit(7), t = g.unit(7);
    if (q != t) return {q, t};
  }
}

Rational random_nonzero(testutil::RationalGen& g) {
  for (;;) {
    Rational v = g.signed_value(3, 7);
    if (v != 0 && v != 1) return v;
  }
}

// <1,1>' at t = q^k as prod_i (q^{(i-1)k+1};q)_{k-1} / (q;q)_{k-1}
Rational dyson_oracle(int n, long k, const Rational& q) {
  Rational v = 1;
  for (int i = 1; i <= n; ++i) {
    for (long j = 1; j <= k - 1; ++j) v *= 1 - pow(q, (i - 1) * k + j);
    for (long j = 1; j <= k - 1; ++j) v /= 1 - pow(q, j);
  }
  return v;
}

}  // namespace

int main() {
  criterion(1, "eps_{u,t}(J) = t^{n(l)} (u;q,t)_l, |l|<=5, n=|l|", 60, [](Outcome& o) {
    testutil::RationalGen g(11);
    for (int rep = 0; rep < 3; ++rep) {
      ParamPoint pp = random_point(g);
      Rational u = random_nonzero(g);
      MacdonaldBasis basis(pp);
      for (const auto& lam : partitions_upto(5, 5)) {
        CheckReport r = check_eps_J(lam, u, std::max(1, lam.weight()), basis);
        o.expect(r);
        o.expect(r.tail_budget == 0, "nonzero tail on an exact check");
      }
    }
  });

  criterion(2, "0Phi0 and 1Phi0 product formulas, n=3, degree 6", 60, [](Outcome& o) {
    testutil::RationalGen g(22);
    for (int rep = 0; rep < 2; ++rep) {
      ParamPoint pp = random_point(g);
      Rational a = random_nonzero(g);
      MacdonaldBasis basis(pp);
      auto d0 = first_difference(phi_one(HyperParams({}, {}, pp, 3, 6), basis), product_series(0, 3, pp.q, 6));
      o.expect(!d0, "0Phi0 differs at " + (d0 ? d0->to_string() : ""));
      auto d1 = first_difference(phi_one(HyperParams({a}, {}, pp, 3, 6), basis), product_series(a, 3, pp.q, 6));
      o.expect(!d1, "1Phi0 differs at " + (d1 ? d1->to_string() : ""));
    }
  });

  criterion(3, "kernel identity and y-specialisation, |l|<=4, n<=3", 0, [](Outcome& o) {
    testutil::RationalGen g(33);
    for (int rep = 0; rep < 2; ++rep) {
      ParamPoint pp = random_point(g);
      MacdonaldBasis basis(pp);
      std::vector<Rational> up{random_nonzero(g)}, low{random_nonzero(g), random_nonzero(g)};
      for (int n = 1; n <= 3; ++n) {
        auto dk = first_difference(phi_two(HyperParams({pow(pp.t, n)}, {}, pp, n, 4), 4, basis), kernel_Pi(n, pp, 4));
        o.expect(!dk, "2Phi kernel differs");
        HyperParams hp(up, low, pp, n, 4);
        TruncSeries2 two = phi_two(hp, 4, basis);
        TruncSeries one = phi_one(hp, basis);
        o.expect(!first_difference(specialize_y_substitution(two, pp.t), one), "substitution differs");
        o.expect(!first_difference(specialize_y_homomorphism(two, pp.t), one), "homomorphism differs");
      }
    }
  });

  criterion(4, "C1: <P,P>'' = eps(P)/eps(Q), |l|<=4, n<=3, k<=2", 300, [](Outcome& o) {
    for (const Rational& q : {half, third})
      for (long k = 1; k <= 2; ++k) {
        ParamPoint pp = ParamPoint::with_k(q, k);
        MacdonaldBasis basis(pp);
        for (int n = 1; n <= 3; ++n) {
          ConstantTermProduct ct(n, k, pp);
          for (const auto& lam : partitions_upto(4, n)) o.expect(check_C1(lam, ct, basis));
        }
      }
  });

  criterion(5, "q-Dyson <1,1>' closed form, n<=3, k<=2", 0, [](Outcome& o) {
    for (const Rational& q : {half, third, make_rational(2, 7)})
      for (long k = 1; k <= 2; ++k)
        for (int n = 1; n <= 3; ++n) {
          ConstantTermProduct ct(n, k, ParamPoint::with_k(q, k));
          o.expect(check_qdyson(ct, Rational(1, 1000000000000L)));
          o.expect(ct.one_one() == dyson_oracle(n, k, q), "product oracle differs");
          if (n == 2 && k == 1) o.expect(ct.one_one() == 1, "n=2,k=1 value is not 1");
        }
  });

  criterion(6, "Selberg: direct Jackson vs closed form, {1,2}^4, q=1/2", 120, [](Outcome& o) {
    for (int n = 1; n <= 2; ++n)
      for (long k = 1; k <= 2; ++k)
        for (long a = 1; a <= 2; ++a)
          for (long b = 1; b <= 2; ++b) {
            CheckReport r = check_selberg({a, b, k, n, half}, tol8);
            o.expect(r);
            o.expect(r.tail_budget > 0, "no tail budget reported");
          }
  });

  criterion(7, "C2': |l|<=3, n<=2, k<=2, a,b<=2, q=1/2, with tilde forms", 0, [](Outcome& o) {
    for (long k = 1; k <= 2; ++k) {
      MacdonaldBasis basis(ParamPoint::with_k(half, k));
      for (int n = 1; n <= 2; ++n)
        for (long a = 1; a <= 2; ++a)
          for (long b = 1; b <= 2; ++b)
            for (const auto& r : check_C2(partitions_upto(3, n), {a, b, k, n, half}, basis, tol8)) o.expect(r);
    }
  });

  criterion(8, "Gauss: terminating exact, n in {1,2} certified", 0, [](Outcome& o) {
    for (const Rational& q : {half, third}) {
      ParamPoint pp = ParamPoint::with_k(q, 1);
      for (const Rational& a2 : {make_rational(2, 3), make_rational(-5, 2), q})
        for (const Rational& b : {make_rational(1, 5), make_rational(7, 3)}) {
          CheckReport r = gauss_check(pow(q, -2), a2, b, 1, pp, 0, tol8);
          o.expect(r);
          o.expect(r.tail_budget == 0 && r.lhs == r.rhs, "terminating case not exact");
        }
    }
    struct Case {
      Rational a1, a2, b;
      int n;
      ParamPoint pp;
    };
    std::vector<Case> cases{{half, half, make_rational(1, 8), 1, ParamPoint(half, half)},
                            {make_rational(-1, 3), make_rational(2, 5), make_rational(1, 10), 1, ParamPoint(third, half)},
                            {half, half, make_rational(1, 64), 2, ParamPoint(half, half)},
                            {make_rational(-1, 3), make_rational(2, 5), make_rational(1, 100), 2, ParamPoint(half, third)},
                            {third, third, make_rational(1, 486), 2, ParamPoint::with_k(third, 1)}};
    for (const auto& c : cases) {
      CheckReport r = detail::gauss_adaptive(c.a1, c.a2, c.b, c.n, c.pp, tol8);
      o.expect(r);
      o.expect(r.tail_budget > 0 && r.detail.find("series tail certified") != std::string::npos,
               "series tail not certified");
    }
  });

  criterion(9, "Laplace limit: b=inf closed form and ratio, n<=2, k<=2", 0, [](Outcome& o) {
    for (int n = 1; n <= 2; ++n)
      for (long k = 1; k <= 2; ++k) {
        o.expect(check_laplace_ratio(n, k, half, tol8));
        for (long a = 1; a <= 2; ++a) o.expect(check_selberg({a, std::nullopt, k, n, half}, tol8));
      }
  });

  criterion(10, "Hahn suite, n != m <= N <= 8, a,b <= 3", 30, [](Outcome& o) {
    CheckReport r = hahn_suite(8, 3);
    o.expect(r);
    o.expect(r.lhs == r.rhs && r.rhs != "0", "suite count mismatch");
  });

  criterion(11, "determinism: default suite twice, byte-identical JSON", 0, [](Outcome& o) {
    RunConfig one_thread;
    one_thread.threads = 1;
    RunConfig pooled;
    pooled.threads = 4;
    std::string first = reports_to_json(run({}, one_thread)).dump(2);
    std::string second = reports_to_json(run({}, pooled)).dump(2);
    o.expect(first == second, "reports differ between runs");
    o.expect(first.size() > 1000, "empty report");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
