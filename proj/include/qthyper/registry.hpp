#pragma once

// Named checks over a parameter grid, run concurrently with results kept in
// registration order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qthyper/constant_term.hpp"
#include "qthyper/gauss.hpp"
#include "qthyper/hahn.hpp"
#include "qthyper/macdonald.hpp"
#include "qthyper/report.hpp"
#include "qthyper/selberg.hpp"
#include "qthyper/series.hpp"

namespace qthyper {

struct RunConfig {
  std::vector<int> n{1, 2, 3};
  std::vector<long> k{1, 2};
  std::vector<Rational> q{Rational(1, 2), Rational(1, 3)};
  int max_weight = 4;
  int degree = 6;
  std::optional<long> jackson_m;
  Rational tol{1, 10000000000L};
  std::uint64_t seed = 20240611;
  bool timing = false;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n.empty() || k.empty() || q.empty()) throw std::invalid_argument("empty parameter grid");
    for (int v : n)
      if (v < 1 || v > 6) throw std::invalid_argument("n must lie in 1..6");
    for (long v : k)
      if (v < 1 || v > 6) throw std::invalid_argument("k must lie in 1..6");
    for (const auto& v : q)
      if (!(v > 0 && v < 1)) throw std::invalid_argument("q must lie in (0,1)");
    if (max_weight < 0 || max_weight > 8) throw std::invalid_argument("max-weight must lie in 0..8");
    if (degree < 0 || degree > 10) throw std::invalid_argument("degree must lie in 0..10");
    if (jackson_m && (*jackson_m < 0 || *jackson_m > 400)) throw std::invalid_argument("jackson-m must lie in 0..400");
    if (!(tol > 0 && tol < 1)) throw std::invalid_argument("tol must lie in (0,1)");
  }
};

/// One unit of work producing one or more reports of the same check.
struct CheckTask {
  std::string check;
  std::function<std::vector<CheckReport>()> run;
};

/// Shared Macdonald bases keyed by (q,t); the bases themselves are thread-safe.
class BasisCache {
 public:
  const MacdonaldBasis& get(const ParamPoint& pp) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(to_string(pp.q), to_string(pp.t));
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<MacdonaldBasis>(pp)).first;
    return *it->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::unique_ptr<MacdonaldBasis>> cache_;
};

namespace detail {

/// Seeded rationals with bounded denominators.
class ParamSource {
 public:
  explicit ParamSource(std::uint64_t seed) : rng_(seed) {}
  long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational unit(long max_den) {
    long d = integer(2, max_den);
    return make_rational(integer(1, d - 1), d);
  }
  Rational nonzero(long bound, long max_den) {
    for (;;) {
      long d = integer(1, max_den);
      Rational v = make_rational(integer(-bound * d, bound * d), d);
      if (v != 0 && v != 1) return v;
    }
  }
  Rational t_for(const Rational& q, long max_den) {
    for (;;) {
      Rational t = unit(max_den);
      if (t != q) return t;
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline ParamList point_params(const ParamPoint& pp) { return {{"q", to_string(pp.q)}, {"t", to_string(pp.t)}}; }

inline CheckReport series_equality(std::string name, ParamList params, const std::optional<Partition>& diff) {
  CheckReport r;
  r.check = std::move(name);
  r.parameters = std::move(params);
  r.status = diff ? Status::fail : Status::pass;
  r.lhs = r.rhs = diff ? "mismatch" : "equal";
  if (diff) r.detail = "first differing coefficient m" + diff->to_string();
  return r;
}

inline CheckReport series_equality(std::string name, ParamList params,
                                   const std::optional<TruncSeries2::Key>& diff) {
  CheckReport r = series_equality(std::move(name), std::move(params), std::optional<Partition>{});
  if (diff) {
    r.status = Status::fail;
    r.lhs = r.rhs = "mismatch";
    r.detail = "first differing term m" + diff->first.to_string() + "(x) m" + diff->second.to_string() + "(y)";
  }
  return r;
}

inline std::string rationals_to_string(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

/// Gauss check with the truncation degree grown until the tail budget is below tol.
inline CheckReport gauss_adaptive(const Rational& a1, const Rational& a2, const Rational& b, int n,
                                  const ParamPoint& pp, const Rational& tol) {
  CheckReport r;
  for (int D = 10; D <= 160; D += 10) {
    r = gauss_check(a1, a2, b, n, pp, D, tol);
    if (r.tail_budget <= tol) return r;
  }
  return r;
}

}  // namespace detail

/// Names in registration order.
inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "eq_1_6", "eq_2_1", "eq_2_2", "eq_2_3", "eq_1_11", "eq_1_10", "cauchy", "qdyson", "c1", "eq_2_4",
      "eq_3_5", "selberg_3_13", "selberg_5_2", "c2", "index_raising", "gauss_4_1", "laplace", "hahn_suite"};
  return names;
}

inline bool is_check_name(const std::string& s) {
  const auto& v = check_names();
  return std::find(v.begin(), v.end(), s) != v.end();
}

/// Expands the configuration into tasks. Random parameters come from one
/// seeded stream consumed here, so the task list is deterministic.
inline std::vector<CheckTask> build_tasks(const std::vector<std::string>& selected, const RunConfig& cfg,
                                          std::shared_ptr<BasisCache> cache) {
  cfg.validate();
  for (const auto& s : selected)
    if (!is_check_name(s)) throw std::invalid_argument("unknown check: " + s);
  auto wanted = [&](const std::string& name) {
    return selected.empty() || std::find(selected.begin(), selected.end(), name) != selected.end();
  };
  detail::ParamSource src(cfg.seed);
  std::vector<CheckTask> tasks;
  auto add_many = [&](const std::string& name, std::function<std::vector<CheckReport>()> f) {
    if (wanted(name)) tasks.push_back({name, std::move(f)});
  };
  auto add = [&](const std::string& name, std::function<CheckReport()> f) {
    add_many(name, [f = std::move(f)] { return std::vector<CheckReport>{f()}; });
  };
  const Rational tol = cfg.tol;
  const int W = cfg.max_weight;
  const int D = cfg.degree;
  const auto jm = cfg.jackson_m;

  // random (q,t) points: one per configured q, t drawn with denominator <= 7
  std::vector<ParamPoint> points;
  for (const auto& q : cfg.q) points.emplace_back(q, src.t_for(q, 7));

  for (const auto& pp : points) {
    Rational u = src.nonzero(2, 7);
    add("eq_1_6", [=] {
      const auto& basis = cache->get(pp);
      std::vector<CheckReport> parts;
      for (const auto& lam : partitions_upto(W, W))
        parts.push_back(check_eps_J(lam, u, std::max(1, lam.weight()), basis));
      ParamList p = detail::point_params(pp);
      p.emplace_back("u", to_string(u));
      p.emplace_back("max_weight", std::to_string(W));
      return combine_reports("eq_1_6", p, parts);
    });
  }
  for (const auto& pp : points)
    for (int n : cfg.n)
      add("eq_2_1", [=] {
        TruncSeries lhs = phi_one(HyperParams({}, {}, pp, n, D), cache->get(pp));
        ParamList p = detail::point_params(pp);
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("degree", std::to_string(D));
        return detail::series_equality("eq_2_1", p, first_difference(lhs, product_series(0, n, pp.q, D)));
      });
  for (const auto& pp : points) {
    Rational a = src.nonzero(3, 7);
    for (int n : cfg.n)
      add("eq_2_2", [=] {
        TruncSeries lhs = phi_one(HyperParams({a}, {}, pp, n, D), cache->get(pp));
        ParamList p = detail::point_params(pp);
        p.emplace_back("a", to_string(a));
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("degree", std::to_string(D));
        return detail::series_equality("eq_2_2", p, first_difference(lhs, product_series(a, n, pp.q, D)));
      });
  }
  for (const auto& pp : points)
    for (int n : cfg.n)
      add("eq_2_3", [=] {
        TruncSeries2 lhs = phi_two(HyperParams({pow(pp.t, n)}, {}, pp, n, W), W, cache->get(pp));
        ParamList p = detail::point_params(pp);
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("max_weight", std::to_string(W));
        return detail::series_equality("eq_2_3", p, first_difference(lhs, kernel_Pi(n, pp, W)));
      });
  for (const auto& pp : points) {
    long r = src.integer(0, 2), s = src.integer(0, 2);
    std::vector<Rational> up, low;
    for (long i = 0; i < r; ++i) up.push_back(src.nonzero(3, 7));
    for (long i = 0; i < s; ++i) low.push_back(src.nonzero(3, 7));
    for (int n : cfg.n)
      add("eq_1_11", [=] {
        const auto& basis = cache->get(pp);
        ParamList p = detail::point_params(pp);
        p.emplace_back("upper", detail::rationals_to_string(up));
        p.emplace_back("lower", detail::rationals_to_string(low));
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("max_weight", std::to_string(W));
        HyperParams hp(up, low, pp, n, W);
        TruncSeries2 two = phi_two(hp, W, basis);
        TruncSeries one = phi_one(hp, basis);
        std::vector<CheckReport> parts{
            detail::series_equality("substitution", p, first_difference(specialize_y_substitution(two, pp.t), one)),
            detail::series_equality("homomorphism", p, first_difference(specialize_y_homomorphism(two, pp.t), one))};
        return combine_reports("eq_1_11", p, parts);
      });
    for (int n : cfg.n)
      add("eq_1_10", [=] {
        const auto& basis = cache->get(pp);
        ParamList p = detail::point_params(pp);
        p.emplace_back("upper", detail::rationals_to_string(up));
        p.emplace_back("lower", detail::rationals_to_string(low));
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("max_weight", std::to_string(W));
        HyperParams hp(up, low, pp, n, W);
        return detail::series_equality("eq_1_10", p,
                                       first_difference(phi_two(hp, W, basis), phi_two_via_jstar(hp, W, basis)));
      });
  }
  for (const auto& pp : points)
    for (int n : cfg.n)
      add("cauchy", [=] {
        ParamList p = detail::point_params(pp);
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("max_weight", std::to_string(W));
        return detail::series_equality("cauchy", p,
                                       first_difference(cauchy_sum(n, cache->get(pp), W), kernel_Pi(n, pp, W)));
      });

  // t = q^k grid
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n)
        add("qdyson", [=] { return check_qdyson(ConstantTermProduct(n, k, ParamPoint::with_k(q, k)), tol); });
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n)
        for (const auto& lam : partitions_upto(W, n))
          add("c1", [=] {
            auto pp = ParamPoint::with_k(q, k);
            return check_C1(lam, ConstantTermProduct(n, k, pp), cache->get(pp));
          });
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n)
        add("eq_2_4", [=] {
          auto pp = ParamPoint::with_k(q, k);
          return check_Pi_dprime(W, ConstantTermProduct(n, k, pp), cache->get(pp));
        });

  // Jackson integrals
  for (const auto& q : cfg.q)
    for (int n : cfg.n)
      add("eq_3_5", [=] {
        // prod_i (1 - x_i) x_i is zero on every face x_i = 1
        LaurentPoly g = LaurentPoly::constant(n, 1);
        for (int i = 0; i < n; ++i)
          g *= LaurentPoly::variable(n, i) - LaurentPoly::variable(n, i, 2);
        long M = jm ? *jm : choose_jackson_M(g, q, tol / 4);
        return check_jackson_shift(g, q, {M, n}, tol);
      });
  for (const auto& q : cfg.q)
    for (int n : cfg.n)
      for (long k : cfg.k)
        for (long a = 1; a <= 2; ++a)
          for (long b = 1; b <= 2; ++b)
            add("selberg_3_13", [=] { return check_selberg({a, b, k, n, q}, tol, jm); });
  for (const auto& q : cfg.q)
    for (int n : cfg.n)
      for (long k : cfg.k)
        for (long a = 1; a <= 2; ++a)
          add("selberg_5_2", [=] { return check_selberg({a, std::nullopt, k, n, q}, tol, jm); });
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n)
        for (long a = 1; a <= 2; ++a)
          for (std::optional<long> b : {std::optional<long>(1), std::optional<long>(2), std::optional<long>()})
            add_many("c2", [=] {
              auto pp = ParamPoint::with_k(q, k);
              return check_C2(partitions_upto(std::min(W, 3), n), {a, b, k, n, q}, cache->get(pp), tol, jm);
            });
  {
    Rational ua = src.nonzero(2, 5);
    for (const auto& q : cfg.q)
      for (long k : cfg.k)
        for (int n : cfg.n)
          for (std::optional<long> b : {std::optional<long>(1), std::optional<long>()})
            add("index_raising", [=] {
              auto pp = ParamPoint::with_k(q, k);
              return check_index_raising({ua}, {}, {1, b, k, n, q}, std::min(W, 2), cache->get(pp), tol, jm);
            });
  }

  // Gauss: classical, terminating, upper = lower, and two-variable cases
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n) {
        ParamPoint pp = ParamPoint::with_k(q, k);
        Rational t = pp.t;
        if (n == 1) {
          add("gauss_4_1", [=] { return detail::gauss_adaptive(q, q, pow(q, 3), 1, pp, tol); });
          add("gauss_4_1", [=] { return gauss_check(pow(q, -2), make_rational(2, 3), make_rational(1, 5), 1, pp, 0, tol); });
          add("gauss_4_1", [=] { return detail::gauss_adaptive(make_rational(4), make_rational(1, 3), make_rational(1, 3), 1, pp, tol); });
        } else {
          // c t^{1-n} = q^2/2 keeps every product argument inside the unit disc
          Rational b = q * q * q * q * pow(t, n - 1) / 2;
          add("gauss_4_1", [=] { return detail::gauss_adaptive(q, q, b, n, pp, tol); });
          add("gauss_4_1", [=] { return gauss_check(pow(q, -2), make_rational(2, 3), make_rational(1, 5), n, pp, 0, tol); });
        }
      }
  for (const auto& q : cfg.q)
    for (long k : cfg.k)
      for (int n : cfg.n) add("laplace", [=] { return check_laplace_ratio(n, k, q, tol); });

  add("hahn_suite", [] { return hahn_suite(8, 3); });
  return tasks;
}

/// Runs every task (concurrently), in a fixed output order.
inline std::vector<CheckReport> run_tasks(const std::vector<CheckTask>& tasks, const RunConfig& cfg) {
  std::vector<std::vector<CheckReport>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      auto start = std::chrono::steady_clock::now();
      std::vector<CheckReport> rs;
      try {
        rs = tasks[i].run();
      } catch (const std::exception& e) {
        CheckReport r;
        r.status = Status::fail;
        r.detail = std::string("error: ") + e.what();
        rs = {r};
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : rs) {
        if (r.check != tasks[i].check) {
          r.detail = r.check.empty() ? r.detail : r.check + (r.detail.empty() ? "" : ": " + r.detail);
          r.check = tasks[i].check;
        }
        if (cfg.timing) r.elapsed_ms = ms / static_cast<double>(rs.size());
      }
      slots[i] = std::move(rs);
    }
  };
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<CheckReport> out;
  for (auto& rs : slots)
    for (auto& r : rs) out.push_back(std::move(r));
  return out;
}

inline std::vector<CheckReport> run(const std::vector<std::string>& selected, const RunConfig& cfg) {
  return run_tasks(build_tasks(selected, cfg, std::make_shared<BasisCache>()), cfg);
}

inline nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline std::string reports_to_text(const std::vector<CheckReport>& reports) {
  std::string s;
  std::size_t passed = 0, failed = 0;
  for (const auto& r : reports) {
    s += std::string(to_string(r.status)) + "  " + r.check + "  " + params_to_string(r.parameters) + "\n";
    s += "      lhs " + r.lhs + "\n      rhs " + r.rhs + "\n";
    if (r.tail_budget != 0 || r.tolerance != 0)
      s += "      tol " + to_decimal(r.tolerance, 3) + "  tail " + to_decimal(r.tail_budget, 6) + "\n";
    if (!r.detail.empty()) s += "      " + r.detail + "\n";
    if (r.elapsed_ms) s += "      " + std::to_string(*r.elapsed_ms) + " ms\n";
    passed += r.passed();
    failed += r.failed();
  }
  s += std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " +
       std::to_string(reports.size() - passed - failed) + " skipped\n";
  return s;
}

/// 0 when every non-skipped report passed, 1 otherwise.
inline int exit_status(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.failed()) return 1;
  return 0;
}

}  // namespace qthyper
