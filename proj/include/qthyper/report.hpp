#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qthyper/rational.hpp"
#include "qthyper/scalars.hpp"

namespace qthyper {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

using ParamList = std::vector<std::pair<std::string, std::string>>;

/// Outcome of one identity check.
///
/// For exact checks lhs/rhs are "p/q" strings and tail_budget is 0. For
/// certified numerical checks they are decimal renderings, and a pass means
/// |lhs - rhs| <= tolerance + tail_budget with tail_budget the sum of the
/// certified truncation bounds of both sides.
struct CheckReport {
  std::string check;
  ParamList parameters;
  Status status = Status::skipped;
  std::string lhs;
  std::string rhs;
  Rational tolerance = 0;
  Rational tail_budget = 0;
  std::string detail;
  std::optional<double> elapsed_ms;

  bool passed() const { return status == Status::pass; }
  bool failed() const { return status == Status::fail; }
};

inline CheckReport exact_report(std::string name, ParamList params, const Rational& lhs, const Rational& rhs) {
  CheckReport r;
  r.check = std::move(name);
  r.parameters = std::move(params);
  r.lhs = to_string(lhs);
  r.rhs = to_string(rhs);
  r.status = lhs == rhs ? Status::pass : Status::fail;
  if (lhs != rhs) r.detail = "exact mismatch, difference " + to_string(lhs - rhs);
  return r;
}

/// Certified comparison: pass iff |lhs - rhs| <= tol + both tail bounds.
inline CheckReport certified_report(std::string name, ParamList params, const TruncatedValue& lhs,
                                    const TruncatedValue& rhs, const Rational& tol) {
  CheckReport r;
  r.check = std::move(name);
  r.parameters = std::move(params);
  r.lhs = to_decimal(lhs.value, 25);
  r.rhs = to_decimal(rhs.value, 25);
  r.tolerance = tol;
  r.tail_budget = lhs.tail_bound + rhs.tail_bound;
  Rational diff = abs(lhs.value - rhs.value);
  r.status = diff <= tol + r.tail_budget ? Status::pass : Status::fail;
  r.detail = "abs difference " + to_decimal(diff, 6);
  return r;
}

/// As certified_report, with the tolerance taken relative to |rhs|.
inline CheckReport certified_relative_report(std::string name, ParamList params, const TruncatedValue& lhs,
                                             const TruncatedValue& rhs, const Rational& rel_tol) {
  CheckReport r = certified_report(std::move(name), std::move(params), lhs, rhs, rel_tol * abs(rhs.value));
  Rational diff = abs(lhs.value - rhs.value);
  if (rhs.value != 0) r.detail += ", relative difference " + to_decimal(diff / abs(rhs.value), 6);
  return r;
}

/// Folds several sub-results into one report (all must pass).
inline CheckReport combine_reports(std::string name, ParamList params, const std::vector<CheckReport>& parts) {
  CheckReport r;
  r.check = std::move(name);
  r.parameters = std::move(params);
  r.status = Status::pass;
  int failures = 0;
  for (const auto& p : parts) {
    r.tail_budget += p.tail_budget;
    if (p.tolerance > r.tolerance) r.tolerance = p.tolerance;
    if (p.failed()) {
      r.status = Status::fail;
      if (failures++ == 0) {
        r.lhs = p.lhs;
        r.rhs = p.rhs;
        r.detail = "first failure: " + p.check + " " + p.detail;
      }
    }
  }
  if (failures == 0 && !parts.empty()) {
    r.lhs = parts.back().lhs;
    r.rhs = parts.back().rhs;
  }
  r.detail = std::to_string(parts.size() - failures) + "/" + std::to_string(parts.size()) + " sub-checks passed" +
             (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["status"] = to_string(r.status);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["tolerance"] = to_string(r.tolerance);
  j["tail_budget"] = to_string(r.tail_budget);
  j["detail"] = r.detail;
  if (r.elapsed_ms)
    j["elapsed_ms"] = *r.elapsed_ms;
  else
    j["elapsed_ms"] = nullptr;
  return j;
}

inline std::string params_to_string(const ParamList& p) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += " ";
    s += k + "=" + v;
  }
  return s;
}

}  // namespace qthyper
