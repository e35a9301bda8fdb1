#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthyper/rational.hpp"

namespace qthyper {

/// Integer partition: weakly decreasing positive parts.
///
/// Ordering (`operator<`) is the library-wide deterministic order: weight
/// ascending, then lexicographically descending, so (2) precedes (1,1).
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
  /// Sorts and drops zeros, so any nonnegative composition is accepted.
  static Partition from_composition(std::vector<int> v) {
    std::erase(v, 0);
    std::sort(v.begin(), v.end(), std::greater<>());
    return Partition(std::move(v));
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  /// lambda_i with 1-based i; zero beyond the length.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  Partition conjugate() const {
    std::vector<int> c;
    if (!parts_.empty()) {
      c.resize(parts_[0], 0);
      for (int p : parts_)
        for (int j = 0; j < p; ++j) ++c[j];
    }
    return Partition(std::move(c));
  }

  /// Arm and leg of the cell in row i, column j (both 1-based).
  int arm(int i, int j) const { return part(i) - j; }
  int leg(int i, int j) const { return conjugate().part(j) - i; }

  /// Multiplicity of part r.
  int multiplicity(int r) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), r)); }

  /// Union of multisets of parts, e.g. (2,1) u (1) = (2,1,1).
  Partition merged(const Partition& other) const {
    std::vector<int> v = parts_;
    v.insert(v.end(), other.parts_.begin(), other.parts_.end());
    return from_composition(std::move(v));
  }

  /// Dominance order: this <= other iff every partial sum is <=. Requires equal weights.
  bool dominated_by(const Partition& other) const {
    if (weight() != other.weight()) return false;
    int a = 0, b = 0;
    for (int i = 1; i <= std::max(length(), other.length()); ++i) {
      a += part(i);
      b += other.part(i);
      if (a > b) return false;
    }
    return true;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend bool operator<(const Partition& a, const Partition& b) {
    int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(b.parts_.begin(), b.parts_.end(), a.parts_.begin(), a.parts_.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

 private:
  std::vector<int> parts_;
};

/// n(lambda) = sum_i (i-1) lambda_i.
inline long nlambda(const Partition& p) {
  long s = 0;
  for (int i = 1; i <= p.length(); ++i) s += static_cast<long>(i - 1) * p.part(i);
  return s;
}

/// z_lambda = prod_r r^{m_r} m_r!.
inline Integer z_lambda(const Partition& p) {
  Integer z = 1;
  for (int i = 0; i < p.length();) {
    int r = p.parts()[i], m = 0;
    while (i < p.length() && p.parts()[i] == r) ++i, ++m;
    Integer rm;
    mpz_ui_pow_ui(rm.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(m));
    z *= rm * factorial(m);
  }
  return z;
}

/// Partitions of exactly `weight` with at most `max_length` parts (and parts
/// at most `max_part`), lexicographically descending.
inline std::vector<Partition> partitions_of(int weight, int max_length, int max_part = -1) {
  std::vector<Partition> out;
  if (weight < 0 || max_length < 0) return out;
  if (max_part < 0 || max_part > weight) max_part = weight;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(weight, max_part);
  return out;
}

/// All partitions with weight <= max_weight and length <= max_length, in the
/// library order (weight ascending, then lexicographically descending).
inline std::vector<Partition> partitions_upto(int max_weight, int max_length) {
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto level = partitions_of(w, max_length);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace qthyper
