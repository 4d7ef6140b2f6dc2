// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sonc {

/// Exponent vector of a monomial: fixed-length, componentwise nonnegative.
/// Ordered lexicographically so that every container iteration in the
/// toolkit is deterministic.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> entries) : e_(std::move(entries)) {
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("negative exponent entry");
  }

  static Exponent zeros(int n) { return Exponent(std::vector<int>(n, 0)); }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return e_; }

  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  bool is_even() const {
    for (int v : e_)
      if (v % 2 != 0) return false;
    return true;
  }

  bool is_zero() const {
    for (int v : e_)
      if (v != 0) return false;
    return true;
  }

  Exponent scaled(int k) const {
    if (k < 0) throw std::invalid_argument("negative scale");
    std::vector<int> r(e_);
    for (int& v : r) v *= k;
    return Exponent(std::move(r));
  }

  bool divisible_by(int k) const {
    for (int v : e_)
      if (v % k != 0) return false;
    return true;
  }

  Exponent divided(int k) const {
    if (k <= 0 || !divisible_by(k))
      throw std::invalid_argument("exponent not divisible by " + std::to_string(k));
    std::vector<int> r(e_);
    for (int& v : r) v /= k;
    return Exponent(std::move(r));
  }

  Exponent plus(const Exponent& o) const {
    check_dim(o);
    std::vector<int> r(e_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
    return Exponent(std::move(r));
  }

  /// Midpoint of two lattice points; empty when not integral.
  static std::optional<Exponent> midpoint(const Exponent& a, const Exponent& b) {
    a.check_dim(b);
    std::vector<int> r(a.e_.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int s = a.e_[i] + b.e_[i];
      if (s % 2 != 0) return std::nullopt;
      r[i] = s / 2;
    }
    return Exponent(std::move(r));
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    return a.e_ <=> b.e_;  // lexicographic
  }

 private:
  void check_dim(const Exponent& o) const {
    if (e_.size() != o.e_.size())
      throw std::invalid_argument("exponent dimension mismatch");
  }

  std::vector<int> e_;
};

}  // namespace sonc
