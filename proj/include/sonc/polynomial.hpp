// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sonc/errors.hpp"
#include "sonc/exponent.hpp"
#include "sonc/rational.hpp"

namespace sonc {

/// Sparse multivariate polynomial with exact rational coefficients, keyed by
/// exponent vector. Zero coefficients are never stored; iteration over terms
/// is lexicographic in the exponent, hence deterministic.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(int nvars) : nvars_(nvars) {
    if (nvars <= 0) throw std::invalid_argument("nvars must be positive");
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  /// Coefficient at `e` (zero when absent).
  Rational at(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c * x^e, merging with any existing term and dropping exact zeros.
  void add_term(const Exponent& e, const Rational& c);

  SparsePolynomial& operator+=(const SparsePolynomial& o);
  SparsePolynomial& operator-=(const SparsePolynomial& o);
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) {
    a += b;
    return a;
  }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) {
    a -= b;
    return a;
  }
  SparsePolynomial scaled_by(const Rational& c) const;

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) = default;

  /// Canonical text form; parses back to an identical term map.
  std::string to_text() const;

  std::string to_json() const;

  double evaluate(const std::vector<double>& x) const;

 private:
  int nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Parses the polynomial grammar
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := coeff ('*' factor)* | factor ('*' factor)*
///   factor := var ('^' nat)?
///   var    := 'x' nat   (aliases x,y,z accepted for nvars <= 3)
///   coeff  := rational or exact decimal literal
/// When nvars == 0 the variable count is inferred from the largest index.
SparsePolynomial parse_polynomial(const std::string& text, int nvars = 0);

SparsePolynomial polynomial_from_json(const std::string& json_text);

/// Even-and-positive support points versus the rest. Gamma coefficients are
/// reported as d_b = -(coefficient), so f = sum(c_a x^a) - sum(d_b x^b).
struct SupportPartition {
  std::map<Exponent, Rational> lambda;   // even exponent, positive coefficient
  std::map<Exponent, Rational> gamma_d;  // d_b for the remaining points
};

SupportPartition support_partition(const SparsePolynomial& f);

/// Componentwise substitution x_i -> x_i^k.
SparsePolynomial power_substitute(const SparsePolynomial& f, int k);

/// Inverse of power_substitute; requires every exponent divisible by k.
SparsePolynomial power_unsubstitute(const SparsePolynomial& f, int k);

/// True iff the parts sum to f exactly.
bool verify_sum(const std::vector<SparsePolynomial>& parts, const SparsePolynomial& f);

}  // namespace sonc
