// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <optional>
#include <string>

#include "sonc/geometry.hpp"
#include "sonc/polynomial.hpp"

namespace sonc {

/// Circuit polynomial: positive coefficients on an even trellis plus a single
/// inner term  sum(c_a x^a) - d x^beta  with beta strictly inside the trellis
/// simplex. d may carry either sign; d = 0 is the degenerate no-inner-term case.
struct CircuitPolynomial {
  int nvars = 0;
  Simplex trellis;
  std::vector<Rational> coeffs;  // aligned with trellis.vertices, all > 0
  Exponent beta;
  Rational d;
  Barycentrics lambdas;  // barycentric weights of beta, all > 0

  /// Validates the invariants and solves for the barycentric weights.
  static CircuitPolynomial make(Simplex trellis, std::vector<Rational> coeffs,
                                Exponent beta, Rational d);

  SparsePolynomial expand() const;

  /// Componentwise substitution x_i -> x_i^k on the support.
  CircuitPolynomial scaled(int k) const;
  CircuitPolynomial unscaled(int k) const;
};

struct ClassifyResult {
  enum class Kind { Circuit, MonomialSquares, NotCircuit };
  Kind kind = Kind::NotCircuit;
  std::optional<CircuitPolynomial> circuit;
  std::string reason;
};

/// Decides whether supp(f) = A + {beta} for an even affinely independent
/// vertex set A with positive coefficients and beta strictly inside. A pure
/// sum of monomial squares gets its own tag.
ClassifyResult classify_circuit(const SparsePolynomial& f);

/// Circuit number Theta = prod (c_a / lambda_a)^(lambda_a), kept as the exact
/// pair (power, root) with Theta^root = power. `exact_value` is set when the
/// root extracts exactly in the rationals.
struct CircuitNumber {
  Rational power;
  unsigned long root = 1;
  bool exact = false;
  Rational exact_value;
  unsigned precision_bits = 0;
  double approx = 0.0;
  std::string decimal;  // evaluation at precision_bits

  std::string to_string() const;
};

CircuitNumber circuit_number(const CircuitPolynomial& c, unsigned precision_bits = 128);

enum class CircuitVerdict { Yes, No, Boundary };

const char* to_string(CircuitVerdict v);

/// Exact nonnegativity test: compares |d| (odd beta) or d (even beta) against
/// Theta by raising both sides to the common lambda denominator, so boundary
/// circuits are recognized without any floating comparison.
CircuitVerdict is_nonnegative_circuit(const CircuitPolynomial& c);

}  // namespace sonc
