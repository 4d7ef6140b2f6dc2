// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sonc/soncrep.hpp"
#include "sonc/sosb.hpp"

namespace sonc {

/// Positive combination of squares and monomials that reproduces a banana
/// polynomial exactly; this is its nonnegativity witness.
struct BananaProvenance {
  std::vector<std::pair<Rational, BinomialSquare>> squares;
  std::vector<std::pair<Rational, MonomialSquare>> monomials;
};

/// Nonnegative polynomial with at most one negative term: positive masses on
/// even points plus the term -d x^beta (d > 0 when beta is even; either sign
/// when beta is odd).
struct BananaPolynomial {
  int nvars = 0;
  std::map<Exponent, Rational> pos;
  Exponent beta;
  Rational d;
  BananaProvenance provenance;

  SparsePolynomial to_polynomial() const;
  SparsePolynomial provenance_expansion() const;
};

struct BananaMerge {
  std::vector<BananaPolynomial> bananas;      // at most one per Gamma point
  std::vector<MonomialSquare> remainder;
};

/// Folds binomial squares into a running sum of banana polynomials, keeping
/// one banana per negative point and a free positive pool. Conservation is
/// exact: bananas + remainder = monos + sum of squares.
BananaMerge merge_squares_to_bananas(std::vector<BinomialSquare> squares,
                                     std::vector<MonomialSquare> monos, int nvars);

struct BananaCircuits {
  std::vector<CircuitPolynomial> circuits;
  std::vector<CircuitVerdict> verdicts;
  std::vector<MonomialSquare> monomials;
};

/// Splits a banana into nonnegative circuits supported on its own points via
/// the single-group feasibility program. Infeasibility contradicts the
/// banana's provenance and raises DecompositionError.
BananaCircuits banana_to_circuits(const BananaPolynomial& b, double tol);

/// Full same-support pipeline: substitute x -> x^(2n+1), decompose into
/// binomial squares, merge into bananas, split the bananas into circuits and
/// undo the substitution. Every output circuit has its vertices in Lambda(f)
/// and its inner point in Gamma(f), and the certificate sums to f exactly.
SONCCertificate same_support_transform(const std::vector<CircuitPolynomial>& circuits,
                                       double tol);

}  // namespace sonc
