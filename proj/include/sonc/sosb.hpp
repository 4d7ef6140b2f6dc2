// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sonc/circuit.hpp"
#include "sonc/mediated.hpp"

namespace sonc {

/// Square of a binomial (a x^u - b x^v)^2 with 2u, 2v in a mediated set.
/// Stored through the exact rationals a^2, b^2 and a*b (a > 0, the sign of b
/// rides on ab), so the expansion
///   a^2 x^{2u} + b^2 x^{2v} - 2ab x^{u+v}
/// has rational coefficients even when a and b are irrational square roots.
struct BinomialSquare {
  Rational asq, bsq, ab;
  Exponent two_u, two_v;

  /// bsq is derived from ab^2 / asq; requires asq > 0 and distinct endpoints.
  static BinomialSquare make(Rational asq, Rational ab, Exponent two_u, Exponent two_v);

  Exponent u() const { return two_u.divided(2); }
  Exponent v() const { return two_v.divided(2); }
  Exponent cross() const { return *Exponent::midpoint(two_u, two_v); }
  SparsePolynomial expand(int nvars) const;

  /// "3/2" when exact, otherwise "sqrt(9/2)".
  std::string a_string() const;
  std::string b_string() const;
};

struct MonomialSquare {
  Rational c;  // > 0
  Exponent w;  // even-entried

  SparsePolynomial expand(int nvars) const;
};

struct SosbDecomposition {
  std::vector<BinomialSquare> squares;
  std::vector<MonomialSquare> monomials;

  SparsePolynomial expand(int nvars) const;
};

/// Witness tree inside a mediated set: every non-trellis node maps to the
/// even pair it is the midpoint of, bottoming out at trellis vertices. The
/// witness pair is the lexicographically smallest one among those strictly
/// closer to the trellis, so the tree is deterministic and acyclic.
struct MediationTree {
  Exponent root;
  std::map<Exponent, std::pair<Exponent, Exponent>> parents;
};

MediationTree mediation_tree(const MediatedSet& m, const Exponent& beta);

/// Decomposes a nonnegative circuit into binomial squares plus monomial
/// squares, exactly. Requires c.beta to lie in m (throws
/// NoMediatedWitnessError otherwise) and m to mediate c's trellis.
SosbDecomposition circuit_to_sosb(const CircuitPolynomial& c, const MediatedSet& m);

/// Applies x_i -> x_i^k to every circuit (k >= nvars makes the scaled
/// trellises H-trellises, so every scaled inner point has a witness) and
/// concatenates the per-circuit decompositions.
SosbDecomposition sonc_to_sosb(const std::vector<CircuitPolynomial>& circuits, int k);

}  // namespace sonc
