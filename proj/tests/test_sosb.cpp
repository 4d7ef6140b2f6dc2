// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include <set>

#include "sonc/sosb.hpp"
#include "support/gen.hpp"

using namespace sonc;

namespace {

Exponent E(std::vector<int> v) { return Exponent(std::move(v)); }

CircuitPolynomial motzkin() {
  return CircuitPolynomial::make(
      Simplex::make({E({4, 2}), E({2, 4}), E({0, 0})}),
      {Rational(1), Rational(1), Rational(1)}, E({2, 2}), Rational(3));
}

MediatedSet hand_set(const Simplex& trellis, std::vector<std::vector<int>> pts) {
  std::vector<Exponent> v(trellis.vertices);
  for (auto& p : pts) v.emplace_back(std::move(p));
  return MediatedSet{trellis, LatticeSet::make(std::move(v))};
}

}  // namespace

TEST_CASE("binomial square expansion and display") {
  const BinomialSquare s = BinomialSquare::make(Rational(1, 2), Rational(1, 2), E({4, 0}), E({0, 4}));
  CHECK(s.bsq == Rational(1, 2));
  CHECK(s.expand(2) == parse_polynomial("1/2*x1^4 + 1/2*x2^4 - x1^2*x2^2", 2));
  CHECK(s.a_string() == "sqrt(1/2)");
  const BinomialSquare t = BinomialSquare::make(Rational(4), Rational(-2), E({2}), E({0}));
  CHECK(t.b_string() == "-1");
  CHECK(t.expand(1) == parse_polynomial("4*x1^2 + 1 + 4*x1", 1));
}

TEST_CASE("mediation tree: fixtures") {
  SUBCASE("single midpoint chain") {
    const Simplex seg = Simplex::make({E({0}), E({2})});
    const MediationTree tree = mediation_tree(hand_set(seg, {{1}}), E({1}));
    REQUIRE(tree.parents.size() == 1);
    CHECK(tree.parents.at(E({1})) == std::make_pair(E({0}), E({2})));
  }
  SUBCASE("the three-level example set") {
    const Simplex tri = Simplex::make({E({0, 0}), E({4, 0}), E({0, 4})});
    const MediatedSet m = hand_set(tri, {{2, 1}, {2, 2}, {2, 0}});
    const MediationTree tree = mediation_tree(m, E({2, 1}));
    CHECK(tree.parents.at(E({2, 1})) == std::make_pair(E({2, 0}), E({2, 2})));
    CHECK(tree.parents.at(E({2, 2})) == std::make_pair(E({0, 4}), E({4, 0})));
    CHECK(tree.parents.at(E({2, 0})) == std::make_pair(E({0, 0}), E({4, 0})));
  }
  SUBCASE("root on the trellis is an empty tree") {
    const Simplex seg = Simplex::make({E({0}), E({2})});
    CHECK(mediation_tree(hand_set(seg, {}), E({2})).parents.empty());
  }
  SUBCASE("beta outside the set is rejected") {
    const Simplex seg = Simplex::make({E({0}), E({2})});
    CHECK_THROWS_AS(mediation_tree(hand_set(seg, {}), E({1})), std::invalid_argument);
  }
}

TEST_CASE("circuit_to_sosb: textbook fixtures") {
  SUBCASE("x^4 + 1 - 2x^2 over {0,2,4}") {
    const auto c = *classify_circuit(parse_polynomial("x1^4 + 1 - 2*x1^2", 1)).circuit;
    const MediatedSet m = hand_set(c.trellis, {{2}});
    const SosbDecomposition dec = circuit_to_sosb(c, m);
    REQUIRE(dec.squares.size() == 1);
    CHECK(dec.monomials.empty());
    CHECK(dec.squares[0].asq == 1);
    CHECK(dec.squares[0].bsq == 1);
    CHECK(dec.expand(1) == c.expand());
  }
  SUBCASE("x^4 + y^4 - x^2 y^2 splits into half squares") {
    const CircuitPolynomial c = CircuitPolynomial::make(
        Simplex::make({E({4, 0}), E({0, 4})}), {Rational(1), Rational(1)}, E({2, 2}),
        Rational(1));
    const MediatedSet m = hand_set(c.trellis, {{2, 2}});
    const SosbDecomposition dec = circuit_to_sosb(c, m);
    REQUIRE(dec.squares.size() == 1);
    CHECK(dec.squares[0].asq == Rational(1, 2));
    CHECK(dec.squares[0].bsq == Rational(1, 2));
    REQUIRE(dec.monomials.size() == 2);
    CHECK(dec.monomials[0].c == Rational(1, 2));
    CHECK(dec.monomials[1].c == Rational(1, 2));
    CHECK(dec.expand(2) == c.expand());
  }
  SUBCASE("degenerate d = 0 yields monomial squares only") {
    const CircuitPolynomial c = CircuitPolynomial::make(
        Simplex::make({E({0}), E({2})}), {Rational(2), Rational(2)}, E({1}), Rational(0));
    const MediatedSet m = maximal_mediated_set(c.trellis);
    const SosbDecomposition dec = circuit_to_sosb(c, m);
    CHECK(dec.squares.empty());
    CHECK(dec.expand(1) == c.expand());
  }
}

TEST_CASE("circuit_to_sosb: Motzkin controls") {
  SUBCASE("no witness without scaling") {
    const MediatedSet m = maximal_mediated_set(motzkin().trellis);
    CHECK_THROWS_AS(circuit_to_sosb(motzkin(), m), NoMediatedWitnessError);
  }
  SUBCASE("doubling the trellis makes it work") {
    const SosbDecomposition dec = sonc_to_sosb({motzkin()}, 2);
    CHECK(!dec.squares.empty());
    CHECK(dec.expand(2) == power_substitute(motzkin().expand(), 2));
  }
  SUBCASE("odd scalings work through the witness cycles") {
    for (int k : {3, 5}) {
      const SosbDecomposition dec = sonc_to_sosb({motzkin()}, k);
      CHECK(dec.expand(2) == power_substitute(motzkin().expand(), k));
    }
  }
}

TEST_CASE("circuit_to_sosb: exactness and support discipline on random circuits") {
  testgen::Rng rng(271828);
  int done = 0;
  for (int trial = 0; trial < 900 && done < 200; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), mode(0, 1);
    const int n = nv(rng);
    auto c = testgen::random_circuit(rng, n, 8, mode(rng));
    if (!c || c->d == 0) continue;

    MediatedSet m = maximal_mediated_set(c->trellis);
    CircuitPolynomial target = *c;
    if (!m.points.contains(c->beta)) {
      target = c->scaled(n);  // the k = n scaling always provides a witness
      m = maximal_mediated_set(target.trellis);
      REQUIRE(m.points.contains(target.beta));
    }
    const SosbDecomposition dec = circuit_to_sosb(target, m);
    ++done;
    CHECK(dec.expand(n) == target.expand());

    // No support leakage: all expansion exponents stay inside M + {beta}.
    std::set<Exponent> allowed(m.points.points.begin(), m.points.points.end());
    allowed.insert(target.beta);
    for (const BinomialSquare& s : dec.squares) {
      CHECK(allowed.count(s.two_u));
      CHECK(allowed.count(s.two_v));
      CHECK(allowed.count(s.cross()));
    }
    for (const MonomialSquare& mono : dec.monomials) CHECK(allowed.count(mono.w));
  }
  CHECK(done == 200);
}

TEST_CASE("sonc_to_sosb: fixtures") {
  SUBCASE("k = 1 keeps a plain square") {
    const auto c = *classify_circuit(parse_polynomial("x1^2 - 2*x1 + 1", 1)).circuit;
    const SosbDecomposition dec = sonc_to_sosb({c}, 1);
    REQUIRE(dec.squares.size() == 1);
    CHECK(dec.squares[0].asq == 1);
    CHECK(dec.monomials.empty());
  }
  SUBCASE("degenerate circuits pass through as monomial squares") {
    const auto c1 = *classify_circuit(parse_polynomial("x1^2 - 2*x1 + 1", 1)).circuit;
    const CircuitPolynomial c2 = CircuitPolynomial::make(
        Simplex::make({E({0}), E({2})}), {Rational(2), Rational(2)}, E({1}), Rational(0));
    const SosbDecomposition dec = sonc_to_sosb({c1, c2}, 3);
    const SparsePolynomial expected =
        power_substitute(c1.expand() + c2.expand(), 3);
    CHECK(dec.expand(1) == expected);
    REQUIRE(dec.squares.size() == 1);  // squares for x^6 - 2x^3 + 1 only
    CHECK(dec.monomials.size() == 2);  // 2*x^6 and 2
  }
  SUBCASE("k below nvars is rejected") {
    CHECK_THROWS_AS(sonc_to_sosb({motzkin()}, 1), std::invalid_argument);
  }
}
