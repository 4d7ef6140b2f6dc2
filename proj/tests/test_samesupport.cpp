// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include "sonc/samesupport.hpp"
#include "support/gen.hpp"

using namespace sonc;

namespace {

Exponent E(std::vector<int> v) { return Exponent(std::move(v)); }

SparsePolynomial merge_total(const BananaMerge& merged, int nvars) {
  SparsePolynomial total(nvars);
  for (const BananaPolynomial& b : merged.bananas) total += b.to_polynomial();
  for (const MonomialSquare& m : merged.remainder) total.add_term(m.w, m.c);
  return total;
}

std::vector<CircuitPolynomial> random_circuit_list(testgen::Rng& rng, int n, int parts) {
  std::vector<CircuitPolynomial> list;
  for (int attempt = 0; attempt < parts * 20 && static_cast<int>(list.size()) < parts;
       ++attempt) {
    std::uniform_int_distribution<int> mode(0, 1);
    auto c = testgen::random_circuit(rng, n, 6, mode(rng));
    if (c) list.push_back(*c);
  }
  return list;
}

}  // namespace

TEST_CASE("merge: one square becomes one banana") {
  const BinomialSquare s = BinomialSquare::make(Rational(1), Rational(1), E({2}), E({0}));
  const BananaMerge merged = merge_squares_to_bananas({s}, {}, 1);
  REQUIRE(merged.bananas.size() == 1);
  CHECK(merged.remainder.empty());
  CHECK(merged.bananas[0].beta == E({1}));
  CHECK(merged.bananas[0].d == 2);
  CHECK(merged.bananas[0].to_polynomial() == parse_polynomial("x1^2 + 1 - 2*x1", 1));
}

TEST_CASE("merge: opposite squares cancel into pure remainder") {
  const BinomialSquare plus = BinomialSquare::make(Rational(1), Rational(1), E({2}), E({0}));
  const BinomialSquare minus = BinomialSquare::make(Rational(1), Rational(-1), E({2}), E({0}));
  const BananaMerge merged = merge_squares_to_bananas({plus, minus}, {}, 1);
  CHECK(merged.bananas.empty());
  REQUIRE(merged.remainder.size() == 2);
  CHECK(merged.remainder[0].c == 2);  // constant term
  CHECK(merged.remainder[1].c == 2);  // x^2 term
}

TEST_CASE("merge: two overlapping squares keep one negative point each") {
  // (x^2 - x)^2 + (x - 1)^2 = x^4 - 2x^3 + 2x^2 - 2x + 1
  const BinomialSquare s1 = BinomialSquare::make(Rational(1), Rational(1), E({4}), E({2}));
  const BinomialSquare s2 = BinomialSquare::make(Rational(1), Rational(1), E({2}), E({0}));
  const BananaMerge merged = merge_squares_to_bananas({s1, s2}, {}, 1);
  REQUIRE(merged.bananas.size() == 2);
  CHECK(merged.bananas[0].beta == E({1}));
  CHECK(merged.bananas[1].beta == E({3}));
  CHECK(merge_total(merged, 1) ==
        parse_polynomial("x1^4 - 2*x1^3 + 2*x1^2 - 2*x1 + 1", 1));
}

TEST_CASE("merge: the pool lends mass before a banana forms") {
  // monomial x^6 saturates the cross of the only square; no banana remains
  const BinomialSquare s = BinomialSquare::make(Rational(1, 2), Rational(1, 2), E({12}), E({0}));
  const BananaMerge merged =
      merge_squares_to_bananas({s}, {{Rational(1), E({6})}}, 1);
  CHECK(merged.bananas.empty());
  CHECK(merge_total(merged, 1) == parse_polynomial("1/2*x1^12 + 1/2", 1));
}

TEST_CASE("merge: conservation holds after every fold step") {
  testgen::Rng rng(414213);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), cnt(1, 6);
    const int n = nv(rng);
    std::vector<BinomialSquare> squares;
    SparsePolynomial total(n);
    const int count = cnt(rng);
    for (int i = 0; i < count; ++i) {
      const Exponent u = testgen::random_exponent(rng, n, 3).scaled(2);
      Exponent v = testgen::random_exponent(rng, n, 3).scaled(2);
      if (u == v) continue;
      Rational asq = testgen::random_rational(rng, 1, 9, 4);
      Rational ab = testgen::random_rational(rng, -6, 6, 3);
      if (ab == 0) ab = 1;
      squares.push_back(BinomialSquare::make(asq, ab, u, v));
    }
    // fold prefixes: the merge of any prefix reproduces the prefix sum
    for (std::size_t len = 0; len <= squares.size(); ++len) {
      std::vector<BinomialSquare> prefix(squares.begin(), squares.begin() + len);
      SparsePolynomial expected(n);
      for (const BinomialSquare& s : prefix) expected += s.expand(n);
      const BananaMerge merged = merge_squares_to_bananas(prefix, {}, n);
      CHECK(merge_total(merged, n) == expected);
      for (const BananaPolynomial& b : merged.bananas) {
        CHECK(b.d != 0);
        if (b.beta.is_even()) CHECK(b.d > 0);
      }
    }
  }
}

TEST_CASE("merge: provenance reproduces every banana exactly") {
  testgen::Rng rng(1618);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), cnt(2, 6);
    const int n = nv(rng);
    std::vector<BinomialSquare> squares;
    const int count = cnt(rng);
    for (int i = 0; i < count; ++i) {
      const Exponent u = testgen::random_exponent(rng, n, 3).scaled(2);
      Exponent v = testgen::random_exponent(rng, n, 3).scaled(2);
      if (u == v) continue;
      squares.push_back(BinomialSquare::make(testgen::random_rational(rng, 1, 9, 4),
                                             testgen::random_rational(rng, 1, 6, 3), u, v));
    }
    const BananaMerge merged = merge_squares_to_bananas(squares, {}, n);
    for (const BananaPolynomial& b : merged.bananas) {
      CHECK(b.provenance_expansion() == b.to_polynomial());
      for (const auto& [factor, sq] : b.provenance.squares) CHECK(factor >= 0);
      for (const auto& [factor, mono] : b.provenance.monomials) CHECK(factor >= 0);
    }
  }
}

TEST_CASE("banana_to_circuits: fixtures") {
  SUBCASE("a circuit-shaped banana returns itself") {
    BananaPolynomial b;
    b.nvars = 1;
    b.pos = {{E({0}), Rational(1)}, {E({2}), Rational(1)}};
    b.beta = E({1});
    b.d = 2;
    const BananaCircuits split = banana_to_circuits(b, 1e-8);
    REQUIRE(split.circuits.size() == 1);
    CHECK(split.monomials.empty());
    CHECK(split.circuits[0].expand() == b.to_polynomial());
  }
  SUBCASE("extra mass becomes a monomial square") {
    BananaPolynomial b;
    b.nvars = 2;
    b.pos = {{E({4, 0}), Rational(1)}, {E({0, 4}), Rational(1)}, {E({0, 0}), Rational(1)}};
    b.beta = E({2, 2});
    b.d = 2;
    const BananaCircuits split = banana_to_circuits(b, 1e-8);
    REQUIRE(split.circuits.size() == 1);
    CHECK(split.circuits[0].trellis.vertices ==
          std::vector<Exponent>{E({0, 4}), E({4, 0})});
    REQUIRE(split.monomials.size() == 1);
    CHECK(split.monomials[0].w == E({0, 0}));
  }
  SUBCASE("an inner point spanning two simplices splits exactly") {
    BananaPolynomial b;
    b.nvars = 2;
    b.pos = {{E({0, 0}), Rational(2)},
             {E({4, 0}), Rational(2)},
             {E({0, 4}), Rational(1)},
             {E({4, 4}), Rational(1)}};
    b.beta = E({2, 1});
    b.d = 4;
    const BananaCircuits split = banana_to_circuits(b, 1e-8);
    SparsePolynomial total(2);
    for (const CircuitPolynomial& c : split.circuits) total += c.expand();
    for (const MonomialSquare& m : split.monomials) total.add_term(m.w, m.c);
    CHECK(total == b.to_polynomial());
  }
}

TEST_CASE("same_support_transform: identity on an already tight circuit") {
  const auto c = *classify_circuit(parse_polynomial("x1^4 + 1 - 2*x1^2", 1)).circuit;
  const SONCCertificate cert = same_support_transform({c}, 1e-8);
  CHECK(cert.exact);
  REQUIRE(cert.circuits.size() == 1);
  CHECK(cert.circuits[0].expand() == c.expand());
  CHECK(cert.monomial_squares.empty());
}

TEST_CASE("same_support_transform: cancelling inner terms leave monomial squares") {
  const CircuitPolynomial c1 = CircuitPolynomial::make(
      Simplex::make({E({0}), E({4})}), {Rational(1, 2), Rational(1, 2)}, E({2}), Rational(1));
  const CircuitPolynomial c2 = CircuitPolynomial::make(
      Simplex::make({E({0}), E({4})}), {Rational(1, 2), Rational(1, 2)}, E({2}), Rational(-1));
  const SONCCertificate cert = same_support_transform({c1, c2}, 1e-8);
  CHECK(cert.exact);
  CHECK(cert.circuits.empty());
  REQUIRE(cert.monomial_squares.size() == 2);
  CHECK(cert.monomial_squares[0].w == E({0}));
  CHECK(cert.monomial_squares[0].c == 1);
  CHECK(cert.monomial_squares[1].w == E({4}));
  CHECK(cert.monomial_squares[1].c == 1);
}

TEST_CASE("same_support_transform: Motzkin round trips through k = 5") {
  const CircuitPolynomial motzkin = CircuitPolynomial::make(
      Simplex::make({E({4, 2}), E({2, 4}), E({0, 0})}),
      {Rational(1), Rational(1), Rational(1)}, E({2, 2}), Rational(3));
  const SONCCertificate cert = same_support_transform({motzkin}, 1e-8);
  CHECK(cert.exact);
  REQUIRE(cert.circuits.size() == 1);
  CHECK(cert.circuits[0].expand() == motzkin.expand());
}

TEST_CASE("same_support_transform: support discipline on random decompositions") {
  testgen::Rng rng(2718281);
  int done = 0;
  for (int trial = 0; trial < 120 && done < 30; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), parts(1, 4);
    const int n = nv(rng);
    const std::vector<CircuitPolynomial> circuits =
        random_circuit_list(rng, n, parts(rng));
    if (circuits.empty()) continue;
    SparsePolynomial f(n);
    for (const CircuitPolynomial& c : circuits) f += c.expand();
    if (f.is_zero()) continue;
    SONCCertificate cert(n);
    try {
      cert = same_support_transform(circuits, 1e-8);
    } catch (const DeskScaleLimitError&) {
      continue;
    }
    ++done;
    CHECK(cert.exact);
    CHECK(verify_certificate(cert, f));
    const SupportPartition part = support_partition(f);
    for (const CircuitPolynomial& c : cert.circuits) {
      CHECK(part.gamma_d.count(c.beta) == 1);
      for (const Exponent& v : c.trellis.vertices) CHECK(part.lambda.count(v) == 1);
    }
    for (const MonomialSquare& m : cert.monomial_squares)
      CHECK(part.lambda.count(m.w) == 1);
  }
  CHECK(done == 30);
}

TEST_CASE("odd-power substitution preserves circuit verdicts") {
  testgen::Rng rng(141421);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 40; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), mode(0, 2);
    auto c = testgen::random_circuit(rng, nv(rng), 6, mode(rng));
    if (!c) continue;
    ++done;
    for (int k : {3, 5}) {
      const CircuitPolynomial scaled = c->scaled(k);
      CHECK(is_nonnegative_circuit(scaled) == is_nonnegative_circuit(*c));
      CHECK(power_substitute(c->expand(), k) == scaled.expand());
      CHECK(power_unsubstitute(scaled.expand(), k) == c->expand());
      // classification commutes with the substitution
      const ClassifyResult cls = classify_circuit(scaled.expand());
      REQUIRE(cls.kind == ClassifyResult::Kind::Circuit);
      CHECK(cls.circuit->beta == c->beta.scaled(k));
      CHECK(cls.circuit->d == c->d);
      CHECK(cls.circuit->lambdas.weights == c->lambdas.weights);
    }
  }
  CHECK(done == 40);
}

TEST_CASE("same_support_transform: guard rails") {
  CHECK_THROWS_AS(same_support_transform({}, 1e-8), ZeroPolynomialError);
  // a circuit violating nonnegativity is rejected up front
  const CircuitPolynomial bad = CircuitPolynomial::make(
      Simplex::make({E({0}), E({2})}), {Rational(1), Rational(1)}, E({1}), Rational(3));
  CHECK_THROWS_AS(same_support_transform({bad}, 1e-8), DecompositionError);
}
