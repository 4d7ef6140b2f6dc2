// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/circuit.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include "sonc/errors.hpp"

namespace sonc {

CircuitPolynomial CircuitPolynomial::make(Simplex trellis, std::vector<Rational> coeffs,
                                          Exponent beta, Rational d) {
  if (!trellis.all_even())
    throw std::invalid_argument("trellis vertices must be even-entried");
  if (coeffs.size() != trellis.vertices.size())
    throw std::invalid_argument("coefficient count does not match trellis");
  for (const Rational& c : coeffs)
    if (c <= 0) throw std::invalid_argument("trellis coefficients must be positive");
  auto bary = barycentric_coordinates(trellis, beta);
  if (!bary)
    throw std::invalid_argument("inner point " + beta.str() +
                                " is not strictly inside the trellis simplex");
  CircuitPolynomial c;
  c.nvars = trellis.nvars();
  c.trellis = std::move(trellis);
  c.coeffs = std::move(coeffs);
  c.beta = std::move(beta);
  c.d = std::move(d);
  c.lambdas = std::move(*bary);
  return c;
}

SparsePolynomial CircuitPolynomial::expand() const {
  SparsePolynomial f(nvars);
  for (std::size_t i = 0; i < trellis.vertices.size(); ++i)
    f.add_term(trellis.vertices[i], coeffs[i]);
  f.add_term(beta, Rational(-d));
  return f;
}

CircuitPolynomial CircuitPolynomial::scaled(int k) const {
  std::vector<Exponent> verts;
  verts.reserve(trellis.vertices.size());
  for (const Exponent& v : trellis.vertices) verts.push_back(v.scaled(k));
  return CircuitPolynomial::make(Simplex::make(std::move(verts)), coeffs,
                                 beta.scaled(k), d);
}

CircuitPolynomial CircuitPolynomial::unscaled(int k) const {
  std::vector<Exponent> verts;
  verts.reserve(trellis.vertices.size());
  for (const Exponent& v : trellis.vertices) verts.push_back(v.divided(k));
  return CircuitPolynomial::make(Simplex::make(std::move(verts)), coeffs,
                                 beta.divided(k), d);
}

ClassifyResult classify_circuit(const SparsePolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomialError();
  ClassifyResult result;

  bool all_even_positive = true;
  for (const auto& [e, c] : f.terms())
    if (!e.is_even() || c < 0) all_even_positive = false;
  if (all_even_positive) {
    bool has_inner = false;
    std::vector<Exponent> pts;
    for (const auto& [e, c] : f.terms()) pts.push_back(e);
    const auto verts = polytope_vertices(pts);
    has_inner = verts.size() != pts.size();
    if (!has_inner) {
      result.kind = ClassifyResult::Kind::MonomialSquares;
      result.reason = "sum of monomial squares (no inner term)";
      return result;
    }
    // Even positive inner term: a circuit with negative d, handled below.
  }

  std::vector<Exponent> pts;
  pts.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) pts.push_back(e);
  const std::vector<Exponent> verts = polytope_vertices(std::move(pts));

  std::vector<Exponent> inner;
  for (const auto& [e, c] : f.terms()) {
    if (std::find(verts.begin(), verts.end(), e) == verts.end()) inner.push_back(e);
  }
  if (inner.size() != 1) {
    result.kind = ClassifyResult::Kind::NotCircuit;
    result.reason = inner.empty() ? "no inner support point"
                                  : std::to_string(inner.size()) + " inner support points";
    return result;
  }
  for (const Exponent& v : verts) {
    if (!v.is_even()) {
      result.kind = ClassifyResult::Kind::NotCircuit;
      result.reason = "vertex " + v.str() + " has an odd entry";
      return result;
    }
    if (f.at(v) <= 0) {
      result.kind = ClassifyResult::Kind::NotCircuit;
      result.reason = "vertex " + v.str() + " has a nonpositive coefficient";
      return result;
    }
  }
  if (!affinely_independent(verts)) {
    result.kind = ClassifyResult::Kind::NotCircuit;
    result.reason = "vertex set is not a simplex";
    return result;
  }
  Simplex trellis;
  trellis.vertices = verts;  // polytope_vertices returns sorted unique points
  std::vector<Rational> coeffs;
  coeffs.reserve(verts.size());
  for (const Exponent& v : trellis.vertices) coeffs.push_back(f.at(v));
  const Exponent& beta = inner.front();
  if (!barycentric_coordinates(trellis, beta)) {
    result.kind = ClassifyResult::Kind::NotCircuit;
    result.reason = "inner point " + beta.str() + " is not strictly inside the simplex";
    return result;
  }
  result.kind = ClassifyResult::Kind::Circuit;
  result.circuit = CircuitPolynomial::make(std::move(trellis), std::move(coeffs), beta,
                                           Rational(-f.at(beta)));
  return result;
}

namespace {

struct ThetaLedger {
  Rational power;      // Theta^root
  unsigned long root;  // lcm of lambda denominators
};

ThetaLedger theta_ledger(const CircuitPolynomial& c) {
  Int q(1);
  for (const Rational& l : c.lambdas.weights) q = lcm(q, denominator(l));
  if (q > 1'000'000)
    throw std::runtime_error("circuit number: lambda denominators too large");
  const unsigned long root = q.convert_to<unsigned long>();
  Rational power(1);
  for (std::size_t i = 0; i < c.lambdas.weights.size(); ++i) {
    const Rational& l = c.lambdas.weights[i];
    const Rational scaled = l * q;  // integral by construction of q
    const Int p = numerator(scaled);
    power *= pow_rational(c.coeffs[i] / l, p.convert_to<long>());
  }
  return {std::move(power), root};
}

}  // namespace

CircuitNumber circuit_number(const CircuitPolynomial& c, unsigned precision_bits) {
  auto [power, root] = theta_ledger(c);
  CircuitNumber num;
  num.power = power;
  num.root = root;
  num.precision_bits = precision_bits;
  Rational exact_root;
  num.exact = exact_nth_root(power, root, exact_root);
  if (num.exact) num.exact_value = exact_root;

  using boost::multiprecision::mpfr_float;
  const unsigned digits =
      static_cast<unsigned>((precision_bits + 64) * 0.30103) + 4;
  mpfr_float value(0, digits);
  value = mpfr_float(power, digits);
  value = pow(value, mpfr_float(1, digits) / root);
  num.approx = value.convert_to<double>();
  num.decimal = value.str(static_cast<std::streamsize>(
      static_cast<unsigned>(precision_bits * 0.30103) + 2));
  return num;
}

std::string CircuitNumber::to_string() const {
  return exact ? sonc::to_string(exact_value) : decimal;
}

const char* to_string(CircuitVerdict v) {
  switch (v) {
    case CircuitVerdict::Yes: return "yes";
    case CircuitVerdict::No: return "no";
    case CircuitVerdict::Boundary: return "boundary";
  }
  return "?";
}

CircuitVerdict is_nonnegative_circuit(const CircuitPolynomial& c) {
  Rational dd = c.d;
  if (c.beta.is_even()) {
    if (dd <= 0) return CircuitVerdict::Yes;  // d <= 0 <= Theta
  } else {
    if (dd < 0) dd = -dd;
    if (dd == 0) return CircuitVerdict::Yes;
  }
  auto [power, root] = theta_ledger(c);
  const Rational lhs = pow_rational(dd, static_cast<long>(root));
  if (lhs < power) return CircuitVerdict::Yes;
  if (lhs == power) return CircuitVerdict::Boundary;
  return CircuitVerdict::No;
}

}  // namespace sonc
