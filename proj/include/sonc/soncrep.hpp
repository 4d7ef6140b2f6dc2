// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sonc/circuit.hpp"
#include "sonc/geometry.hpp"
#include "sonc/polynomial.hpp"
#include "sonc/sosb.hpp"

namespace sonc {

/// One circuit slot of the feasibility program: a simplex covering the
/// group's inner point, with the member indices into the Lambda point list
/// and the barycentric weights of beta in that simplex.
struct RepSlot {
  Simplex simplex;
  std::vector<std::size_t> members;
  std::vector<Rational> lambdas;
};

/// All slots sharing one Gamma point. dtilde is the magnitude |d_j|; sign
/// records the original orientation for odd beta so certificates restore it.
struct RepGroup {
  Exponent beta;
  Rational dtilde;
  int sign = 1;
  std::vector<RepSlot> slots;
};

struct REPInstance {
  int nvars = 0;
  std::vector<Exponent> lambda_points;
  std::vector<Rational> c;
  std::vector<RepGroup> groups;
};

/// Gamma(f) is empty: f is already a sum of monomial squares.
class TriviallyNonnegativeError : public std::runtime_error {
 public:
  TriviallyNonnegativeError() : std::runtime_error("trivially nonnegative") {}
};

/// Some negative term has no covering simplex: an immediate NOT-SONC witness.
class UncoveredTermError : public std::runtime_error {
 public:
  explicit UncoveredTermError(Exponent beta)
      : std::runtime_error("uncovered negative term at " + beta.str()),
        beta_(std::move(beta)) {}
  const Exponent& beta() const { return beta_; }

 private:
  Exponent beta_;
};

REPInstance build_rep(const SparsePolynomial& f);

enum class RepStatus { Feasible, Infeasible, Inconclusive };

const char* to_string(RepStatus s);

struct RepOptions {
  double tol = 1e-8;
  long max_iterations = 10000;
  bool force_equality = false;  // rescale so every Lambda budget is consumed
};

struct RepSolution {
  RepStatus status = RepStatus::Inconclusive;
  double slack = 0.0;  // t* = min over groups of log(sum Theta) - log dtilde
  long iterations = 0;
  double tol = 0.0;
  std::vector<std::vector<std::vector<double>>> c_num;  // [group][slot][member]
  std::vector<std::vector<double>> d_num;               // [group][slot]
  bool has_exact = false;                               // exact upgrade succeeded
  std::vector<std::vector<std::vector<Rational>>> c_exact;
  std::vector<std::vector<Rational>> d_exact;
};

/// Maximizes the uniform slack t with d split proportionally to the slot
/// circuit numbers, by a log-barrier Newton method in log variables; then
/// attempts an exact rational upgrade of near-feasible solutions so boundary
/// instances are decided exactly.
RepSolution solve_rep(const REPInstance& inst, const RepOptions& opts = {});

struct SONCCertificate {
  int nvars = 0;
  std::vector<CircuitPolynomial> circuits;
  std::vector<CircuitVerdict> verdicts;  // aligned with circuits
  std::vector<MonomialSquare> monomial_squares;
  bool exact = false;
  SparsePolynomial residual;

  explicit SONCCertificate(int n) : nvars(n), residual(n) {}

  SparsePolynomial expansion() const;
};

/// Turns a feasible solution into circuits plus a monomial-square remainder,
/// with every coefficient rationalized and every circuit re-checked exactly.
SONCCertificate extract_certificate(const REPInstance& inst, const RepSolution& sol,
                                    const SparsePolynomial& f);

struct DecideResult {
  enum class Kind { Sonc, NotSonc, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<SONCCertificate> certificate;
  std::string reason;
  double slack = 0.0;
};

DecideResult decide_sonc(const SparsePolynomial& f, double tol = 1e-8);

/// Exact re-check: expansion equals f and every circuit passes the exact
/// d <= Theta test. Optionally reports the residual f - expansion.
bool verify_certificate(const SONCCertificate& cert, const SparsePolynomial& f,
                        SparsePolynomial* residual_out = nullptr);

std::string decide_report_json(const DecideResult& result);

SONCCertificate certificate_from_json(const std::string& text);

/// Accepts either a bare JSON array of circuit objects or an object with a
/// "circuits" array; used by the transform subcommand.
std::vector<CircuitPolynomial> circuit_list_from_json(const std::string& text);

std::string circuit_to_json(const CircuitPolynomial& c, CircuitVerdict verdict);

}  // namespace sonc
