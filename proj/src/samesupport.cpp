// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/samesupport.hpp"

#include <algorithm>
#include <set>

#include "sonc/errors.hpp"

namespace sonc {

SparsePolynomial BananaPolynomial::to_polynomial() const {
  SparsePolynomial f(nvars);
  for (const auto& [e, c] : pos) f.add_term(e, c);
  f.add_term(beta, Rational(-d));
  return f;
}

SparsePolynomial BananaPolynomial::provenance_expansion() const {
  SparsePolynomial f(nvars);
  for (const auto& [factor, sq] : provenance.squares)
    f += sq.expand(nvars).scaled_by(factor);
  for (const auto& [factor, mono] : provenance.monomials)
    f.add_term(mono.w, factor * mono.c);
  return f;
}

namespace {

// Working copy of a banana under construction during the fold.
struct Work {
  std::map<Exponent, Rational> pos;
  Rational d;  // coefficient at beta is -d
  BananaProvenance prov;
};

void scale_provenance(BananaProvenance& prov, const Rational& f) {
  for (auto& [factor, sq] : prov.squares) factor *= f;
  for (auto& [factor, mono] : prov.monomials) factor *= f;
}

void append_provenance(BananaProvenance& dst, const BananaProvenance& src,
                       const Rational& f) {
  for (const auto& [factor, sq] : src.squares) dst.squares.emplace_back(factor * f, sq);
  for (const auto& [factor, mono] : src.monomials)
    dst.monomials.emplace_back(factor * f, mono);
}

void add_mass(std::map<Exponent, Rational>& m, const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = m.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

}  // namespace

BananaMerge merge_squares_to_bananas(std::vector<BinomialSquare> squares,
                                     std::vector<MonomialSquare> monos, int nvars) {
  std::map<Exponent, BananaPolynomial> bananas;  // keyed by beta
  std::map<Exponent, Rational> pool;
  for (const MonomialSquare& m : monos) {
    if (!m.w.is_even() || m.c <= 0)
      throw std::invalid_argument("merge: monomial squares must be positive and even");
    add_mass(pool, m.w, m.c);
  }
  std::sort(squares.begin(), squares.end(),
            [](const BinomialSquare& a, const BinomialSquare& b) {
              if (a.cross() != b.cross()) return a.cross() < b.cross();
              if (a.two_u != b.two_u) return a.two_u < b.two_u;
              return a.two_v < b.two_v;
            });

  // Removes up to `theta` of banana `b`, returning the removed fraction as a
  // polynomial merged into `work`.
  const auto absorb_banana = [&bananas](Work& work, const Exponent& key,
                                        const Rational& theta) {
    BananaPolynomial& b = bananas.at(key);
    for (const auto& [q, m] : b.pos) add_mass(work.pos, q, theta * m);
    append_provenance(work.prov, b.provenance, theta);
    if (theta == 1) {
      bananas.erase(key);
    } else {
      const Rational keep = 1 - theta;
      for (auto& [q, m] : b.pos) m *= keep;
      b.d *= keep;
      scale_provenance(b.provenance, keep);
    }
  };

  for (const BinomialSquare& s : squares) {
    const Exponent w = s.cross();
    Work work;
    work.prov.squares.emplace_back(Rational(1), s);
    add_mass(work.pos, s.two_u, s.asq);
    add_mass(work.pos, s.two_v, s.bsq);
    Rational coef_w = -2 * s.ab;

    // Deposits at the square's even endpoints dissolve bananas anchored there.
    for (const Exponent& p : {s.two_u, s.two_v}) {
      auto it = bananas.find(p);
      if (it == bananas.end()) continue;
      const Rational deposit = work.pos.count(p) ? work.pos.at(p) : Rational(0);
      if (deposit == 0) continue;
      const Rational theta = std::min(Rational(deposit / it->second.d), Rational(1));
      add_mass(work.pos, p, -theta * it->second.d);
      absorb_banana(work, p, theta);
    }
    if (w.is_even()) {
      // Fold any mass the absorbed bananas carried at w into the cross term.
      if (auto it = work.pos.find(w); it != work.pos.end()) {
        coef_w += it->second;
        work.pos.erase(it);
      }
      // The pool lends its mass at w before a new banana forms.
      if (coef_w < 0) {
        if (auto it = pool.find(w); it != pool.end()) {
          const Rational lend = std::min(it->second, Rational(-coef_w));
          if (lend > 0) {
            coef_w += lend;
            it->second -= lend;
            if (it->second == 0) pool.erase(it);
            work.prov.monomials.emplace_back(Rational(1), MonomialSquare{lend, w});
          }
        }
      }
      // Merge with the banana already anchored at w: fully when the cross
      // stays negative, else treating the surplus as a deposit.
      if (auto it = bananas.find(w); it != bananas.end()) {
        const Rational theta =
            coef_w < 0 ? Rational(1) : std::min(Rational(coef_w / it->second.d), Rational(1));
        coef_w -= theta * it->second.d;
        absorb_banana(work, w, theta);
      }
      // Donating bananas holding positive mass at w absorb square fractions.
      if (coef_w < 0) {
        std::vector<Exponent> donor_keys;
        for (const auto& [key, b] : bananas)
          if (b.pos.count(w)) donor_keys.push_back(key);
        for (const Exponent& key : donor_keys) {
          if (coef_w == 0) break;
          BananaPolynomial& donor = bananas.at(key);
          const Rational need(-coef_w);
          const Rational avail = donor.pos.at(w);
          const Rational theta = std::min(Rational(1), Rational(avail / need));
          for (const auto& [q, m] : work.pos) add_mass(donor.pos, q, theta * m);
          add_mass(donor.pos, w, -theta * need);
          append_provenance(donor.provenance, work.prov, theta);
          const Rational keep = 1 - theta;
          for (auto& [q, m] : work.pos) m *= keep;
          coef_w *= keep;
          scale_provenance(work.prov, keep);
          if (keep == 0) break;
        }
      }
    } else {
      // Odd cross point: merge with the banana already there, if any.
      if (auto it = bananas.find(w); it != bananas.end()) {
        coef_w -= it->second.d;
        absorb_banana(work, w, Rational(1));
      }
    }

    if (coef_w < 0 || (coef_w != 0 && !w.is_even())) {
      BananaPolynomial banana;
      banana.nvars = nvars;
      banana.pos = std::move(work.pos);
      banana.beta = w;
      banana.d = -coef_w;
      banana.provenance = std::move(work.prov);
      bananas.emplace(w, std::move(banana));
    } else {
      // No negative term survived: everything positive drains to the pool.
      if (coef_w > 0) add_mass(work.pos, w, coef_w);
      for (const auto& [q, m] : work.pos) add_mass(pool, q, m);
    }
  }

  BananaMerge out;
  for (auto& [key, b] : bananas) out.bananas.push_back(std::move(b));
  for (const auto& [e, c] : pool) {
    if (c < 0) throw std::logic_error("merge: pool went negative at " + e.str());
    if (c > 0) out.remainder.push_back({c, e});
  }
  return out;
}

BananaCircuits banana_to_circuits(const BananaPolynomial& b, double tol) {
  const SparsePolynomial p = b.to_polynomial();
  if (b.d == 0) throw std::invalid_argument("banana_to_circuits: no negative term");

  REPInstance inst;
  try {
    inst = build_rep(p);
  } catch (const UncoveredTermError& ex) {
    throw DecompositionError(std::string("banana inner point is not covered: ") +
                             ex.what());
  }
  RepOptions opts;
  opts.tol = tol;
  const RepSolution sol = solve_rep(inst, opts);
  if (sol.status != RepStatus::Feasible)
    throw DecompositionError(
        "banana split infeasible despite a nonnegativity witness (slack " +
        std::to_string(sol.slack) + ") for " + p.to_text());
  SONCCertificate cert = extract_certificate(inst, sol, p);
  if (!cert.exact)
    throw DecompositionError("banana split could not be rationalized exactly for " +
                             p.to_text());
  return {std::move(cert.circuits), std::move(cert.verdicts),
          std::move(cert.monomial_squares)};
}

SONCCertificate same_support_transform(const std::vector<CircuitPolynomial>& circuits,
                                       double tol) {
  if (circuits.empty()) throw ZeroPolynomialError();
  const int n = circuits.front().nvars;
  if (n >= 4)
    throw DeskScaleLimitError("same_support_transform: desk-scale limit (nvars <= 3)");
  const int k = 2 * n + 1;
  int max_degree = 0;
  SparsePolynomial f(n);
  for (const CircuitPolynomial& c : circuits) {
    if (c.nvars != n)
      throw DimensionMismatchError("same_support_transform: nvars mismatch");
    if (is_nonnegative_circuit(c) == CircuitVerdict::No)
      throw DecompositionError("same_support_transform: input circuit is not nonnegative");
    for (const Exponent& v : c.trellis.vertices)
      max_degree = std::max(max_degree, v.degree());
    f += c.expand();
  }
  if (f.is_zero()) throw ZeroPolynomialError();
  if (k * max_degree > 60)
    throw DeskScaleLimitError(
        "same_support_transform: desk-scale limit (scaled degree > 60)");

  // Substitution and squares: sonc_to_sosb scales by the odd power k, so the
  // squares below decompose f(x^k).
  const SosbDecomposition sosb = sonc_to_sosb(circuits, k);
  BananaMerge merged = merge_squares_to_bananas(sosb.squares, sosb.monomials, n);

  SONCCertificate cert(n);
  for (const BananaPolynomial& banana : merged.bananas) {
    BananaCircuits split = banana_to_circuits(banana, tol);
    for (std::size_t i = 0; i < split.circuits.size(); ++i) {
      cert.circuits.push_back(split.circuits[i].unscaled(k));
      cert.verdicts.push_back(split.verdicts[i]);
    }
    for (const MonomialSquare& m : split.monomials)
      cert.monomial_squares.push_back({m.c, m.w.divided(k)});
  }
  for (const MonomialSquare& m : merged.remainder)
    cert.monomial_squares.push_back({m.c, m.w.divided(k)});
  std::sort(cert.monomial_squares.begin(), cert.monomial_squares.end(),
            [](const MonomialSquare& a, const MonomialSquare& b) { return a.w < b.w; });

  cert.residual = f - cert.expansion();
  cert.exact = cert.residual.is_zero();
  if (!cert.exact)
    throw DecompositionError("same_support_transform: certificate does not sum to f");

  // Support discipline: vertices in Lambda(f), inner points in Gamma(f).
  const SupportPartition part = support_partition(f);
  for (const CircuitPolynomial& c : cert.circuits) {
    if (!part.gamma_d.count(c.beta))
      throw std::logic_error("same_support_transform: inner point " + c.beta.str() +
                             " leaked outside Gamma(f)");
    for (const Exponent& v : c.trellis.vertices)
      if (!part.lambda.count(v))
        throw std::logic_error("same_support_transform: vertex " + v.str() +
                               " leaked outside Lambda(f)");
  }
  for (const MonomialSquare& m : cert.monomial_squares)
    if (!part.lambda.count(m.w))
      throw std::logic_error("same_support_transform: monomial " + m.w.str() +
                             " leaked outside Lambda(f)");
  return cert;
}

}  // namespace sonc
