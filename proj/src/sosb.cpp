// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/sosb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "sonc/errors.hpp"

namespace sonc {

BinomialSquare BinomialSquare::make(Rational asq, Rational ab, Exponent two_u,
                                    Exponent two_v) {
  if (asq <= 0) throw std::invalid_argument("binomial square: a^2 must be positive");
  if (two_u == two_v) throw std::invalid_argument("binomial square: u == v");
  if (!two_u.is_even() || !two_v.is_even())
    throw std::invalid_argument("binomial square: endpoints must be even");
  BinomialSquare s;
  s.bsq = ab * ab / asq;
  s.asq = std::move(asq);
  s.ab = std::move(ab);
  s.two_u = std::move(two_u);
  s.two_v = std::move(two_v);
  return s;
}

SparsePolynomial BinomialSquare::expand(int nvars) const {
  SparsePolynomial f(nvars);
  f.add_term(two_u, asq);
  f.add_term(two_v, bsq);
  f.add_term(cross(), Rational(-2 * ab));
  return f;
}

namespace {

std::string root_string(const Rational& square) {
  Rational r;
  if (exact_nth_root(square, 2, r)) return to_string(r);
  return "sqrt(" + to_string(square) + ")";
}

}  // namespace

std::string BinomialSquare::a_string() const { return root_string(asq); }

std::string BinomialSquare::b_string() const {
  if (ab < 0) return "-" + root_string(bsq);
  return root_string(bsq);
}

SparsePolynomial MonomialSquare::expand(int nvars) const {
  SparsePolynomial f(nvars);
  f.add_term(w, c);
  return f;
}

SparsePolynomial SosbDecomposition::expand(int nvars) const {
  SparsePolynomial f(nvars);
  for (const BinomialSquare& s : squares) f += s.expand(nvars);
  for (const MonomialSquare& m : monomials) f.add_term(m.w, m.c);
  return f;
}

namespace {

constexpr int kInf = 1 << 28;
using WitnessPair = std::pair<Exponent, Exponent>;

struct WitnessIndex {
  // midpoint -> (u < v) pairs of distinct even points, sorted by how close
  // the pair is to the trellis, then lexicographically
  std::map<Exponent, std::vector<WitnessPair>> pairs;
  std::map<Exponent, int> level;  // witness-chain distance to the trellis
};

WitnessIndex build_witness_index(const MediatedSet& m) {
  WitnessIndex idx;
  std::vector<Exponent> evens;
  for (const Exponent& p : m.points.points)
    if (p.is_even()) evens.push_back(p);
  for (std::size_t i = 0; i < evens.size(); ++i)
    for (std::size_t j = i + 1; j < evens.size(); ++j) {
      const Exponent mid = *Exponent::midpoint(evens[i], evens[j]);
      if (m.points.contains(mid)) idx.pairs[mid].emplace_back(evens[i], evens[j]);
    }

  for (const Exponent& p : m.points.points) idx.level[p] = kInf;
  for (const Exponent& a : m.trellis.vertices) idx.level[a] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Exponent& p : m.points.points) {
      if (idx.level[p] == 0) continue;
      auto it = idx.pairs.find(p);
      if (it == idx.pairs.end()) continue;
      for (const WitnessPair& w : it->second) {
        const int lvl_u = idx.level[w.first];
        const int lvl_v = idx.level[w.second];
        if (lvl_u >= kInf || lvl_v >= kInf) continue;
        const int lvl = 1 + std::max(lvl_u, lvl_v);
        if (lvl < idx.level[p]) {
          idx.level[p] = lvl;
          changed = true;
        }
      }
    }
  }
  for (auto& [mid, list] : idx.pairs) {
    std::stable_sort(list.begin(), list.end(),
                     [&idx](const WitnessPair& a, const WitnessPair& b) {
                       const int la = std::max(idx.level.at(a.first), idx.level.at(a.second));
                       const int lb = std::max(idx.level.at(b.first), idx.level.at(b.second));
                       if (la != lb) return la < lb;
                       return a < b;
                     });
  }
  return idx;
}

struct PlannedSquare {
  Exponent node;         // cross point of the square
  Exponent fixed_end;    // receives the freely chosen deposit a^2
  Exponent derived_end;  // receives ab^2 / a^2
};

struct Plan {
  std::vector<PlannedSquare> squares;
  std::vector<std::size_t> topo;  // evaluation order (derived-edge DAG)
  std::map<Exponent, std::size_t> node_index;
};

std::size_t chosen(const std::map<Exponent, std::size_t>& choice, const Exponent& node) {
  auto it = choice.find(node);
  return it == choice.end() ? 0 : it->second;
}

// Builds the one-square-per-node plan for the given witness selection.
// `order` records the node discovery order for the retry odometer.
std::optional<Plan> build_plan(const WitnessIndex& idx, const Exponent& beta,
                               const std::set<Exponent>& trellis_pts,
                               const std::map<Exponent, std::size_t>& choice,
                               std::vector<Exponent>& order) {
  Plan plan;
  order.clear();
  std::deque<Exponent> queue{beta};
  std::set<Exponent> seen{beta};
  while (!queue.empty()) {
    Exponent node = queue.front();
    queue.pop_front();
    auto it = idx.pairs.find(node);
    if (it == idx.pairs.end() || it->second.empty()) return std::nullopt;
    order.push_back(node);
    const std::size_t pick = chosen(choice, node);
    if (pick >= it->second.size()) return std::nullopt;
    const WitnessPair& w = it->second[pick];

    PlannedSquare sq;
    sq.node = node;
    // The derived deposit flows toward the better-grounded endpoint.
    const auto rank = [&idx](const Exponent& e) {
      return std::make_pair(idx.level.at(e), e);
    };
    if (rank(w.first) <= rank(w.second)) {
      sq.derived_end = w.first;
      sq.fixed_end = w.second;
    } else {
      sq.derived_end = w.second;
      sq.fixed_end = w.first;
    }
    plan.node_index[node] = plan.squares.size();
    plan.squares.push_back(sq);
    for (const Exponent& e : {sq.fixed_end, sq.derived_end}) {
      if (!trellis_pts.count(e) && !seen.count(e)) {
        seen.insert(e);
        queue.push_back(e);
      }
    }
  }

  // Topological order over derived-end edges; fixed deposits are constants
  // and impose no ordering. Flip orientations greedily if a cycle shows up.
  for (std::size_t attempt = 0; attempt <= plan.squares.size(); ++attempt) {
    std::vector<int> indeg(plan.squares.size(), 0);
    for (const PlannedSquare& sq : plan.squares) {
      auto t = plan.node_index.find(sq.derived_end);
      if (t != plan.node_index.end()) ++indeg[t->second];
    }
    std::set<std::pair<Exponent, std::size_t>> ready;
    for (std::size_t i = 0; i < plan.squares.size(); ++i)
      if (indeg[i] == 0) ready.insert({plan.squares[i].node, i});
    plan.topo.clear();
    while (!ready.empty()) {
      auto [node, i] = *ready.begin();
      ready.erase(ready.begin());
      plan.topo.push_back(i);
      auto t = plan.node_index.find(plan.squares[i].derived_end);
      if (t != plan.node_index.end() && --indeg[t->second] == 0)
        ready.insert({plan.squares[t->second].node, t->second});
    }
    if (plan.topo.size() == plan.squares.size()) return plan;
    bool flipped = false;
    for (std::size_t i = 0; i < plan.squares.size() && !flipped; ++i) {
      if (indeg[i] > 0 && plan.node_index.count(plan.squares[i].derived_end)) {
        std::swap(plan.squares[i].fixed_end, plan.squares[i].derived_end);
        flipped = true;
      }
    }
    if (!flipped) break;
  }
  return std::nullopt;
}


struct FloatState {
  bool converged = false;
  std::vector<double> alpha;
  std::vector<double> fixed_dep;    // per square, deposit at fixed_end
  std::vector<double> derived_dep;  // per square, deposit at derived_end
};

// Float relaxation over per-square ratios rho = a/b. The balanced choice
// rho = 1 makes every deposit m/2, so the demand cascade is a contraction
// even through witness cycles; budget caps then nudge the ratios within a
// bounded corridor, which keeps the iteration from self-amplifying.
FloatState relax_floats(const Plan& plan, const Exponent& beta, double d,
                        const std::set<Exponent>& trellis_pts,
                        const std::map<Exponent, double>& budget, int rounds) {
  FloatState st;
  const std::size_t count = plan.squares.size();
  st.alpha.assign(count, 1.0);
  st.fixed_dep.assign(count, 0.0);
  st.derived_dep.assign(count, 0.0);
  std::vector<double> rho(count, 1.0);
  std::vector<double> ab(count, 0.0);
  std::map<Exponent, double> vertex_dep;
  const int balanced_rounds = rounds / 2;
  for (int round = 0; round < rounds; ++round) {
    std::map<Exponent, double> demand;
    vertex_dep.clear();
    demand[beta] = d;
    for (std::size_t i = 0; i < count; ++i) {
      const Exponent& e = plan.squares[i].fixed_end;
      if (trellis_pts.count(e))
        vertex_dep[e] += st.alpha[i];
      else
        demand[e] += st.alpha[i];
    }
    double shift = 0.0;
    for (std::size_t i : plan.topo) {
      const PlannedSquare& sq = plan.squares[i];
      ab[i] = demand[sq.node] / 2.0;
      if (!std::isfinite(ab[i]) || std::fabs(ab[i]) > 1e14) return st;  // diverged
      const double next_alpha = std::fabs(ab[i]) * rho[i];
      shift = std::max(shift,
                       std::fabs(next_alpha - st.alpha[i]) / std::max(1.0, next_alpha));
      st.alpha[i] = next_alpha;
      const double derived = std::fabs(ab[i]) / std::max(rho[i], 1e-300);
      if (trellis_pts.count(sq.derived_end))
        vertex_dep[sq.derived_end] += derived;
      else
        demand[sq.derived_end] += derived;
    }
    if (round >= balanced_rounds) {
      // Ratio corrections toward the private budget shares, at most one
      // octave per round.
      for (std::size_t i = 0; i < count; ++i) {
        const PlannedSquare& sq = plan.squares[i];
        const double mag = std::fabs(ab[i]);
        if (mag == 0) continue;
        const bool fv = trellis_pts.count(sq.fixed_end) > 0;
        const bool dv = trellis_pts.count(sq.derived_end) > 0;
        double target = 1.0;
        if (fv && dv) {
          const double cap_u = budget.at(sq.fixed_end) *
                               st.alpha[i] / std::max(vertex_dep[sq.fixed_end], 1e-300);
          const double cap_v = budget.at(sq.derived_end) * (mag / rho[i]) /
                               std::max(vertex_dep[sq.derived_end], 1e-300);
          target = std::sqrt(std::max(cap_u, 1e-300) / std::max(cap_v, 1e-300));
        } else if (fv) {
          const double cap_u = budget.at(sq.fixed_end) *
                               st.alpha[i] / std::max(vertex_dep[sq.fixed_end], 1e-300);
          target = std::min(1.0, cap_u / mag);
        } else if (dv) {
          const double cap_v = budget.at(sq.derived_end) * (mag / rho[i]) /
                               std::max(vertex_dep[sq.derived_end], 1e-300);
          target = std::max(1.0, mag / std::max(cap_v, 1e-300));
        }
        target = std::min(std::max(target, rho[i] / 2.0), rho[i] * 2.0);
        target = std::min(std::max(target, 1e-6), 1e6);
        const double next = std::sqrt(rho[i] * target);  // damped, multiplicative
        shift = std::max(shift, std::fabs(next - rho[i]) / std::max(1.0, next));
        rho[i] = next;
      }
    }
    if (shift < 1e-13 && round > 4) {
      st.converged = true;
      break;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    st.fixed_dep[i] = st.alpha[i];
    st.derived_dep[i] = std::fabs(ab[i]) / std::max(rho[i], 1e-300);
  }
  return st;
}

bool too_big(const Rational& q) {
  return mpz_sizeinbase(numerator(q).backend().data(), 2) > 1 << 14 ||
         mpz_sizeinbase(denominator(q).backend().data(), 2) > 1 << 14;
}

// Private budget caps per (square, endpoint): vertex budgets split among
// their consumers proportionally to the converged float deposits. Caps sum
// exactly to the budget, so a single clamped exact pass cannot overdraw.
struct Caps {
  // key: square index * 2 + (0 fixed side, 1 derived side)
  std::map<std::size_t, Rational> cap;
};

Caps make_caps(const Plan& plan, const FloatState& fs,
               const std::set<Exponent>& trellis_pts,
               const std::map<Exponent, Rational>& budget) {
  Caps caps;
  std::map<Exponent, std::vector<std::pair<std::size_t, double>>> consumers;
  for (std::size_t i = 0; i < plan.squares.size(); ++i) {
    if (trellis_pts.count(plan.squares[i].fixed_end))
      consumers[plan.squares[i].fixed_end].push_back({2 * i, fs.fixed_dep[i]});
    if (trellis_pts.count(plan.squares[i].derived_end))
      consumers[plan.squares[i].derived_end].push_back({2 * i + 1, fs.derived_dep[i]});
  }
  for (const auto& [v, list] : consumers) {
    double total = 0;
    for (const auto& [key, dep] : list) total += std::max(dep, 0.0);
    Rational assigned(0);
    for (std::size_t j = 0; j < list.size(); ++j) {
      Rational share;
      if (j + 1 == list.size()) {
        share = 1 - assigned;  // remainder keeps the sum exact
      } else if (total > 0) {
        share = rational_near(std::max(list[j].second, 0.0) / total, Rational(1, 1 << 20));
        if (share < 0) share = 0;
        if (share + assigned > 1) share = 1 - assigned;
      } else {
        share = Rational(1, static_cast<long>(list.size()));
      }
      assigned += share;
      caps.cap[list[j].first] = budget.at(v) * share;
    }
  }
  return caps;
}

struct ExactEval {
  bool ok = false;
  std::string why;
  std::vector<Rational> alpha;  // clamped per square
  std::vector<Rational> ab;     // per square, signed
  std::map<Exponent, Rational> vertex_deposit;
};

// Single exact sweep in topological order. Every alpha is the float target
// snapped to a small rational and clamped into its private budget interval,
// so vertex budgets cannot be overdrawn and coefficient sizes stay bounded
// by the plan depth.
ExactEval evaluate_exact(const Plan& plan, const FloatState& fs, const Caps& caps,
                         const Exponent& beta, const Rational& d,
                         const std::set<Exponent>& trellis_pts) {
  ExactEval ev;
  ev.alpha.assign(plan.squares.size(), Rational(0));
  ev.ab.assign(plan.squares.size(), Rational(0));

  // The fixed-side deposits are inputs: snap them first, clamped from above
  // by their private caps, and credit them up front.
  std::map<Exponent, Rational> demand;
  demand[beta] = d;
  for (std::size_t i = 0; i < plan.squares.size(); ++i) {
    Rational a = rational_near(fs.alpha[i], Rational(1, 1 << 20) * std::max(1.0, fs.alpha[i]));
    if (a <= 0) a = Rational(1);
    if (auto it = caps.cap.find(2 * i); it != caps.cap.end() && a > it->second)
      a = it->second;
    if (a <= 0) {
      ev.why = "empty budget cap at " + plan.squares[i].node.str();
      return ev;
    }
    ev.alpha[i] = a;
    const Exponent& e = plan.squares[i].fixed_end;
    if (trellis_pts.count(e))
      ev.vertex_deposit[e] += a;
    else
      demand[e] += a;
  }
  for (std::size_t i : plan.topo) {
    const PlannedSquare& sq = plan.squares[i];
    const Rational m = demand[sq.node];
    if (m == 0) {
      ev.why = "degenerate zero demand at " + sq.node.str();
      return ev;
    }
    if (sq.node != beta && m < 0) {
      ev.why = "negative interior demand at " + sq.node.str();
      return ev;
    }
    if (too_big(m)) {
      ev.why = "coefficient blowup at " + sq.node.str();
      return ev;
    }
    ev.ab[i] = m / 2;
    // The derived deposit is forced as ab^2/alpha; if it busts its cap, raise
    // alpha to the exact boundary (rechecking the fixed-side cap).
    if (auto it = caps.cap.find(2 * i + 1); it != caps.cap.end()) {
      const Rational abab = ev.ab[i] * ev.ab[i];
      if (it->second <= 0) {
        ev.why = "empty derived cap at " + sq.node.str();
        return ev;
      }
      if (abab > ev.alpha[i] * it->second) {
        const Rational lo = abab / it->second;
        auto hi = caps.cap.find(2 * i);
        if (hi != caps.cap.end() && lo > hi->second) {
          ev.why = "infeasible budget split at " + sq.node.str();
          return ev;
        }
        if (trellis_pts.count(sq.fixed_end)) {
          ev.vertex_deposit[sq.fixed_end] += lo - ev.alpha[i];
        } else {
          // Raising a fixed deposit into an interior node after it was
          // processed would corrupt its demand; fail toward a replan.
          ev.why = "late cap adjustment at " + sq.node.str();
          return ev;
        }
        ev.alpha[i] = lo;
      }
    }
    const Rational derived = ev.ab[i] * ev.ab[i] / ev.alpha[i];
    if (trellis_pts.count(sq.derived_end))
      ev.vertex_deposit[sq.derived_end] += derived;
    else
      demand[sq.derived_end] += derived;
  }
  ev.ok = true;
  return ev;
}

SosbDecomposition monomials_only(const CircuitPolynomial& c) {
  SosbDecomposition out;
  for (std::size_t i = 0; i < c.trellis.vertices.size(); ++i)
    out.monomials.push_back({c.coeffs[i], c.trellis.vertices[i]});
  if (c.d < 0) out.monomials.push_back({Rational(-c.d), c.beta});
  std::sort(out.monomials.begin(), out.monomials.end(),
            [](const MonomialSquare& a, const MonomialSquare& b) { return a.w < b.w; });
  return out;
}

}  // namespace

MediationTree mediation_tree(const MediatedSet& m, const Exponent& beta) {
  if (!m.points.contains(beta))
    throw std::invalid_argument("mediation_tree: beta " + beta.str() +
                                " is not in the mediated set");
  MediationTree tree;
  tree.root = beta;
  const std::set<Exponent> trellis_pts(m.trellis.vertices.begin(),
                                       m.trellis.vertices.end());
  if (trellis_pts.count(beta)) return tree;  // nothing to witness
  const WitnessIndex idx = build_witness_index(m);
  std::deque<Exponent> queue{beta};
  while (!queue.empty()) {
    Exponent node = queue.front();
    queue.pop_front();
    if (tree.parents.count(node)) continue;
    const int own = idx.level.at(node);
    if (own >= kInf)
      throw DecompositionError("mediation_tree: no acyclic witness chain for " +
                               node.str());
    // Lexicographically smallest pair strictly closer to the trellis.
    const WitnessPair* best = nullptr;
    for (const WitnessPair& w : idx.pairs.at(node)) {
      if (std::max(idx.level.at(w.first), idx.level.at(w.second)) >= own) continue;
      if (best == nullptr || w < *best) best = &w;
    }
    if (best == nullptr)
      throw DecompositionError("mediation_tree: no descending witness for " + node.str());
    tree.parents[node] = *best;
    for (const Exponent& e : {best->first, best->second})
      if (!trellis_pts.count(e) && !tree.parents.count(e)) queue.push_back(e);
  }
  return tree;
}

SosbDecomposition circuit_to_sosb(const CircuitPolynomial& c, const MediatedSet& m) {
  if (is_nonnegative_circuit(c) == CircuitVerdict::No)
    throw DecompositionError("circuit_to_sosb: circuit is not nonnegative");
  if (!(m.trellis == c.trellis))
    throw std::invalid_argument("circuit_to_sosb: mediated set is for a different trellis");
  if (c.d == 0 || (c.beta.is_even() && c.d < 0)) return monomials_only(c);
  if (!m.points.contains(c.beta))
    throw NoMediatedWitnessError("no mediated witness for " + c.beta.str() +
                                 "; scaling the trellis by k >= nvars provides one");

  const std::set<Exponent> trellis_pts(m.trellis.vertices.begin(),
                                       m.trellis.vertices.end());
  std::map<Exponent, Rational> budget;
  std::map<Exponent, double> budget_f;
  for (std::size_t i = 0; i < c.trellis.vertices.size(); ++i) {
    budget[c.trellis.vertices[i]] = c.coeffs[i];
    budget_f[c.trellis.vertices[i]] = to_double(c.coeffs[i]);
  }
  const WitnessIndex idx = build_witness_index(m);

  std::map<Exponent, std::size_t> choice;
  std::string last_failure = "no witness plan";
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Exponent> order;
    auto plan = build_plan(idx, c.beta, trellis_pts, choice, order);
    if (plan) {
      const FloatState fs =
          relax_floats(*plan, c.beta, to_double(c.d), trellis_pts, budget_f, 400);
      const Caps caps = make_caps(*plan, fs, trellis_pts, budget);
      ExactEval ev = evaluate_exact(*plan, fs, caps, c.beta, c.d, trellis_pts);

      bool over = !ev.ok;
      if (ev.ok) {
        for (const auto& [v, dep] : ev.vertex_deposit)
          if (dep > budget.at(v)) over = true;
      }
      if (!over) {
        SosbDecomposition out;
        for (std::size_t i = 0; i < plan->squares.size(); ++i) {
          const PlannedSquare& sq = plan->squares[i];
          out.squares.push_back(
              BinomialSquare::make(ev.alpha[i], ev.ab[i], sq.fixed_end, sq.derived_end));
        }
        for (const auto& [v, b] : budget) {
          Rational left = b;
          auto it = ev.vertex_deposit.find(v);
          if (it != ev.vertex_deposit.end()) left -= it->second;
          if (left > 0) out.monomials.push_back({left, v});
        }
        if (!(out.expand(c.nvars) == c.expand()))
          throw DecompositionError("circuit_to_sosb: exactness check failed");
        return out;
      }
      last_failure = ev.why.empty() ? "vertex budget exceeded" : ev.why;
    } else {
      last_failure = "no acyclic witness plan";
    }

    // Odometer over witness selections, in node discovery order.
    bool advanced = false;
    for (std::size_t i = order.size(); i-- > 0 && !advanced;) {
      const Exponent& node = order[i];
      for (std::size_t j = i + 1; j < order.size(); ++j) choice.erase(order[j]);
      const std::size_t count =
          idx.pairs.count(node) ? idx.pairs.at(node).size() : 0;
      const std::size_t cur = chosen(choice, node);
      if (cur + 1 < count) {
        choice[node] = cur + 1;
        advanced = true;
      } else {
        choice.erase(node);
      }
    }
    if (!advanced) break;
  }
  throw DecompositionError("circuit_to_sosb: could not realize a decomposition (" +
                           last_failure + ")");
}

SosbDecomposition sonc_to_sosb(const std::vector<CircuitPolynomial>& circuits, int k) {
  if (circuits.empty()) return {};
  const int n = circuits.front().nvars;
  if (k < std::max(n, 1))
    throw std::invalid_argument("sonc_to_sosb: k must be at least nvars");
  SosbDecomposition out;
  for (const CircuitPolynomial& c : circuits) {
    if (c.nvars != n) throw DimensionMismatchError("sonc_to_sosb: nvars mismatch");
    if (is_nonnegative_circuit(c) == CircuitVerdict::No)
      throw DecompositionError("sonc_to_sosb: input circuit is not nonnegative");
    const CircuitPolynomial scaled = c.scaled(k);
    const MediatedSet m = maximal_mediated_set(scaled.trellis);
    if (!m.points.contains(scaled.beta))
      throw std::logic_error(
          "sonc_to_sosb: scaled inner point escaped the maximal mediated set");
    SosbDecomposition part = circuit_to_sosb(scaled, m);
    std::move(part.squares.begin(), part.squares.end(), std::back_inserter(out.squares));
    std::move(part.monomials.begin(), part.monomials.end(),
              std::back_inserter(out.monomials));
  }
  return out;
}

}  // namespace sonc
