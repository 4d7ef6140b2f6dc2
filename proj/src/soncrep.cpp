// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/soncrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "sonc/errors.hpp"

namespace sonc {

const char* to_string(RepStatus s) {
  switch (s) {
    case RepStatus::Feasible: return "FEASIBLE";
    case RepStatus::Infeasible: return "INFEASIBLE";
    case RepStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

REPInstance build_rep(const SparsePolynomial& f) {
  const SupportPartition part = support_partition(f);
  if (part.gamma_d.empty()) throw TriviallyNonnegativeError();

  REPInstance inst;
  inst.nvars = f.nvars();
  for (const auto& [e, c] : part.lambda) {
    inst.lambda_points.push_back(e);
    inst.c.push_back(c);
  }
  for (const auto& [beta, d] : part.gamma_d) {
    RepGroup group;
    group.beta = beta;
    if (beta.is_even()) {
      // Even Gamma point: the coefficient is negative, so d > 0.
      group.dtilde = d;
      group.sign = 1;
    } else {
      group.dtilde = d < 0 ? Rational(-d) : d;
      group.sign = d < 0 ? -1 : 1;
    }
    const CoverSet cover = enumerate_covers(inst.lambda_points, beta);
    if (cover.simplices.empty()) throw UncoveredTermError(beta);
    for (const auto& [simplex, bary] : cover.simplices) {
      RepSlot slot;
      slot.simplex = simplex;
      slot.lambdas = bary.weights;
      for (const Exponent& v : simplex.vertices) {
        const auto it =
            std::lower_bound(inst.lambda_points.begin(), inst.lambda_points.end(), v);
        slot.members.push_back(
            static_cast<std::size_t>(it - inst.lambda_points.begin()));
      }
      group.slots.push_back(std::move(slot));
    }
    inst.groups.push_back(std::move(group));
  }
  return inst;
}

namespace {

struct Coord {
  std::size_t g, k, m;     // group, slot, member position
  std::size_t point;       // index into lambda_points
  double lambda;           // barycentric weight of the member
  double log_lambda;
};

struct Layout {
  std::vector<Coord> coords;
  std::vector<std::vector<std::vector<std::size_t>>> of;  // [g][k][m] -> coord
  std::vector<std::vector<std::size_t>> of_point;          // point -> coords
  std::vector<std::size_t> constrained_points;             // points in some slot
};

Layout make_layout(const REPInstance& inst) {
  Layout lay;
  lay.of.resize(inst.groups.size());
  lay.of_point.resize(inst.lambda_points.size());
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    lay.of[g].resize(inst.groups[g].slots.size());
    for (std::size_t k = 0; k < inst.groups[g].slots.size(); ++k) {
      const RepSlot& slot = inst.groups[g].slots[k];
      for (std::size_t m = 0; m < slot.members.size(); ++m) {
        Coord c;
        c.g = g;
        c.k = k;
        c.m = m;
        c.point = slot.members[m];
        c.lambda = to_double(slot.lambdas[m]);
        c.log_lambda = std::log(c.lambda);
        lay.of[g][k].push_back(lay.coords.size());
        lay.of_point[c.point].push_back(lay.coords.size());
        lay.coords.push_back(c);
      }
    }
  }
  for (std::size_t i = 0; i < inst.lambda_points.size(); ++i)
    if (!lay.of_point[i].empty()) lay.constrained_points.push_back(i);
  return lay;
}

double log_sum_exp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Slack of group g at log-allocations x: log(sum_k Theta_gk) - log dtilde.
double group_slack(const REPInstance& inst, const Layout& lay,
                   const std::vector<double>& x, std::size_t g,
                   std::vector<double>* theta_out = nullptr) {
  const RepGroup& group = inst.groups[g];
  std::vector<double> theta(group.slots.size(), 0.0);
  for (std::size_t k = 0; k < group.slots.size(); ++k)
    for (std::size_t idx : lay.of[g][k]) {
      const Coord& c = lay.coords[idx];
      theta[k] += c.lambda * (x[idx] - c.log_lambda);
    }
  if (theta_out) *theta_out = theta;
  return log_sum_exp(theta) - std::log(to_double(inst.groups[g].dtilde));
}

// Dense symmetric solve (partial pivoting); small systems only.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  return true;
}

struct BarrierEval {
  bool domain_ok = false;
  double value = -std::numeric_limits<double>::infinity();
};

// z = (x_0..x_{N-1}, t). Barrier objective to maximize:
//   t + mu * sum_g log(s_g - t) + mu * sum_i log(c_i - E_i)
BarrierEval eval_barrier(const REPInstance& inst, const Layout& lay,
                         const std::vector<double>& z, double mu) {
  BarrierEval ev;
  const std::size_t n = lay.coords.size();
  const double t = z[n];
  double value = t;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    std::vector<double> x(z.begin(), z.begin() + static_cast<long>(n));
    const double u = group_slack(inst, lay, x, g) - t;
    if (u <= 0) return ev;
    value += mu * std::log(u);
  }
  for (std::size_t i : lay.constrained_points) {
    double e = 0;
    for (std::size_t idx : lay.of_point[i]) e += std::exp(z[idx]);
    const double v = to_double(inst.c[i]) - e;
    if (v <= 0) return ev;
    value += mu * std::log(v);
  }
  ev.domain_ok = true;
  ev.value = value;
  return ev;
}

// Exact upgrade of a near-feasible numeric solution: snap Lambda budget
// shares and slot weights to rationals, then re-check every live slot with
// the exact circuit-number test.
bool rationalize_assignment(const REPInstance& inst,
                            const std::vector<std::vector<std::vector<double>>>& c_num,
                            const std::vector<std::vector<double>>& d_num,
                            double snap_tol,
                            std::vector<std::vector<std::vector<Rational>>>& c_out,
                            std::vector<std::vector<Rational>>& d_out) {
  const Rational tol = rational_near(snap_tol, Rational(1, 1000000000000L));
  c_out.assign(inst.groups.size(), {});
  d_out.assign(inst.groups.size(), {});

  // Slot weights per group, normalized to sum exactly 1.
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const RepGroup& group = inst.groups[g];
    const double dt = to_double(group.dtilde);
    std::vector<Rational> w(group.slots.size(), Rational(0));
    Rational total(0);
    for (std::size_t k = 0; k < group.slots.size(); ++k) {
      double share = d_num[g][k] / dt;
      if (share < 1e-12) share = 0;  // prune epsilon slots before rounding
      Rational s = rational_near(share, tol);
      if (s < 0) s = 0;
      if (s > 1) s = 1;
      w[k] = s;
      total += s;
    }
    if (total == 0) return false;
    d_out[g].resize(group.slots.size());
    for (std::size_t k = 0; k < group.slots.size(); ++k)
      d_out[g][k] = group.dtilde * w[k] / total;
  }

  // Budget shares per Lambda point, scaled down when the snaps oversubscribe.
  std::vector<Rational> used(inst.c.size(), Rational(0));
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const RepGroup& group = inst.groups[g];
    c_out[g].resize(group.slots.size());
    for (std::size_t k = 0; k < group.slots.size(); ++k)
      c_out[g][k].assign(group.slots[k].members.size(), Rational(0));
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> users(inst.c.size());
  for (std::size_t g = 0; g < inst.groups.size(); ++g)
    for (std::size_t k = 0; k < inst.groups[g].slots.size(); ++k)
      for (std::size_t m = 0; m < inst.groups[g].slots[k].members.size(); ++m)
        users[inst.groups[g].slots[k].members[m]].push_back({g, k});

  for (std::size_t i = 0; i < inst.c.size(); ++i) {
    const double ci = to_double(inst.c[i]);
    Rational total(0);
    std::vector<Rational> shares;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t g = 0; g < inst.groups.size(); ++g)
      for (std::size_t k = 0; k < inst.groups[g].slots.size(); ++k) {
        const RepSlot& slot = inst.groups[g].slots[k];
        for (std::size_t m = 0; m < slot.members.size(); ++m) {
          if (slot.members[m] != i) continue;
          if (d_out[g][k] == 0) continue;  // dead slot keeps no budget
          Rational s = rational_near(c_num[g][k][m] / ci, tol);
          if (s < 0) s = 0;
          if (s > 1) s = 1;
          shares.push_back(s);
          slots.push_back({g, k});
          total += s;
        }
      }
    const Rational scale = total > 1 ? Rational(1) / total : Rational(1);
    for (std::size_t u = 0; u < shares.size(); ++u) {
      const auto [g, k] = slots[u];
      const RepSlot& slot = inst.groups[g].slots[k];
      for (std::size_t m = 0; m < slot.members.size(); ++m)
        if (slot.members[m] == i) c_out[g][k][m] = inst.c[i] * shares[u] * scale;
    }
  }

  // Exact feasibility of every live slot.
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const RepGroup& group = inst.groups[g];
    for (std::size_t k = 0; k < group.slots.size(); ++k) {
      if (d_out[g][k] == 0) continue;
      try {
        CircuitPolynomial circ = CircuitPolynomial::make(
            group.slots[k].simplex, c_out[g][k], group.beta, d_out[g][k]);
        if (is_nonnegative_circuit(circ) == CircuitVerdict::No) return false;
      } catch (const std::invalid_argument&) {
        return false;  // a zero coefficient snapped into a live slot
      }
    }
  }
  return true;
}

}  // namespace

RepSolution solve_rep(const REPInstance& inst, const RepOptions& opts) {
  if (opts.tol <= 0) throw std::invalid_argument("solve_rep: tol must be positive");
  const Layout lay = make_layout(inst);
  const std::size_t n = lay.coords.size();

  RepSolution sol;
  sol.tol = opts.tol;

  // Deterministic start: share every budget equally among its slots, halved
  // so the barrier starts strictly inside.
  std::vector<double> z(n + 1, 0.0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Coord& c = lay.coords[idx];
    const double ci = to_double(inst.c[c.point]);
    const double slots = static_cast<double>(lay.of_point[c.point].size());
    z[idx] = std::log(ci / slots / 2.0);
  }
  {
    double mn = std::numeric_limits<double>::infinity();
    std::vector<double> x(z.begin(), z.begin() + static_cast<long>(n));
    for (std::size_t g = 0; g < inst.groups.size(); ++g)
      mn = std::min(mn, group_slack(inst, lay, x, g));
    z[n] = mn - 1.0;
  }

  long iterations = 0;
  for (double mu = 1.0; mu > 1e-13 && iterations < opts.max_iterations; mu *= 0.2) {
    for (int newton = 0; newton < 60 && iterations < opts.max_iterations; ++newton) {
      ++iterations;
      // Assemble gradient and Hessian of the barrier at z.
      std::vector<double> grad(n + 1, 0.0);
      std::vector<std::vector<double>> hess(n + 1, std::vector<double>(n + 1, 0.0));
      grad[n] += 1.0;
      const std::vector<double> x(z.begin(), z.begin() + static_cast<long>(n));
      bool domain_ok = true;

      for (std::size_t g = 0; g < inst.groups.size() && domain_ok; ++g) {
        std::vector<double> theta;
        const double s = group_slack(inst, lay, x, g, &theta);
        const double u = s - z[n];
        if (u <= 0) {
          domain_ok = false;
          break;
        }
        // softmax weights over the group's slots
        const double lse = log_sum_exp(theta);
        std::vector<double> w(theta.size());
        for (std::size_t k = 0; k < theta.size(); ++k) w[k] = std::exp(theta[k] - lse);
        // grad s over this group's coords
        std::vector<std::pair<std::size_t, double>> gs;
        for (std::size_t k = 0; k < theta.size(); ++k)
          for (std::size_t idx : lay.of[g][k])
            gs.push_back({idx, w[k] * lay.coords[idx].lambda});
        for (const auto& [idx, v] : gs) grad[idx] += mu * v / u;
        grad[n] += -mu / u;
        // Hessian of s: sum_k w_k a_k a_k^T - (sum w a)(sum w a)^T
        for (std::size_t k = 0; k < theta.size(); ++k)
          for (std::size_t p : lay.of[g][k])
            for (std::size_t q : lay.of[g][k])
              hess[p][q] += mu / u * w[k] * lay.coords[p].lambda * lay.coords[q].lambda;
        for (const auto& [p, vp] : gs)
          for (const auto& [q, vq] : gs) hess[p][q] += -mu / u * vp * vq;
        // rank-one barrier curvature with the t coordinate
        for (const auto& [p, vp] : gs) {
          for (const auto& [q, vq] : gs) hess[p][q] += -mu / (u * u) * vp * vq;
          hess[p][n] += mu / (u * u) * vp;
          hess[n][p] += mu / (u * u) * vp;
        }
        hess[n][n] += -mu / (u * u);
      }

      for (std::size_t i : lay.constrained_points) {
        if (!domain_ok) break;
        double e = 0;
        for (std::size_t idx : lay.of_point[i]) e += std::exp(z[idx]);
        const double v = to_double(inst.c[i]) - e;
        if (v <= 0) {
          domain_ok = false;
          break;
        }
        for (std::size_t p : lay.of_point[i]) {
          const double ep = std::exp(z[p]);
          grad[p] += -mu * ep / v;
          hess[p][p] += -mu * ep / v;
          for (std::size_t q : lay.of_point[i]) {
            const double eq = std::exp(z[q]);
            hess[p][q] += -mu * ep * eq / (v * v);
          }
        }
      }
      if (!domain_ok)
        throw std::runtime_error("solve_rep: barrier iterate left the domain");

      std::vector<std::vector<double>> neg_h(n + 1, std::vector<double>(n + 1, 0.0));
      for (std::size_t p = 0; p <= n; ++p)
        for (std::size_t q = 0; q <= n; ++q) neg_h[p][q] = -hess[p][q];
      for (std::size_t p = 0; p <= n; ++p) neg_h[p][p] += 1e-12;  // regularize

      std::vector<double> step;
      if (!solve_dense(neg_h, grad, step)) {
        step = grad;  // gradient fallback
      }
      double decrement = 0;
      for (std::size_t p = 0; p <= n; ++p) decrement += grad[p] * step[p];
      if (decrement < 0) step = grad;

      const BarrierEval base = eval_barrier(inst, lay, z, mu);
      double stepsize = 1.0;
      std::vector<double> trial(z);
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::size_t p = 0; p <= n; ++p) trial[p] = z[p] + stepsize * step[p];
        const BarrierEval ev = eval_barrier(inst, lay, trial, mu);
        if (ev.domain_ok && ev.value > base.value + 1e-16) {
          z = trial;
          moved = true;
          break;
        }
        stepsize *= 0.5;
      }
      if (!moved || decrement < 1e-14) break;
    }
  }
  sol.iterations = iterations;

  // Optional equality mode: push every allocation up so each constrained
  // Lambda budget is consumed exactly. That only raises circuit numbers.
  if (opts.force_equality) {
    for (std::size_t i : lay.constrained_points) {
      double e = 0;
      for (std::size_t idx : lay.of_point[i]) e += std::exp(z[idx]);
      const double f = to_double(inst.c[i]) / e;
      for (std::size_t idx : lay.of_point[i]) z[idx] += std::log(f);
    }
  }

  // Read out the allocation, final slack, and proportional d split.
  const std::vector<double> x(z.begin(), z.begin() + static_cast<long>(n));
  sol.c_num.resize(inst.groups.size());
  sol.d_num.resize(inst.groups.size());
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    std::vector<double> theta;
    const double s = group_slack(inst, lay, x, g, &theta);
    slack = std::min(slack, s);
    const double lse = log_sum_exp(theta);
    const double dt = to_double(inst.groups[g].dtilde);
    sol.c_num[g].resize(inst.groups[g].slots.size());
    sol.d_num[g].resize(inst.groups[g].slots.size());
    for (std::size_t k = 0; k < inst.groups[g].slots.size(); ++k) {
      sol.d_num[g][k] = dt * std::exp(theta[k] - lse);
      sol.c_num[g][k].resize(lay.of[g][k].size());
      for (std::size_t m = 0; m < lay.of[g][k].size(); ++m)
        sol.c_num[g][k][m] = std::exp(x[lay.of[g][k][m]]);
    }
  }
  sol.slack = slack;

  if (slack >= 0)
    sol.status = RepStatus::Feasible;
  else if (slack < -opts.tol)
    sol.status = RepStatus::Infeasible;
  else
    sol.status = RepStatus::Inconclusive;

  // Exact upgrade: decides boundary instances and certifies near-feasible
  // numerics. Coarse snaps first so simple shares (1, 1/2, ...) are found.
  if (slack >= -opts.tol) {
    for (double snap : {1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) {
      if (rationalize_assignment(inst, sol.c_num, sol.d_num, snap, sol.c_exact,
                                 sol.d_exact)) {
        sol.has_exact = true;
        sol.status = RepStatus::Feasible;
        if (sol.slack < 0) sol.slack = 0.0;
        break;
      }
    }
  }
  return sol;
}

SparsePolynomial SONCCertificate::expansion() const {
  SparsePolynomial sum(nvars);
  for (const CircuitPolynomial& c : circuits) sum += c.expand();
  for (const MonomialSquare& m : monomial_squares) sum.add_term(m.w, m.c);
  return sum;
}

SONCCertificate extract_certificate(const REPInstance& inst, const RepSolution& sol,
                                    const SparsePolynomial& f) {
  if (sol.status != RepStatus::Feasible)
    throw std::logic_error("extract_certificate: solution is not feasible");

  std::vector<std::vector<std::vector<Rational>>> c_exact = sol.c_exact;
  std::vector<std::vector<Rational>> d_exact = sol.d_exact;
  if (!sol.has_exact) {
    // Last-resort blind rationalization; circuits are still re-checked and
    // the certificate is marked inexact when any of them fails.
    std::vector<std::vector<std::vector<Rational>>> c_try;
    std::vector<std::vector<Rational>> d_try;
    rationalize_assignment(inst, sol.c_num, sol.d_num, 1e-12, c_try, d_try);
    c_exact = c_try;
    d_exact = d_try;
  }

  SONCCertificate cert(f.nvars());
  std::vector<Rational> used(inst.c.size(), Rational(0));
  bool all_pass = true;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const RepGroup& group = inst.groups[g];
    for (std::size_t k = 0; k < group.slots.size(); ++k) {
      if (g >= d_exact.size() || k >= d_exact[g].size()) continue;
      const Rational& d = d_exact[g][k];
      if (d == 0) continue;
      const RepSlot& slot = group.slots[k];
      for (std::size_t m = 0; m < slot.members.size(); ++m)
        used[slot.members[m]] += c_exact[g][k][m];
      CircuitPolynomial circ = CircuitPolynomial::make(
          slot.simplex, c_exact[g][k], group.beta,
          group.sign > 0 ? d : Rational(-d));
      const CircuitVerdict verdict = is_nonnegative_circuit(circ);
      if (verdict == CircuitVerdict::No) all_pass = false;
      cert.circuits.push_back(std::move(circ));
      cert.verdicts.push_back(verdict);
    }
  }
  for (std::size_t i = 0; i < inst.c.size(); ++i) {
    const Rational left = inst.c[i] - used[i];
    if (left < 0) {
      all_pass = false;
      continue;
    }
    if (left > 0) cert.monomial_squares.push_back({left, inst.lambda_points[i]});
  }
  cert.residual = f - cert.expansion();
  cert.exact = all_pass && cert.residual.is_zero();
  return cert;
}

DecideResult decide_sonc(const SparsePolynomial& f, double tol) {
  if (f.is_zero()) throw ZeroPolynomialError();
  DecideResult result;

  const NecessaryCheck nec = necessary_conditions(f);
  if (!nec.pass) {
    result.kind = DecideResult::Kind::NotSonc;
    result.reason = "necessary conditions violated: " + nec.reason;
    return result;
  }

  REPInstance inst;
  try {
    inst = build_rep(f);
  } catch (const TriviallyNonnegativeError&) {
    SONCCertificate cert(f.nvars());
    for (const auto& [e, c] : f.terms()) cert.monomial_squares.push_back({c, e});
    cert.exact = true;
    result.kind = DecideResult::Kind::Sonc;
    result.reason = "sum of monomial squares";
    result.slack = std::numeric_limits<double>::infinity();
    result.certificate = std::move(cert);
    return result;
  } catch (const UncoveredTermError& ex) {
    result.kind = DecideResult::Kind::NotSonc;
    result.reason = std::string("uncovered negative term: ") + ex.what();
    return result;
  }

  RepOptions opts;
  opts.tol = tol;
  const RepSolution sol = solve_rep(inst, opts);
  result.slack = sol.slack;
  switch (sol.status) {
    case RepStatus::Feasible: {
      result.kind = DecideResult::Kind::Sonc;
      result.certificate = extract_certificate(inst, sol, f);
      result.reason = "REP feasible";
      break;
    }
    case RepStatus::Infeasible:
      result.kind = DecideResult::Kind::NotSonc;
      result.reason = "REP infeasible";
      break;
    case RepStatus::Inconclusive:
      result.kind = DecideResult::Kind::Inconclusive;
      result.reason = "REP slack within tolerance of zero";
      break;
  }
  return result;
}

bool verify_certificate(const SONCCertificate& cert, const SparsePolynomial& f,
                        SparsePolynomial* residual_out) {
  SparsePolynomial residual = f - cert.expansion();
  bool ok = residual.is_zero();
  for (const CircuitPolynomial& c : cert.circuits)
    if (is_nonnegative_circuit(c) == CircuitVerdict::No) ok = false;
  for (const MonomialSquare& m : cert.monomial_squares)
    if (m.c <= 0 || !m.w.is_even()) ok = false;
  if (residual_out) *residual_out = std::move(residual);
  return ok;
}

namespace {

nlohmann::ordered_json circuit_json(const CircuitPolynomial& c, CircuitVerdict verdict) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Exponent& v : c.trellis.vertices) j["vertices"].push_back(v.entries());
  j["coeffs"] = nlohmann::ordered_json::array();
  for (const Rational& q : c.coeffs) j["coeffs"].push_back(to_string(q));
  j["beta"] = c.beta.entries();
  j["d"] = to_string(c.d);
  j["theta_check"] = verdict == CircuitVerdict::No ? "exact_fail" : "exact_pass";
  j["verdict"] = to_string(verdict);
  return j;
}

nlohmann::ordered_json certificate_json(const SONCCertificate& cert) {
  nlohmann::ordered_json j;
  j["circuits"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cert.circuits.size(); ++i)
    j["circuits"].push_back(circuit_json(cert.circuits[i], cert.verdicts[i]));
  j["monomial_squares"] = nlohmann::ordered_json::array();
  for (const MonomialSquare& m : cert.monomial_squares) {
    nlohmann::ordered_json e;
    e["coef"] = to_string(m.c);
    e["exp"] = m.w.entries();
    j["monomial_squares"].push_back(e);
  }
  j["exact"] = cert.exact;
  double norm = 0;
  for (const auto& [e, c] : cert.residual.terms()) norm += std::fabs(to_double(c));
  j["residual_norm"] = norm;
  return j;
}

}  // namespace

std::string decide_report_json(const DecideResult& result) {
  nlohmann::ordered_json j;
  switch (result.kind) {
    case DecideResult::Kind::Sonc: j["status"] = "SONC"; break;
    case DecideResult::Kind::NotSonc: j["status"] = "NOT_SONC"; break;
    case DecideResult::Kind::Inconclusive: j["status"] = "INCONCLUSIVE"; break;
  }
  j["slack"] = std::isfinite(result.slack) ? result.slack : 0.0;
  j["reason"] = result.reason;
  if (result.certificate) {
    const nlohmann::ordered_json cj = certificate_json(*result.certificate);
    for (auto it = cj.begin(); it != cj.end(); ++it) j[it.key()] = it.value();
  } else {
    j["circuits"] = nlohmann::ordered_json::array();
    j["monomial_squares"] = nlohmann::ordered_json::array();
    j["exact"] = false;
    j["residual_norm"] = 0.0;
  }
  return j.dump();
}

std::string circuit_to_json(const CircuitPolynomial& c, CircuitVerdict verdict) {
  return circuit_json(c, verdict).dump();
}

namespace {

CircuitPolynomial circuit_from_json(const nlohmann::json& j) {
  std::vector<Exponent> verts;
  for (const auto& v : j.at("vertices")) verts.emplace_back(v.get<std::vector<int>>());
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
  // Coefficients follow the given vertex order; realign after sorting.
  std::vector<std::size_t> perm(verts.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&verts](std::size_t a, std::size_t b) { return verts[a] < verts[b]; });
  std::vector<Exponent> sorted_verts;
  std::vector<Rational> sorted_coeffs;
  for (std::size_t i : perm) {
    sorted_verts.push_back(verts[i]);
    sorted_coeffs.push_back(coeffs[i]);
  }
  return CircuitPolynomial::make(Simplex::make(sorted_verts), sorted_coeffs,
                                 Exponent(j.at("beta").get<std::vector<int>>()),
                                 parse_rational(j.at("d").get<std::string>()));
}

}  // namespace

SONCCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int nvars = 0;
  if (j.contains("circuits") && !j["circuits"].empty())
    nvars = static_cast<int>(j["circuits"][0]["beta"].size());
  else if (j.contains("monomial_squares") && !j["monomial_squares"].empty())
    nvars = static_cast<int>(j["monomial_squares"][0]["exp"].size());
  if (nvars == 0) throw ParseError("certificate JSON carries no terms", 0);
  SONCCertificate cert(nvars);
  for (const auto& cj : j.at("circuits")) {
    cert.circuits.push_back(circuit_from_json(cj));
    cert.verdicts.push_back(is_nonnegative_circuit(cert.circuits.back()));
  }
  if (j.contains("monomial_squares"))
    for (const auto& mj : j["monomial_squares"])
      cert.monomial_squares.push_back(
          {parse_rational(mj.at("coef").get<std::string>()),
           Exponent(mj.at("exp").get<std::vector<int>>())});
  cert.exact = j.value("exact", false);
  return cert;
}

std::vector<CircuitPolynomial> circuit_list_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const nlohmann::json& arr = j.is_array() ? j : j.at("circuits");
  std::vector<CircuitPolynomial> circuits;
  for (const auto& cj : arr) circuits.push_back(circuit_from_json(cj));
  return circuits;
}

}  // namespace sonc
