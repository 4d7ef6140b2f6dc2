// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sonc/exponent.hpp"
#include "sonc/polynomial.hpp"
#include "sonc/rational.hpp"

namespace sonc {

/// Vertex set of a lattice simplex: affinely independent points, stored
/// sorted so two simplices compare structurally.
struct Simplex {
  std::vector<Exponent> vertices;

  /// Sorts, deduplicates and validates affine independence.
  static Simplex make(std::vector<Exponent> vertices);

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int nvars() const { return vertices.empty() ? 0 : vertices.front().size(); }
  bool all_even() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) {
    return a.vertices <=> b.vertices;
  }
};

/// Strictly positive weights with sum 1 and sum(w_i * vertex_i) = target,
/// aligned with a Simplex's vertex list.
struct Barycentrics {
  std::vector<Rational> weights;
};

bool affinely_independent(const std::vector<Exponent>& pts);

/// Vertices of conv(points): exactly those p not in conv(points \ {p}).
std::vector<Exponent> polytope_vertices(std::vector<Exponent> points);

/// Exact barycentric coordinates of beta in s, or nullopt when beta is not
/// in the relative interior (boundary counts as outside).
std::optional<Barycentrics> barycentric_coordinates(const Simplex& s, const Exponent& beta);

/// All simplices with vertices from Lambda(f) that strictly contain beta.
struct CoverSet {
  Exponent beta;
  std::vector<std::pair<Simplex, Barycentrics>> simplices;
};

/// Enumerates every affinely independent subset S of lambda_pts (|S| >= 2)
/// whose relative interior contains beta, ordered by size then
/// lexicographically. Requires all lambda_pts even-entried.
CoverSet enumerate_covers(std::vector<Exponent> lambda_pts, const Exponent& beta);

struct NecessaryCheck {
  bool pass = false;
  std::optional<Exponent> vertex;  // first violating vertex when failing
  std::string reason;
};

/// Every vertex of New(f) must be even-entried with a positive coefficient.
NecessaryCheck necessary_conditions(const SparsePolynomial& f);

/// Lattice points of conv(points), by bounding-box scan with exact hull
/// membership per candidate.
std::vector<Exponent> lattice_points_in_hull(const std::vector<Exponent>& points);

}  // namespace sonc
