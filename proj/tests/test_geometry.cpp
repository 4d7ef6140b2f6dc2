// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include <algorithm>

#include "sonc/geometry.hpp"
#include "sonc/lp.hpp"
#include "support/gen.hpp"

using namespace sonc;

namespace {

Exponent E(std::vector<int> v) { return Exponent(std::move(v)); }

// Test-local exact solver, independent of the library's elimination and LP
// code paths: straightforward Gauss-Jordan on [A|b].
std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a,
                                           std::vector<Rational> b) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::vector<std::size_t> where(cols, rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    std::swap(b[sel], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational f = a[i][c] / a[r][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    where[c] = r++;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c) {
    if (where[c] == rows) return std::nullopt;
    x[c] = b[where[c]] / a[where[c]][c];
  }
  return x;
}

// Closed-hull membership of p in conv(pts) via Caratheodory: some affinely
// independent subset of size <= n+1 must contain p with weights >= 0.
bool oracle_in_hull(const Exponent& p, const std::vector<Exponent>& pts) {
  const int n = p.size();
  const std::size_t count = pts.size();
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= std::min<std::size_t>(count, n + 1); ++size) {
    idx.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Exponent> subset;
      for (std::size_t i : idx) subset.push_back(pts[i]);
      if (affinely_independent(subset)) {
        std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(size));
        std::vector<Rational> b(n + 1);
        for (std::size_t j = 0; j < size; ++j) {
          for (int i = 0; i < n; ++i) a[i][j] = subset[j][i];
          a[n][j] = 1;
        }
        for (int i = 0; i < n; ++i) b[i] = p[i];
        b[n] = 1;
        if (auto sol = gauss(a, b)) {
          bool ok = true;
          for (const Rational& w : *sol)
            if (w < 0) ok = false;
          if (ok) return true;
        }
      }
      std::size_t i = size;
      bool done = false;
      while (i > 0) {
        --i;
        if (idx[i] + (size - i) < count) {
          ++idx[i];
          for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("polytope vertices: fixtures") {
  SUBCASE("interior point dropped") {
    const auto v = polytope_vertices({E({0, 0}), E({4, 0}), E({0, 4}), E({2, 1})});
    CHECK(v == std::vector<Exponent>{E({0, 0}), E({0, 4}), E({4, 0})});
  }
  SUBCASE("square corners survive, inner points dropped") {
    const auto v = polytope_vertices(
        {E({0, 0}), E({4, 0}), E({0, 4}), E({4, 4}), E({2, 1}), E({1, 2})});
    CHECK(v == std::vector<Exponent>{E({0, 0}), E({0, 4}), E({4, 0}), E({4, 4})});
  }
  SUBCASE("single point") {
    CHECK(polytope_vertices({E({3, 5})}) == std::vector<Exponent>{E({3, 5})});
  }
}

TEST_CASE("polytope vertices agree with the Caratheodory oracle") {
  testgen::Rng rng(31337);
  for (int trial = 0; trial < 120; ++trial) {
    std::uniform_int_distribution<int> nv(1, 3), cnt(1, 12);
    const int n = nv(rng);
    std::vector<Exponent> pts;
    const int count = cnt(rng);
    for (int i = 0; i < count; ++i) pts.push_back(testgen::random_exponent(rng, n, 6));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const auto verts = polytope_vertices(pts);
    for (const Exponent& p : pts) {
      std::vector<Exponent> others;
      for (const Exponent& q : pts)
        if (!(q == p)) others.push_back(q);
      const bool is_vertex = std::find(verts.begin(), verts.end(), p) != verts.end();
      const bool oracle_vertex = others.empty() || !oracle_in_hull(p, others);
      CHECK(is_vertex == oracle_vertex);
      // The LP membership itself must agree with the oracle as well.
      if (!others.empty()) CHECK(in_convex_hull(p, others) == oracle_in_hull(p, others));
    }
  }
}

TEST_CASE("barycentric coordinates: fixtures") {
  const Simplex tri = Simplex::make({E({0, 0}), E({4, 0}), E({0, 4})});
  SUBCASE("strictly interior") {
    const auto bary = barycentric_coordinates(tri, E({2, 1}));
    REQUIRE(bary.has_value());
    // vertices sorted: (0,0), (0,4), (4,0)
    CHECK(bary->weights == std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  }
  SUBCASE("midpoint of a segment") {
    const Simplex seg = Simplex::make({E({0}), E({2})});
    const auto bary = barycentric_coordinates(seg, E({1}));
    REQUIRE(bary.has_value());
    CHECK(bary->weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  }
  SUBCASE("edge point counts as outside") {
    CHECK_FALSE(barycentric_coordinates(tri, E({2, 2})).has_value());
    CHECK_FALSE(barycentric_coordinates(tri, E({5, 5})).has_value());
  }
}

TEST_CASE("enumerate_covers: fixtures from the regression example") {
  const std::vector<Exponent> corners = {E({0, 0}), E({4, 0}), E({0, 4}), E({4, 4})};
  SUBCASE("beta (2,1) sits in two triangles") {
    const CoverSet cover = enumerate_covers(corners, E({2, 1}));
    REQUIRE(cover.simplices.size() == 2);
    CHECK(cover.simplices[0].first.vertices ==
          std::vector<Exponent>{E({0, 0}), E({0, 4}), E({4, 0})});
    CHECK(cover.simplices[1].first.vertices ==
          std::vector<Exponent>{E({0, 0}), E({4, 0}), E({4, 4})});
  }
  SUBCASE("beta (1,2) sits in two triangles") {
    const CoverSet cover = enumerate_covers(corners, E({1, 2}));
    REQUIRE(cover.simplices.size() == 2);
    CHECK(cover.simplices[0].first.vertices ==
          std::vector<Exponent>{E({0, 0}), E({0, 4}), E({4, 0})});
    CHECK(cover.simplices[1].first.vertices ==
          std::vector<Exponent>{E({0, 0}), E({0, 4}), E({4, 4})});
  }
  SUBCASE("point outside the hull has no cover") {
    CHECK(enumerate_covers({E({0}), E({2})}, E({3})).simplices.empty());
  }
}

TEST_CASE("enumerate_covers: weights are exact and the scan is closed") {
  testgen::Rng rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> nv(1, 2), cnt(2, 6);
    const int n = nv(rng);
    std::vector<Exponent> lambda_pts;
    const int count = cnt(rng);
    for (int i = 0; i < count; ++i)
      lambda_pts.push_back(testgen::random_exponent(rng, n, 3).scaled(2));
    const Exponent beta = testgen::random_exponent(rng, n, 6);

    const CoverSet cover = enumerate_covers(lambda_pts, beta);
    for (const auto& [simplex, bary] : cover.simplices) {
      Rational wsum(0);
      std::vector<Rational> combo(static_cast<std::size_t>(n), Rational(0));
      for (std::size_t j = 0; j < simplex.vertices.size(); ++j) {
        wsum += bary.weights[j];
        for (int i = 0; i < n; ++i) combo[i] += bary.weights[j] * simplex.vertices[j][i];
      }
      CHECK(wsum == 1);
      for (int i = 0; i < n; ++i) CHECK(combo[i] == beta[i]);
    }

    // Independent exhaustive scan: every affinely independent subset whose
    // relative interior holds beta must be listed, and nothing else.
    std::sort(lambda_pts.begin(), lambda_pts.end());
    lambda_pts.erase(std::unique(lambda_pts.begin(), lambda_pts.end()), lambda_pts.end());
    std::size_t expected = 0;
    const std::size_t m = lambda_pts.size();
    for (std::size_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<Exponent> subset;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) subset.push_back(lambda_pts[i]);
      if (subset.size() < 2 || !affinely_independent(subset)) continue;
      Simplex s;
      s.vertices = subset;
      if (barycentric_coordinates(s, beta)) ++expected;
    }
    CHECK(cover.simplices.size() == expected);
  }
}

TEST_CASE("necessary conditions") {
  CHECK(necessary_conditions(
            parse_polynomial("50*x1^4*x2^4 + x1^4 + 3*x2^4 + 800 - 300*x1*x2^2 - 180*x1^2*x2", 2))
            .pass);
  const auto odd = necessary_conditions(parse_polynomial("x1^3 + 1", 1));
  CHECK_FALSE(odd.pass);
  CHECK(*odd.vertex == E({3}));
  const auto neg = necessary_conditions(parse_polynomial("0 - x1^2 + 1", 1));
  CHECK_FALSE(neg.pass);
  CHECK(*neg.vertex == E({2}));
  CHECK_THROWS_AS(necessary_conditions(SparsePolynomial(1)), ZeroPolynomialError);
}

TEST_CASE("lattice points in hull") {
  const auto pts = lattice_points_in_hull({E({0, 0}), E({2, 0}), E({0, 2})});
  CHECK(pts.size() == 6);
  const auto seg = lattice_points_in_hull({E({0}), E({6})});
  CHECK(seg.size() == 7);
}
