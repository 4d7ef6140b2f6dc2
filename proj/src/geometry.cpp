// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "sonc/errors.hpp"
#include "sonc/lp.hpp"

namespace sonc {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

int gauss_rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

// Solves A x = b for A with full column rank; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_consistent(Matrix a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_row(cols, rows);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_row[c] = rank;
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_row[c] == rows) return std::nullopt;  // rank-deficient columns
    x[c] = b[pivot_row[c]] / a[pivot_row[c]][c];
  }
  return x;
}

std::vector<Exponent> sorted_unique(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

bool affinely_independent(const std::vector<Exponent>& pts) {
  if (pts.size() <= 1) return true;
  const int n = pts.front().size();
  Matrix diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t j = 1; j < pts.size(); ++j) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = pts[j][i] - pts[0][i];
    diffs.push_back(std::move(row));
  }
  return gauss_rank(std::move(diffs)) == static_cast<int>(pts.size()) - 1;
}

Simplex Simplex::make(std::vector<Exponent> vertices) {
  if (vertices.empty()) throw std::invalid_argument("simplex needs vertices");
  vertices = sorted_unique(std::move(vertices));
  for (const Exponent& v : vertices)
    if (v.size() != vertices.front().size())
      throw DimensionMismatchError("simplex vertices of mixed dimension");
  if (!affinely_independent(vertices))
    throw std::invalid_argument("simplex vertices are affinely dependent");
  Simplex s;
  s.vertices = std::move(vertices);
  return s;
}

bool Simplex::all_even() const {
  return std::all_of(vertices.begin(), vertices.end(),
                     [](const Exponent& v) { return v.is_even(); });
}

std::vector<Exponent> polytope_vertices(std::vector<Exponent> points) {
  points = sorted_unique(std::move(points));
  if (points.empty()) throw std::invalid_argument("polytope_vertices: no points");
  std::vector<Exponent> verts;
  for (std::size_t j = 0; j < points.size(); ++j) {
    std::vector<Exponent> others;
    others.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (i != j) others.push_back(points[i]);
    if (others.empty() || !in_convex_hull(points[j], others)) verts.push_back(points[j]);
  }
  return verts;
}

std::optional<Barycentrics> barycentric_coordinates(const Simplex& s, const Exponent& beta) {
  const int n = s.nvars();
  if (beta.size() != n) throw DimensionMismatchError("barycentric: dimension mismatch");
  const std::size_t m = s.vertices.size();
  Matrix a(static_cast<std::size_t>(n) + 1, std::vector<Rational>(m));
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][j] = s.vertices[j][i];
    a[static_cast<std::size_t>(n)][j] = 1;
  }
  for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = beta[i];
  b[static_cast<std::size_t>(n)] = 1;
  auto sol = solve_consistent(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  for (const Rational& w : *sol)
    if (w <= 0) return std::nullopt;  // boundary counts as outside
  return Barycentrics{std::move(*sol)};
}

CoverSet enumerate_covers(std::vector<Exponent> lambda_pts, const Exponent& beta) {
  lambda_pts = sorted_unique(std::move(lambda_pts));
  for (const Exponent& p : lambda_pts) {
    if (p.size() != beta.size())
      throw DimensionMismatchError("enumerate_covers: dimension mismatch");
    if (!p.is_even())
      throw std::invalid_argument("enumerate_covers: lambda point " + p.str() +
                                  " is not even-entried");
  }
  CoverSet cover;
  cover.beta = beta;
  const int n = beta.size();
  const std::size_t count = lambda_pts.size();
  const std::size_t max_size =
      std::min(count, static_cast<std::size_t>(n) + 1);
  std::vector<std::size_t> idx;
  // Subsets by size, each size in lexicographic index order.
  for (std::size_t size = 2; size <= max_size; ++size) {
    idx.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Exponent> subset;
      subset.reserve(size);
      for (std::size_t i : idx) subset.push_back(lambda_pts[i]);
      if (affinely_independent(subset)) {
        Simplex s;
        s.vertices = subset;  // already sorted and independent
        if (auto bary = barycentric_coordinates(s, beta))
          cover.simplices.emplace_back(std::move(s), std::move(*bary));
      }
      // next combination
      std::size_t i = size;
      while (i > 0) {
        --i;
        if (idx[i] + (size - i) < count) {
          ++idx[i];
          for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = size + 1;
          break;
        }
      }
      if (i == size + 1) break;
    }
  }
  return cover;
}

NecessaryCheck necessary_conditions(const SparsePolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomialError();
  std::vector<Exponent> pts;
  pts.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) pts.push_back(e);
  NecessaryCheck check;
  for (const Exponent& v : polytope_vertices(std::move(pts))) {
    if (!v.is_even()) {
      check.pass = false;
      check.vertex = v;
      check.reason = "vertex " + v.str() + " has an odd entry";
      return check;
    }
    if (f.at(v) < 0) {
      check.pass = false;
      check.vertex = v;
      check.reason = "vertex " + v.str() + " has a negative coefficient";
      return check;
    }
  }
  check.pass = true;
  return check;
}

std::vector<Exponent> lattice_points_in_hull(const std::vector<Exponent>& points) {
  if (points.empty()) return {};
  const int n = points.front().size();
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] = points[0][i];
    hi[static_cast<std::size_t>(i)] = points[0][i];
    for (const Exponent& p : points) {
      lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], p[i]);
      hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], p[i]);
    }
  }
  std::vector<Exponent> result;
  std::vector<int> cur(static_cast<std::size_t>(n));
  // Odometer scan over the bounding box.
  for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
  while (true) {
    Exponent candidate(cur);
    if (in_convex_hull(candidate, points)) result.push_back(std::move(candidate));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (cur[static_cast<std::size_t>(i)] < hi[static_cast<std::size_t>(i)]) {
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) cur[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
        break;
      }
    }
    if (i < 0) break;
  }
  return result;
}

}  // namespace sonc
