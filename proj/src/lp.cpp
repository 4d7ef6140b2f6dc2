// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/lp.hpp"

#include <stdexcept>

namespace sonc {

namespace {

// Phase-1 tableau for  V*lambda = b, lambda >= 0  with one artificial per row.
// Bland's rule guarantees termination; all arithmetic is exact.
class Phase1Simplex {
 public:
  Phase1Simplex(const std::vector<std::vector<Rational>>& cols,
                const std::vector<Rational>& rhs)
      : rows_(rhs.size()), nvar_(cols.size()) {
    const std::size_t width = nvar_ + rows_ + 1;
    tab_.assign(rows_, std::vector<Rational>(width, Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool flip = rhs[r] < 0;
      for (std::size_t j = 0; j < nvar_; ++j)
        tab_[r][j] = flip ? Rational(-cols[j][r]) : cols[j][r];
      tab_[r][nvar_ + r] = 1;
      tab_[r][width - 1] = flip ? Rational(-rhs[r]) : rhs[r];
    }
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) basis_[r] = nvar_ + r;
    // Objective: minimize the sum of artificials. Price out the basis:
    // z_j - c_j = sum of constraint rows over the structural columns.
    obj_.assign(width, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < width; ++j) obj_[j] += tab_[r][j];
    for (std::size_t r = 0; r < rows_; ++r) obj_[nvar_ + r] -= 1;
  }

  bool feasible() {
    const std::size_t width = nvar_ + rows_ + 1;
    for (long guard = 0; guard < 100000; ++guard) {
      // Bland: entering column = smallest index with positive reduced profit.
      std::size_t enter = width;
      for (std::size_t j = 0; j + 1 < width; ++j) {
        if (obj_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == width) break;  // optimal
      // Ratio test; ties broken by the smallest basis index (Bland).
      std::size_t leave = rows_;
      Rational best(0);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rational ratio = tab_[r][width - 1] / tab_[r][enter];
        if (leave == rows_ || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) break;  // unbounded cannot occur in phase 1
      pivot(leave, enter);
    }
    return obj_[width - 1] == 0;  // objective value = sum of artificials left
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = nvar_ + rows_ + 1;
    const Rational p = tab_[r][c];
    for (std::size_t j = 0; j < width; ++j) tab_[r][j] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || tab_[i][c] == 0) continue;
      const Rational m = tab_[i][c];
      for (std::size_t j = 0; j < width; ++j) tab_[i][j] -= m * tab_[r][j];
    }
    if (obj_[c] != 0) {
      const Rational m = obj_[c];
      for (std::size_t j = 0; j < width; ++j) obj_[j] -= m * tab_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t rows_;
  std::size_t nvar_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace

bool in_convex_hull(const Exponent& target, const std::vector<Exponent>& points) {
  if (points.empty()) return false;
  const int n = target.size();
  for (const Exponent& p : points)
    if (p.size() != n) throw std::invalid_argument("in_convex_hull: dimension mismatch");
  std::vector<std::vector<Rational>> cols(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    cols[j].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) cols[j][static_cast<std::size_t>(i)] = points[j][i];
    cols[j][static_cast<std::size_t>(n)] = 1;  // convex-combination row
  }
  std::vector<Rational> rhs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = target[i];
  rhs[static_cast<std::size_t>(n)] = 1;
  return Phase1Simplex(cols, rhs).feasible();
}

}  // namespace sonc
