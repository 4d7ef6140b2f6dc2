// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <vector>

#include "sonc/geometry.hpp"

namespace sonc {

/// Finite set of lattice points with deterministic (lexicographic) order.
struct LatticeSet {
  std::vector<Exponent> points;  // sorted, unique

  static LatticeSet make(std::vector<Exponent> pts);
  bool contains(const Exponent& p) const;
  std::size_t size() const { return points.size(); }

  friend bool operator==(const LatticeSet&, const LatticeSet&) = default;
};

/// Averages of distinct even points of m: { (u+v)/2 : u != v even in m }.
LatticeSet averages(const LatticeSet& m);

/// A-mediated set test: A subset of M subset of averages(M) union A.
bool is_mediated_set(const LatticeSet& m, const Simplex& trellis);

struct MediatedSet {
  Simplex trellis;
  LatticeSet points;  // trellis vertices are always included
};

/// The maximal A-mediated set A*: greatest fixpoint of deleting non-trellis
/// points that are not averages of two distinct even points of the current
/// set, starting from all lattice points of conv(A). Cached per trellis.
MediatedSet maximal_mediated_set(const Simplex& trellis);

/// True iff A* exhausts the lattice points of conv(A).
bool is_h_trellis(const Simplex& trellis);

}  // namespace sonc
