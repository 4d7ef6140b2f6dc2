// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <vector>

#include "sonc/exponent.hpp"
#include "sonc/rational.hpp"

namespace sonc {

/// Exact convex-hull membership, decided by a phase-1 simplex (Bland's rule)
/// over rationals: is there lambda >= 0 with sum(lambda) = 1 and
/// sum(lambda_j * points_j) = target? Closed hull, boundary included.
bool in_convex_hull(const Exponent& target, const std::vector<Exponent>& points);

}  // namespace sonc
