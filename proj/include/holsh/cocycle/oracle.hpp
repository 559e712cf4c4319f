#pragma once

#include "holsh/cocycle/min_sup.hpp"

namespace holsh::cocycle {

/// Independent check of F(i, N, {w}) for m <= 2 and N <= 12.
///
/// Scans v_i on a grid, evaluating each candidate by forward recursion, and
/// zooms in on the best cell until the spacing drops below `resolution`. For
/// m = 2 the scan is nested: the outer coordinate is scanned and, for each
/// outer value, the inner coordinate is minimised by the same zooming scan.
/// Both the objective and its partial minimum are convex, so the best grid
/// cell always brackets the minimiser. The initial box has radius
/// max_k |v_k| for v_i = 0, which contains every minimiser.
double brute_force_F_oracle(const InhomogeneousProblem& problem, double resolution = 1e-15);

}  // namespace holsh::cocycle
