#pragma once

#include "qcounter/opalg/expr.hpp"

namespace qcounter::opalg {

/// Rewrites every term with creation operators to the left of annihilation
/// operators using [x(w), xdag(w')] = delta(w - w') for continuous modes and
/// [x, xdag] = 1 for discrete ones. Within each group factors are sorted by
/// mode name, then frequency variable.
Expr normal_order(const Expr& e);

/// Annihilation operators to the left, creation operators to the right.
Expr antinormal_order(const Expr& e);

}  // namespace qcounter::opalg
