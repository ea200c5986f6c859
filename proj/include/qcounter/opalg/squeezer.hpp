#pragma once

#include "qcounter/opalg/expr.hpp"

namespace qcounter::opalg {

/// Pair creation operator int(x,y) Phi(x,y) adag(x) bdag(y) with the given
/// integration variables. For discrete modes (empty names) it is adag bdag.
Expr pair_creation(const std::string& a_var, const std::string& b_var);

/// Leading surviving term of  b...b exp[zetac P - zeta Pdag] |0>_b  projected
/// back onto the b vacuum, where Pdag is the pair creation operator above.
///
/// `target` must be a single product of m <= 2 b-mode annihilators (or the
/// identity) and `order` (1 or 2) must be at least m. The result is
/// (-zeta)^m / m! <0_b| b^m Pdag^m |0_b>, an operator on the a mode; the
/// a-side variable paired with b(w) is named w_1.
Expr expand_squeezer_action(const Expr& target, int order);

}  // namespace qcounter::opalg
