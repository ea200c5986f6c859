#pragma once

#include <map>
#include <string>

#include "qcounter/opalg/expr.hpp"

namespace qcounter::opalg {

/// State assigned to one mode family.
struct ModeState {
  enum class Kind { vacuum, coherent, coherent_symbolic };

  Kind kind = Kind::vacuum;
  Coeff amplitude;          // coherent only
  std::string symbol = "nbar";  // coherent_symbolic: mean photon number symbol

  static ModeState vacuum() { return {}; }
  static ModeState coherent(Coeff alpha) { return {Kind::coherent, std::move(alpha), {}}; }
  static ModeState coherent_symbolic(std::string nbar = "nbar") {
    return {Kind::coherent_symbolic, Coeff(0), std::move(nbar)};
  }
};

/// Per-family state assignment; every family in an evaluated expression
/// must be present.
using StateSpec = std::map<std::string, ModeState>;

struct ExpectationValue {
  Expr value;               // scalar expression (no operator factors)
  bool has_free_deltas = false;
};

/// Expectation value in a product state of vacua and coherent states.
///
/// The expression is normal ordered, then annihilators (creators) on a
/// coherent mode become its amplitude (conjugate amplitude). For a symbolic
/// discrete coherent mode with k creators and m annihilators the result is
/// nbar^min(k,m) times <nbar>_alpha^(m-k) or <nbar>_alphac^(k-m). For a
/// symbolic continuous mode the stationary rule alpha*(w) alpha(w') ->
/// nbar delta(w - w') is applied, averaged over all pairings of creators with
/// annihilators; unequal counts average to zero. Deltas on integrated
/// variables are contracted afterwards.
///
/// Throws std::invalid_argument for unassigned modes and for numeric
/// amplitudes on continuous modes.
ExpectationValue expectation(const Expr& e, const StateSpec& state);

}  // namespace qcounter::opalg
