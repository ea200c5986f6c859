#include "qcounter/opalg/expectation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qcounter/opalg/ordering.hpp"

namespace qcounter::opalg {

namespace {

struct FamilyOps {
  bool continuous = false;
  std::vector<std::string> creators;
  std::vector<std::string> annihilators;
  int n_creators = 0;
  int n_annihilators = 0;
};

Coeff power(const Coeff& base, int n) {
  Coeff out(1);
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

Expr evaluate_term(const Monomial& m, const Coeff& c, const StateSpec& state) {
  std::map<std::string, FamilyOps> families;
  for (const auto& f : m.factors) {
    auto& fam = families[f.mode.name];
    fam.continuous = f.mode.is_continuous();
    if (f.dagger) {
      ++fam.n_creators;
      if (fam.continuous) fam.creators.push_back(*f.mode.freq);
    } else {
      ++fam.n_annihilators;
      if (fam.continuous) fam.annihilators.push_back(*f.mode.freq);
    }
  }

  for (const auto& [name, fam] : families) {
    if (!state.contains(name)) throw std::invalid_argument("mode '" + name + "' has no state assignment");
  }

  Monomial base = m;
  base.factors.clear();
  Expr acc(c, base);

  for (const auto& [name, fam] : families) {
    const ModeState& ms = state.at(name);
    switch (ms.kind) {
      case ModeState::Kind::vacuum:
        return Expr{};
      case ModeState::Kind::coherent: {
        if (fam.continuous) {
          throw std::invalid_argument("continuous mode '" + name +
                                      "' needs a symbolic (stationary) coherent amplitude");
        }
        Coeff factor = power(ms.amplitude.conj(), fam.n_creators) *
                       power(ms.amplitude, fam.n_annihilators);
        acc = factor * acc;
        break;
      }
      case ModeState::Kind::coherent_symbolic: {
        if (!fam.continuous) {
          int paired = std::min(fam.n_creators, fam.n_annihilators);
          Monomial sym;
          sym.symbols[ms.symbol] = paired;
          if (fam.n_annihilators > paired) sym.symbols[ms.symbol + "_alpha"] = fam.n_annihilators - paired;
          if (fam.n_creators > paired) sym.symbols[ms.symbol + "_alphac"] = fam.n_creators - paired;
          acc = acc * Expr(Coeff(1), sym);
          break;
        }
        if (fam.n_creators != fam.n_annihilators) return Expr{};
        const int k = fam.n_creators;
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        Expr pairings;
        Coeff count(0);
        do {
          Monomial pm;
          pm.symbols[ms.symbol] = k;
          for (int i = 0; i < k; ++i) {
            pm.deltas.push_back(Delta::make(fam.creators[static_cast<std::size_t>(i)],
                                            fam.annihilators[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]));
          }
          pm.canonicalize();
          pairings.add(pm, Coeff(1));
          count += Coeff(1);
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc = (Coeff(1) / count) * (acc * pairings);
        break;
      }
    }
  }
  return acc;
}

}  // namespace

ExpectationValue expectation(const Expr& e, const StateSpec& state) {
  Expr ordered = normal_order(e);
  Expr total;
  for (const auto& [m, c] : ordered.terms()) total += evaluate_term(m, c, state);
  ExpectationValue out;
  out.value = integrate_out(total);
  out.has_free_deltas = has_free_deltas(out.value);
  return out;
}

}  // namespace qcounter::opalg
