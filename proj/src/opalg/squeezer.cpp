#include "qcounter/opalg/squeezer.hpp"

#include <set>
#include <stdexcept>

#include "qcounter/opalg/ordering.hpp"

namespace qcounter::opalg {

Expr pair_creation(const std::string& a_var, const std::string& b_var) {
  if (a_var.empty() && b_var.empty()) {
    return Expr::op(ModeLabel::discrete("a"), true) * Expr::op(ModeLabel::discrete("b"), true);
  }
  Monomial m;
  m.integrals = {a_var, b_var};
  m.kernels.push_back({"Phi", false, a_var, b_var});
  m.factors.push_back({ModeLabel::continuous("a", a_var), true});
  m.factors.push_back({ModeLabel::continuous("b", b_var), true});
  return Expr(Coeff(1), std::move(m));
}

Expr expand_squeezer_action(const Expr& target, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("squeezer expansion order must be 1 or 2, got " + std::to_string(order));
  }
  if (target.size() != 1) throw std::invalid_argument("target must be a single product of b annihilators");
  const auto& [tm, tc] = *target.terms().begin();
  if (!tm.symbols.empty() || !tm.kernels.empty() || !tm.deltas.empty() || !tm.integrals.empty()) {
    throw std::invalid_argument("target must be a bare product of b annihilators");
  }
  for (const auto& f : tm.factors) {
    if (f.mode.name != "b" || f.dagger) {
      throw std::invalid_argument("target contains a factor other than a b annihilator");
    }
  }
  const int m = static_cast<int>(tm.factors.size());
  if (m > order) {
    throw std::invalid_argument("target with " + std::to_string(m) +
                                " b annihilators needs expansion order >= " + std::to_string(m));
  }
  if (m == 0) return target;

  std::set<std::string> used;
  Expr product = target;
  for (const auto& f : tm.factors) {
    std::string a_var;
    std::string b_var;
    if (f.mode.is_continuous()) {
      std::string stem = *f.mode.freq;
      while (used.contains(stem)) stem += "'";
      used.insert(stem);
      a_var = stem + "_1";
      b_var = stem + "_2";
    }
    product = product * pair_creation(a_var, b_var);
  }

  // Project onto the b vacuum: any surviving b factor annihilates it.
  Expr projected;
  const Expr ordered = normal_order(product);
  for (const auto& [mono, c] : ordered.terms()) {
    bool has_b = false;
    for (const auto& f : mono.factors) has_b = has_b || f.mode.name == "b";
    if (!has_b) projected.add(mono, c);
  }

  Coeff scale = Coeff(m == 1 ? -1 : 1) / Coeff(m == 1 ? 1 : 2);
  return (scale * tc) * (Expr::symbol("zeta", m) * integrate_out(projected));
}

}  // namespace qcounter::opalg
