#include "qcounter/opalg/ordering.hpp"

namespace qcounter::opalg {

namespace {

// Operators of the same family and kind fail to commute only as x, xdag.
bool same_family(const ModeLabel& x, const ModeLabel& y) {
  return x.name == y.name && x.is_continuous() == y.is_continuous();
}

// Strict order of factors in the target arrangement.
bool goes_before(const Factor& x, const Factor& y, bool normal) {
  bool x_late = normal ? !x.dagger : x.dagger;
  bool y_late = normal ? !y.dagger : y.dagger;
  if (x_late != y_late) return y_late;
  return x.mode < y.mode;
}

void reorder(const Monomial& m, const Coeff& c, bool normal, Expr& out) {
  const auto& fs = m.factors;
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    const Factor& left = fs[i];
    const Factor& right = fs[i + 1];
    if (!goes_before(right, left, normal)) continue;

    Monomial swapped = m;
    std::swap(swapped.factors[i], swapped.factors[i + 1]);
    reorder(swapped, c, normal, out);

    if (left.dagger != right.dagger && same_family(left.mode, right.mode)) {
      // normal:     x ydag = ydag x + [x, ydag]
      // antinormal: xdag y = y xdag - [y, xdag]
      Monomial contracted = m;
      contracted.factors.erase(contracted.factors.begin() + static_cast<std::ptrdiff_t>(i),
                               contracted.factors.begin() + static_cast<std::ptrdiff_t>(i + 2));
      if (left.mode.is_continuous()) {
        contracted.deltas.push_back(Delta::make(*left.mode.freq, *right.mode.freq));
        contracted.canonicalize();
      }
      reorder(contracted, normal ? c : -c, normal, out);
    }
    return;
  }
  out.add(m, c);
}

Expr reorder_all(const Expr& e, bool normal) {
  Expr out;
  for (const auto& [m, c] : e.terms()) reorder(m, c, normal, out);
  out.prune();
  return out;
}

}  // namespace

Expr normal_order(const Expr& e) { return reorder_all(e, true); }

Expr antinormal_order(const Expr& e) { return reorder_all(e, false); }

}  // namespace qcounter::opalg
