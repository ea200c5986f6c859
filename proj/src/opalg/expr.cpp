#include "qcounter/opalg/expr.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcounter::opalg {

Delta Delta::make(std::string x, std::string y) {
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

void Monomial::canonicalize() {
  for (auto it = symbols.begin(); it != symbols.end();) {
    it = it->second == 0 ? symbols.erase(it) : std::next(it);
  }
  for (auto& d : deltas) d = Delta::make(d.lhs, d.rhs);
  std::sort(kernels.begin(), kernels.end());
  std::sort(deltas.begin(), deltas.end());
  std::sort(integrals.begin(), integrals.end());
  integrals.erase(std::unique(integrals.begin(), integrals.end()), integrals.end());
}

void Monomial::substitute(const std::string& from, const std::string& to) {
  auto rename = [&](std::string& v) {
    if (v == from) v = to;
  };
  for (auto& k : kernels) {
    rename(k.x);
    rename(k.y);
  }
  for (auto& d : deltas) {
    rename(d.lhs);
    rename(d.rhs);
  }
  for (auto& f : factors) {
    if (f.mode.freq) rename(*f.mode.freq);
  }
  for (auto& v : integrals) rename(v);
  canonicalize();
}

std::strong_ordering Monomial::operator<=>(const Monomial& rhs) const {
  if (auto c = rhs.factors.size() <=> factors.size(); c != 0) return c;
  if (auto c = factors <=> rhs.factors; c != 0) return c;
  if (auto c = symbols <=> rhs.symbols; c != 0) return c;
  if (auto c = kernels <=> rhs.kernels; c != 0) return c;
  if (auto c = deltas <=> rhs.deltas; c != 0) return c;
  return integrals <=> rhs.integrals;
}

namespace {

std::string power_suffix(int n) { return n == 1 ? std::string() : "^" + std::to_string(n); }

std::string factor_str(const Factor& f) {
  std::string s = f.mode.name + (f.dagger ? "dag" : "");
  if (f.mode.freq) s += "(" + *f.mode.freq + ")";
  return s;
}

template <class T, class Fmt>
void emit_runs(const std::vector<T>& items, Fmt fmt, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    while (j < items.size() && items[j] == items[i]) ++j;
    out.push_back(fmt(items[i]) + power_suffix(static_cast<int>(j - i)));
    i = j;
  }
}

}  // namespace

std::string Monomial::str() const {
  std::vector<std::string> parts;
  for (const auto& [name, power] : symbols) parts.push_back(name + power_suffix(power));
  if (!integrals.empty()) {
    std::string s = "int(";
    for (std::size_t i = 0; i < integrals.size(); ++i) s += (i ? "," : "") + integrals[i];
    parts.push_back(s + ")");
  }
  emit_runs(
      kernels,
      [](const Kernel& k) { return k.name + (k.conj ? "c" : "") + "(" + k.x + "," + k.y + ")"; },
      parts);
  emit_runs(deltas, [](const Delta& d) { return "delta(" + d.lhs + "," + d.rhs + ")"; }, parts);
  emit_runs(factors, factor_str, parts);
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
  return s;
}

Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
  for (const auto& v : rhs.integrals) {
    if (std::binary_search(lhs.integrals.begin(), lhs.integrals.end(), v)) {
      throw std::invalid_argument("integration variable '" + v + "' bound in both factors");
    }
  }
  Monomial out = lhs;
  for (const auto& [name, power] : rhs.symbols) out.symbols[name] += power;
  out.kernels.insert(out.kernels.end(), rhs.kernels.begin(), rhs.kernels.end());
  out.deltas.insert(out.deltas.end(), rhs.deltas.begin(), rhs.deltas.end());
  out.integrals.insert(out.integrals.end(), rhs.integrals.begin(), rhs.integrals.end());
  out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
  out.canonicalize();
  return out;
}

Expr::Expr(Coeff scalar) { add(Monomial{}, scalar); }

Expr::Expr(Coeff coeff, Monomial monomial) {
  monomial.canonicalize();
  add(monomial, coeff);
}

Expr Expr::op(ModeLabel mode, bool dagger) {
  Monomial m;
  m.factors.push_back({std::move(mode), dagger});
  return Expr(Coeff(1), std::move(m));
}

Expr Expr::symbol(const std::string& name, int power) {
  Monomial m;
  m.symbols[name] = power;
  return Expr(Coeff(1), std::move(m));
}

void Expr::add(const Monomial& monomial, const Coeff& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Coeff Expr::scalar_part() const { return coefficient(Monomial{}); }

Coeff Expr::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0) : it->second;
}

bool Expr::is_scalar() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.factors.empty(); });
}

bool Expr::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_exact(); });
}

Expr& Expr::operator+=(const Expr& rhs) {
  for (const auto& [m, c] : rhs.terms_) add(m, c);
  prune();
  return *this;
}

Expr& Expr::operator-=(const Expr& rhs) {
  for (const auto& [m, c] : rhs.terms_) add(m, -c);
  prune();
  return *this;
}

Expr operator*(const Expr& lhs, const Expr& rhs) {
  Expr out;
  for (const auto& [ml, cl] : lhs.terms_) {
    for (const auto& [mr, cr] : rhs.terms_) out.add(ml * mr, cl * cr);
  }
  out.prune();
  return out;
}

Expr operator*(const Coeff& c, const Expr& e) {
  Expr out;
  for (const auto& [m, ce] : e.terms_) out.add(m, c * ce);
  out.prune();
  return out;
}

Expr Expr::operator-() const { return Coeff(-1) * *this; }

bool Expr::operator==(const Expr& rhs) const {
  if (terms_.size() != rhs.terms_.size()) return false;
  auto it = rhs.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (!(m == it->first) || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

int Expr::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.factors.size()));
  return d;
}

void Expr::prune() {
  double largest = 0.0;
  bool any_inexact = false;
  for (const auto& [m, c] : terms_) {
    largest = std::max(largest, c.magnitude());
    any_inexact = any_inexact || !c.is_exact();
  }
  if (!any_inexact) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool tiny = !it->second.is_exact() && it->second.magnitude() <= 1e-12 * largest;
    it = tiny ? terms_.erase(it) : std::next(it);
  }
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.is_exact() && c.is_real() && c.real_exact() < 0;
    Coeff shown = negative ? -c : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string body = m.str();
    if (body.empty()) {
      os << shown.str();
    } else if (shown.is_one()) {
      os << body;
    } else {
      os << shown.str() << " " << body;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

Expr integrate_out(const Expr& e) {
  Expr out;
  for (const auto& [m0, c] : e.terms()) {
    Monomial m = m0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < m.deltas.size(); ++i) {
        const Delta d = m.deltas[i];
        if (d.lhs == d.rhs) continue;
        auto bound = [&](const std::string& v) {
          return std::binary_search(m.integrals.begin(), m.integrals.end(), v);
        };
        std::string from;
        std::string to;
        if (bound(d.lhs)) {
          from = d.lhs;
          to = d.rhs;
        } else if (bound(d.rhs)) {
          from = d.rhs;
          to = d.lhs;
        } else {
          continue;
        }
        m.deltas.erase(m.deltas.begin() + static_cast<std::ptrdiff_t>(i));
        m.integrals.erase(std::find(m.integrals.begin(), m.integrals.end(), from));
        m.substitute(from, to);
        progress = true;
        break;
      }
    }
    out.add(m, c);
  }
  out.prune();
  return out;
}

bool has_free_deltas(const Expr& e) {
  for (const auto& [m, c] : e.terms()) {
    for (const auto& d : m.deltas) {
      if (d.lhs != d.rhs) return true;
    }
  }
  return false;
}

}  // namespace qcounter::opalg
