#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcounter/opalg/coeff.hpp"

namespace qcounter::opalg {

/// Mode families accepted by the parser.
inline const std::set<std::string>& mode_families() {
  static const std::set<std::string> names{"a", "b", "v", "v1", "v2", "d1", "d2"};
  return names;
}

/// A bosonic mode. Discrete modes carry no frequency variable; continuous
/// modes are labelled by a free or integrated frequency variable.
struct ModeLabel {
  std::string name;
  std::optional<std::string> freq;

  static ModeLabel discrete(std::string name) { return {std::move(name), std::nullopt}; }
  static ModeLabel continuous(std::string name, std::string freq) {
    return {std::move(name), std::move(freq)};
  }

  bool is_continuous() const { return freq.has_value(); }

  auto operator<=>(const ModeLabel&) const = default;
  bool operator==(const ModeLabel&) const = default;
};

struct Factor {
  ModeLabel mode;
  bool dagger = false;

  auto operator<=>(const Factor&) const = default;
  bool operator==(const Factor&) const = default;
};

/// Formal delta(lhs - rhs); lhs <= rhs always.
struct Delta {
  std::string lhs;
  std::string rhs;

  static Delta make(std::string x, std::string y);

  auto operator<=>(const Delta&) const = default;
  bool operator==(const Delta&) const = default;
};

/// Formal two-argument spectral kernel such as Phi(w1, w2), optionally conjugated.
struct Kernel {
  std::string name;
  bool conj = false;
  std::string x;
  std::string y;

  auto operator<=>(const Kernel&) const = default;
  bool operator==(const Kernel&) const = default;
};

/// Everything in a term except its scalar coefficient. Symbols, kernels,
/// deltas and integration variables are kept sorted; factor order is
/// meaningful.
struct Monomial {
  std::map<std::string, int> symbols;
  std::vector<Kernel> kernels;
  std::vector<Delta> deltas;
  std::vector<std::string> integrals;
  std::vector<Factor> factors;

  bool is_identity() const {
    return symbols.empty() && kernels.empty() && deltas.empty() && integrals.empty() &&
           factors.empty();
  }

  void canonicalize();

  /// Renames a frequency variable everywhere it occurs.
  void substitute(const std::string& from, const std::string& to);

  /// Terms sort by descending operator degree, then lexicographically.
  std::strong_ordering operator<=>(const Monomial& rhs) const;
  bool operator==(const Monomial& rhs) const = default;

  std::string str() const;
};

Monomial operator*(const Monomial& lhs, const Monomial& rhs);

struct Term {
  Coeff coeff;
  Monomial monomial;
};

/// Canonical sum of terms: like monomials merged, zero terms dropped.
class Expr {
 public:
  Expr() = default;
  explicit Expr(Coeff scalar);
  Expr(Coeff coeff, Monomial monomial);

  static Expr identity() { return Expr(Coeff(1)); }
  static Expr op(ModeLabel mode, bool dagger);
  static Expr symbol(const std::string& name, int power = 1);

  void add(const Monomial& monomial, const Coeff& coeff);

  const std::map<Monomial, Coeff>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of the identity monomial (zero if absent).
  Coeff scalar_part() const;
  Coeff coefficient(const Monomial& m) const;
  bool is_scalar() const;
  bool is_exact() const;

  Expr& operator+=(const Expr& rhs);
  Expr& operator-=(const Expr& rhs);
  friend Expr operator+(Expr lhs, const Expr& rhs) { return lhs += rhs; }
  friend Expr operator-(Expr lhs, const Expr& rhs) { return lhs -= rhs; }
  friend Expr operator*(const Expr& lhs, const Expr& rhs);
  friend Expr operator*(const Coeff& c, const Expr& e);
  Expr operator-() const;

  bool operator==(const Expr& rhs) const;

  /// Maximum operator degree across terms.
  int degree() const;

  /// Drops floating coefficients below 1e-12 relative to the largest term.
  void prune();

  std::string str() const;

 private:
  std::map<Monomial, Coeff> terms_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Contracts every delta that touches an integrated variable by substituting
/// that variable and removing it from the integral list.
Expr integrate_out(const Expr& e);

/// True when some term carries a delta between two distinct free variables.
bool has_free_deltas(const Expr& e);

}  // namespace qcounter::opalg
