#include "qcounter/opalg/parse.hpp"

#include <cctype>

namespace qcounter::opalg {

namespace {

using Rational = Coeff::Rational;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expr() {
    Expr out;
    bool negate = false;
    if (char c = peek(); c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    Expr t = term();
    out += negate ? -t : t;
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Expr next = term();
      out += c == '-' ? -next : next;
    }
    return out;
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || ident_start(c);
  }

  Expr term() {
    Expr out = power();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        out = multiply(out, power());
      } else if (c == '/') {
        ++pos_;
        std::size_t at = (skip_ws(), pos_);
        Expr d = power();
        if (!d.is_scalar() || d.size() != 1 || !d.terms().begin()->first.is_identity()) {
          fail_at("division by a non-numeric expression", at);
        }
        Coeff den = d.scalar_part();
        if (den.is_zero()) fail_at("division by zero", at);
        out = (Coeff(1) / den) * out;
      } else if (starts_factor(c)) {
        out = multiply(out, power());
      } else {
        break;
      }
    }
    return out;
  }

  Expr multiply(const Expr& lhs, const Expr& rhs) const {
    try {
      return lhs * rhs;
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Expr power() {
    Expr base = factor();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    Expr out = Expr::identity();
    for (int i = 0; i < n; ++i) out = multiply(out, base);
    return out;
  }

  Expr number() {
    std::size_t start = pos_;
    Rational value = 0;
    Rational scale = 1;
    bool digits = false;
    bool fraction = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        value = value * 10 + (c - '0');
        if (fraction) scale *= 10;
        digits = true;
      } else if (c == '.' && !fraction) {
        fraction = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!digits) fail_at("malformed number", start);
    value /= scale;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) negative = text_[pos_++] == '-';
      std::size_t exp_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (exp_start == pos_) {
        pos_ = save;
      } else {
        int exponent = std::stoi(std::string(text_.substr(exp_start, pos_ - exp_start)));
        Rational p = 1;
        for (int i = 0; i < exponent; ++i) p *= 10;
        value = negative ? Rational(value / p) : Rational(value * p);
      }
    }
    return Expr(Coeff::exact(value));
  }

  std::vector<std::string> argument_list() {
    expect('(');
    std::vector<std::string> args{identifier()};
    while (peek() == ',') {
      ++pos_;
      args.push_back(identifier());
    }
    expect(')');
    return args;
  }

  Expr factor() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (!ident_start(c)) fail("unexpected '" + std::string(1, c) + "'");

    std::size_t at = pos_;
    std::string name = identifier();
    if (name == "i") return Expr(Coeff::exact(0, 1));

    bool dagger = false;
    std::string family = name;
    if (ends_with(name, "dag")) {
      dagger = true;
      family = name.substr(0, name.size() - 3);
    }
    if (mode_families().contains(family)) {
      if (peek() == '(') {
        auto args = argument_list();
        if (args.size() != 1) fail_at("mode operator takes one frequency variable", at);
        return Expr::op(ModeLabel::continuous(family, args[0]), dagger);
      }
      return Expr::op(ModeLabel::discrete(family), dagger);
    }
    if (dagger) fail_at("dagger applied to scalar '" + family + "'", at);

    if (peek() != '(') return Expr::symbol(name);

    auto args = argument_list();
    Monomial m;
    if (name == "delta" || name == "Phi" || name == "Phic") {
      if (args.size() != 2) fail_at(name + " takes two arguments", at);
      if (name == "delta") {
        m.deltas.push_back(Delta::make(args[0], args[1]));
      } else {
        m.kernels.push_back({"Phi", name == "Phic", args[0], args[1]});
      }
    } else if (name == "int") {
      m.integrals = args;
    } else {
      fail_at("unknown function '" + name + "'", at);
    }
    return Expr(Coeff(1), std::move(m));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace qcounter::opalg
