#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "cremona/algebra/forms.hpp"
#include "cremona/algebra/mpoly.hpp"

namespace cremona {

enum class Vars { XYZ, ST };

namespace detail {

// Recursive-descent parser for
//   sum    := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] atom ['^' integer]
//   atom   := integer ['/' integer] | variable | '(' sum ')'
class PolyParser {
 public:
  PolyParser(const std::string& text, Vars vars, Field F) : s_(text), vars_(vars), F_(F) {}

  Poly parse_all() {
    Poly p = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::SyntaxError, msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) error("expected a number");
    return s_.substr(b, pos_ - b);
  }

  Poly sum() {
    Poly acc(F_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    if (accept('-')) return -factor();
    Poly base = atom();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 4) error("exponent too large");
      base = base.pow(std::stoi(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = sum();
      if (!accept(')')) error("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      if (accept('/')) den = digits();
      mpz_class d(den);
      if (d == 0) error("zero denominator");
      mpq_class q(mpz_class(num), d);
      q.canonicalize();
      return Poly::constant(F_.from_mpq(q));
    }
    int slot = -1;
    if (vars_ == Vars::XYZ) {
      if (c == 'x') slot = 0;
      if (c == 'y') slot = 1;
      if (c == 'z') slot = 2;
    } else {
      if (c == 's') slot = 0;
      if (c == 't') slot = 1;
    }
    if (slot < 0) error("unexpected '" + std::string(1, c) + "'");
    ++pos_;
    return Poly::var(F_, slot);
  }

  std::string s_;
  std::size_t pos_ = 0;
  Vars vars_;
  Field F_;
};

}  // namespace detail

// Parses a polynomial; the result need not be homogeneous.
inline Poly parse_poly(const std::string& text, Field F, Vars vars = Vars::XYZ) {
  return detail::PolyParser(text, vars, F).parse_all();
}

// Parses a ternary form; mixed total degrees raise NonHomogeneous.
inline Poly parse_form(const std::string& text, Field F) {
  Poly p = parse_poly(text, F, Vars::XYZ);
  if (!p.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "\"" + text + "\" mixes total degrees");
  return p;
}

inline BinaryForm parse_binary(const std::string& text, Field F) {
  Poly p = parse_poly(text, F, Vars::ST);
  if (!p.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "\"" + text + "\" mixes total degrees");
  return BinaryForm::from_poly(p);
}

inline std::string print_form(const Poly& f) { return f.str("xyz"); }
inline std::string print_binary(const BinaryForm& b) { return b.str(); }

// Splits "[a : b : c]"-style literals (also "(...)" and "{...}") into their
// colon-separated parts, respecting nested parentheses.
inline std::vector<std::string> split_literal(const std::string& text, char open, char close) {
  std::string t = text;
  auto first = t.find_first_not_of(" \t\n");
  auto last = t.find_last_not_of(" \t\n");
  if (first == std::string::npos || t[first] != open || t[last] != close)
    fail(ErrorKind::SyntaxError, std::string("expected ") + open + "..." + close + " literal, got \"" + text + "\"");
  t = t.substr(first + 1, last - first - 1);
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : t) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ':' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace cremona
