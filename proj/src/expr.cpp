#include "fedq/expr.hpp"

#include <cctype>

namespace fedq {

namespace {

class Parser {
public:
  Parser(std::string_view src, const VarsPtr& vars, int cap) : src_(src), vars_(vars), cap_(cap) {}

  PolyJet run() {
    PolyJet p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PolyJet expr() {
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    PolyJet acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  PolyJet term() {
    PolyJet acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  PolyJet factor() {
    PolyJet base = atom();
    if (accept('^')) {
      skip_ws();
      unsigned long e = uint_literal();
      PolyJet r = PolyJet::constant(vars_, Scalar(1), cap_);
      for (unsigned long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  unsigned long uint_literal() {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected unsigned integer");
    if (pos_ - start > 18) fail("integer literal too long");
    return std::stoul(std::string(src_.substr(start, pos_ - start)));
  }

  PolyJet atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      PolyJet inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      Rational q(std::string(src_.substr(start, pos_ - start)));
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        skip_ws();
        size_t dstart = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
        Rational d(std::string(src_.substr(dstart, pos_ - dstart)));
        if (sgn(d) == 0) fail("zero denominator");
        q /= d;
      }
      q.canonicalize();
      return PolyJet::constant(vars_, Scalar(q), cap_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      if (name == "i") return PolyJet::constant(vars_, Scalar::i(), cap_);
      for (size_t v = 0; v < vars_->size(); ++v) {
        if ((*vars_)[v] == name) return PolyJet::variable(vars_, static_cast<int>(v), cap_);
      }
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const VarsPtr& vars_;
  int cap_;
  size_t pos_ = 0;
};

}  // namespace

PolyJet parse_poly(std::string_view src, const VarsPtr& vars, int cap) {
  if (!vars) throw Error("parse_poly needs a variable list");
  for (const auto& v : *vars) {
    if (v == "i") throw Error("'i' is reserved for the imaginary unit");
  }
  return Parser(src, vars, cap).run();
}

std::string print_monomial(Mono m, const VarList& vars) {
  std::string out;
  for (size_t v = 0; v < vars.size(); ++v) {
    int e = mono::exp(m, static_cast<int>(v));
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[v];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string print_canonical(const PolyJet& p) {
  if (p.is_zero()) return "0";
  static const VarList kNoVars;
  const VarList& names = p.vars() ? *p.vars() : kNoVars;
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Scalar coef = c;
    bool negative = false;
    if (coef.is_atomic()) {
      negative = coef.is_real() ? sgn(coef.re()) < 0 : sgn(coef.im()) < 0;
      if (negative) coef = -coef;
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mon = print_monomial(m, names);
    if (mon.empty()) {
      out += coef.str();
    } else if (coef.is_one()) {
      out += mon;
    } else {
      out += coef.str() + "*" + mon;
    }
  }
  return out;
}

}  // namespace fedq
