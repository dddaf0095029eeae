#include "skewcert/parser.hpp"

#include "skewcert/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace skewcert {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Vars& vars) : text_(text), vars_(vars) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse error at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) +
                "': " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        acc = acc / unary();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (e > 1000000) fail("exponent too large");
    return base.pow(neg ? -int(e) : int(e));
  }

  RatFunc atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc::constant(vars_, parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_->begin(), vars_->end(), name);
      if (it == vars_->end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return RatFunc::variable(vars_, std::size_t(it - vars_->begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Vars& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const Vars& vars) { return Parser(text, vars).parse(); }

MultiPoly parse_poly(std::string_view text, const Vars& vars) {
  RatFunc r = parse_ratfunc(text, vars);
  if (!r.is_polynomial()) throw Error("expected a polynomial: '" + std::string(text) + "'");
  return r.num() * Rational(1 / r.den().constant_value());
}

}  // namespace skewcert
