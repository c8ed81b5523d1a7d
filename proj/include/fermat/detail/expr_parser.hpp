#pragma once

// Recursive-descent parser for the shared text grammar of scalars and
// polynomials:
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := unary { '*' unary }
//   unary   := '-' unary | power
//   power   := primary [ '^' ['-'] digits ]
//   primary := digits ['/' digits] | 'e' | 'x' digits | '(' expr ')'
//
// Negative exponents are only accepted on 'e'. Evaluation is delegated to an
// Algebra object so the same grammar yields field scalars or polynomials.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fermat/error.hpp"

namespace fermat::detail {

template <class Algebra>
class ExprParser {
 public:
  using Value = typename Algebra::Value;

  ExprParser(const Algebra& algebra, std::string_view text) : alg_(algebra), text_(text) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  const Algebra& alg_;
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Value expr() {
    Value v;
    if (accept('-')) {
      v = alg_.neg(term());
    } else {
      accept('+');
      v = term();
    }
    for (;;) {
      if (accept('+')) {
        v = alg_.add(v, term());
      } else if (accept('-')) {
        v = alg_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    while (accept('*')) v = alg_.mul(v, unary());
    return v;
  }

  Value unary() {
    if (accept('-')) return alg_.neg(unary());
    return power();
  }

  long exponent(bool allow_negative) {
    bool negative = false;
    if (accept('-')) {
      if (!allow_negative) fail("negative exponent");
      negative = true;
    }
    std::string d = digits();
    if (d.size() > 9) fail("exponent too large");
    long e = std::stol(d);
    return negative ? -e : e;
  }

  Value power() {
    char c = peek();
    if (c == 'e') {
      ++pos_;
      long k = accept('^') ? exponent(true) : 1;
      return alg_.eps_pow(k);
    }
    Value base = primary();
    if (accept('^')) return alg_.pow(base, static_cast<unsigned>(exponent(false)));
    return base;
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'x') {
      ++pos_;
      std::string d = digits();
      if (d.size() > 4) fail("variable index too large");
      return alg_.variable(static_cast<std::size_t>(std::stoul(d)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den = 1;
      if (accept('/')) {
        den = mpz_class(digits());
        if (den == 0) fail("zero denominator");
      }
      mpq_class q(num, den);
      q.canonicalize();
      return alg_.number(q);
    }
    fail("unexpected character");
  }
};

}  // namespace fermat::detail
