#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "loglift/field.hpp"

namespace loglift {

inline std::string format_padic(const Padic& x) {
  const std::string p = std::to_string(x.prime());
  auto power = [&](long k) { return p + "^" + std::to_string(k); };
  if (x.is_exact()) {
    if (x.is_zero()) return "0";
    std::string den = x.denominator() == 1 ? "" : "/" + x.denominator().get_str();
    if (x.valuation() >= 0) {
      mpz_class value = x.unit() * x.context().power(x.valuation());
      return value.get_str() + den;
    }
    return power(x.valuation()) + " * (" + x.unit().get_str() + den + ")";
  }
  if (x.is_zero()) return "O(" + power(x.precision()) + ")";
  std::string body;
  std::vector<long> digits = x.unit_digits();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    std::string term = std::to_string(digits[i]);
    if (i == 1) term += "*" + p;
    if (i > 1) term += "*" + power(static_cast<long>(i));
    body += term + " + ";
  }
  body += "O(" + power(x.relative_precision()) + ")";
  if (x.valuation() == 0) return body;
  return power(x.valuation()) + " * (" + body + ")";
}

inline std::string format_element(const Element& x) {
  if (x.field().degree() == 1) return format_padic(x.coefficient(0));
  std::string out;
  char sym = x.field().generator_symbol();
  for (std::size_t k = 0; k < x.coefficients().size(); ++k) {
    const Padic& c = x.coefficient(k);
    if (c.is_exact_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_padic(c) + ")";
    if (k == 1) out += std::string("*") + sym;
    if (k > 1) out += std::string("*") + sym + "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace detail {

class LiteralParser {
 public:
  LiteralParser(const Field& F, std::string_view text) : F_(F), s_(text) {}

  Element parse() {
    Element v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Element expr() {
    skip();
    Element acc = Element::zero(F_);
    bool first = true;
    while (true) {
      bool negate = false;
      if (accept('-')) {
        negate = true;
      } else if (!accept('+') && !first) {
        break;
      }
      Element t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Element term() {
    Element acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        acc = acc / unary();
      } else {
        break;
      }
    }
    return acc;
  }

  Element unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Element power() {
    Element base = atom();
    if (accept('^')) {
      bool neg = false;
      if (accept('-')) neg = true;
      else accept('+');
      mpz_class e = integer();
      if (!e.fits_slong_p()) fail("exponent out of range");
      long k = e.get_si();
      base = base.pow(neg ? -k : k);
    }
    return base;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Element atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Element::integer(F_, integer());
    if (c == '(') {
      ++pos_;
      Element v = expr();
      expect(')');
      return v;
    }
    if (c == 'O') {
      ++pos_;
      expect('(');
      Element bound = expr();
      expect(')');
      if (!bound.is_exact() || bound.is_zero()) fail("big-O bound must be an exact non-zero value");
      return Element::inexact_zero(F_, bound.valuation());
    }
    if (c == 'w' || c == 's') {
      ++pos_;
      if (F_.degree() < 2 || F_.generator_symbol() != c)
        fail(std::string("symbol '") + c + "' is not the generator of this field");
      return Element::generator(F_);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const Field& F_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses an arithmetic expression in integers, powers, O(...) terms and the
// field generator ('w' for unramified, 's' for the square root of p).
inline Element parse_element(const Field& F, std::string_view text) { return detail::LiteralParser(F, text).parse(); }

inline Padic parse_padic(const PadicContext& ctx, std::string_view text) {
  return parse_element(Field::get(ctx.prime(), ctx.cap()), text).coefficient(0);
}

}  // namespace loglift
