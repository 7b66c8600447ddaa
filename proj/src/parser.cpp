#include "dtk/parser.hpp"

#include <cctype>
#include <string>

namespace dtk {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  RatPoly parse() {
    RatPoly result = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return result;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatPoly expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    RatPoly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatPoly term() {
    RatPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  RatPoly factor() {
    RatPoly b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      Integer e = natural();
      if (!e.fits_uint_p() || e > 10000) throw SyntaxError("exponent too large", start);
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  Integer natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError("expected a natural number", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  RatPoly base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatPoly inner = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = natural();
      Integer den = 1;
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        den = natural();
        if (den == 0) throw SyntaxError("zero denominator", at);
      }
      Rat q(num, den);
      q.canonicalize();
      return RatPoly(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_.index_of(name);
      if (!idx) throw UnknownVariable(name, start);
      return RatPoly::variable(ring_, *idx);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

RatPoly parse_poly(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

Rat parse_rational(std::string_view text) {
  static const Ring empty;
  RatPoly p = parse_poly(text, empty);
  return p.constant_term();
}

}  // namespace dtk
