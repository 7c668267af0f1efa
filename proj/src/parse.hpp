#pragma once

// Small cursor over element text shared by the polynomial and derivation
// parsers.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "cartanlie/dpalgebra.hpp"
#include "cartanlie/errors.hpp"
#include "cartanlie/field.hpp"

namespace cartanlie::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_at(std::size_t ahead) {
    skip_ws();
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  std::uint64_t integer() {
    if (!at_digit()) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  /// Integer residue or a bracketed t-polynomial such as [2*t^2+t+3].
  Scalar scalar(const Field& F) {
    if (accept('[')) {
      Scalar acc = F.zero();
      bool negative = accept('-');
      for (;;) {
        Scalar c = F.one();
        bool have_c = false;
        if (at_digit()) {
          c = F.from_int(static_cast<std::int64_t>(integer() % F.characteristic()));
          have_c = true;
          accept('*');
        }
        unsigned e = 0;
        if (accept('t')) {
          e = 1;
          if (accept('^')) e = static_cast<unsigned>(integer());
        } else if (!have_c) {
          fail("expected a coefficient or t");
        }
        if (e > 0 && F.degree() == 1) fail("t is not defined in a prime field");
        Scalar term = F.mul(c, F.pow(F.generator(), e));
        acc = negative ? F.sub(acc, term) : F.add(acc, term);
        if (accept('+')) {
          negative = false;
        } else if (accept('-')) {
          negative = true;
        } else {
          break;
        }
      }
      expect(']');
      return acc;
    }
    return F.from_int(static_cast<std::int64_t>(integer() % F.characteristic()));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// One polynomial term after any sign: scalar, monomial, or scalar*monomial.
DPoly parse_term(Cursor& cur, const Shape& shape);
/// Signed sum of terms; stops at the first character that cannot continue it.
DPoly parse_poly(Cursor& cur, const Shape& shape);

}  // namespace cartanlie::detail
