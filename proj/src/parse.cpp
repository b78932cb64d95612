#include "acm/parse.hpp"

#include <cctype>
#include <charconv>

namespace acm::sym {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords) : src_(src), coords_(coords) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::raw_binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::raw_binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::raw_binary(Op::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::raw_binary(Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::raw_unary(Op::Neg, factor());
    Expr b = base();
    if (accept('^')) return Expr::raw_binary(Op::Pow, b, base());
    return b;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (is_digit(c) || c == '.') return number();
    if (is_ident_start(c)) return identifier();
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && is_digit(src_[q])) {
        pos_ = q;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_ws();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (call) {
      Fn fn{};
      if (!function_from_name(name, fn)) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "' used as a function");
      }
      expect('(');
      Expr arg = expr();
      expect(')');
      return Expr::raw_function(fn, arg);
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) return Expr::variable(i, coords_[i]);
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view src_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view source, const std::vector<std::string>& coords) {
  return Parser(source, coords).run();
}

}  // namespace acm::sym
