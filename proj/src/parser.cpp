#include "geoquant/parser.hpp"

#include <cctype>
#include <string>

#include "geoquant/error.hpp"

namespace geoquant {
namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  Polynomial parse() {
    Polynomial result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
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

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      std::string digits;
      while (pos_ < text_.size() && is_digit(text_[pos_])) digits += text_[pos_++];
      if (digits.empty() || (pos_ < text_.size() && (text_[pos_] == '.' || is_alpha(text_[pos_])))) {
        fail_at("exponent is not a non-negative integer literal", start);
      }
      if (digits.size() > 9) fail_at("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_digit(c) || c == '.') return Polynomial::constant(dim_, number());
    if (is_alpha(c)) return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string digits() {
    std::string out;
    while (pos_ < text_.size() && is_digit(text_[pos_])) out += text_[pos_++];
    return out;
  }

  Rational number() {
    const std::size_t start = pos_;
    std::string whole = digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::string den = digits();
      if (whole.empty() || den.empty()) fail_at("malformed rational literal", start);
      Rational r{mpz_class(whole, 10), mpz_class(den, 10)};
      if (sgn(r.get_den()) == 0) fail_at("zero denominator", start);
      r.canonicalize();
      return r;
    }
    std::string frac;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      frac = digits();
    }
    if (whole.empty() && frac.empty()) fail_at("malformed number", start);
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) negative = text_[pos_++] == '-';
      std::string exp_digits = digits();
      if (exp_digits.empty() || exp_digits.size() > 6) fail_at("malformed exponent in number", start);
      exponent = std::stol(exp_digits) * (negative ? -1 : 1);
    }
    if (pos_ < text_.size() && (is_alpha(text_[pos_]) || text_[pos_] == '.')) {
      fail_at("malformed number", start);
    }
    mpz_class mantissa(whole.empty() && frac.empty() ? "0" : whole + frac, 10);
    exponent -= static_cast<long>(frac.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    r.canonicalize();
    return r;
  }

  Polynomial variable() {
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) name += text_[pos_++];
    if (name == "t") return Polynomial::variable(dim_, Variable::t());
    if (name.size() >= 2 && (name[0] == 'q' || name[0] == 'p')) {
      const std::string idx = name.substr(1);
      bool numeric = idx.size() <= 6 && (idx == "0" || idx[0] != '0');
      for (char d : idx) numeric = numeric && is_digit(d);
      if (numeric) {
        const int k = std::stoi(idx);
        if (name[0] == 'p' && k == 0) return Polynomial::variable(dim_, Variable::p0());
        if (k >= 1 && k <= dim_) {
          return Polynomial::variable(dim_, name[0] == 'q' ? Variable::q(k) : Variable::p(k));
        }
      }
    }
    fail_at("unknown variable '" + name + "' for dim " + std::to_string(dim_), start);
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  return Parser(text, dim).parse();
}

}  // namespace geoquant
