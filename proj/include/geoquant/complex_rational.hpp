#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <gmpxx.h>

namespace geoquant {

using Rational = mpq_class;

/// Nearest double. mpq_get_d truncates toward zero (1/1000 lands one ulp low).
inline double to_double(const Rational& r) {
  const double d = r.get_d();
  if (!std::isfinite(d)) return d;
  double best = d;
  mpq_class best_err = abs(Rational(d) - r);
  for (double c : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
    const mpq_class err = abs(Rational(c) - r);
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

/// Exact element of Q[i]. Always kept canonical (GMP canonicalizes each part).
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  ComplexRational(long value) : re_(value), im_(0) {}  // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ComplexRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parseable text for a rational: "3", "-3/4".
std::string to_string(const Rational& r);
/// "3/4", "-2*I", "(1/2 + 3*I)"; display form, not part of the expression grammar.
std::string to_string(const ComplexRational& c);

}  // namespace geoquant
