#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace mqsym {

using Rational = mpq_class;

/// Parses `12`, `-3`, `1.25`, `3/4` or `-0.5e-3` into an exact rational.
/// Throws Error(ParseError) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double, then reduced to the shortest decimal
/// that round-trips (so 0.1 becomes 1/10 rather than its binary expansion).
Rational rational_from_double(double value);

/// `p` or `p/q` with the sign on the numerator.
std::string to_string(const Rational& value);

/// Complex number with exact rational parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational real) : re(std::move(real)) { re.canonicalize(); }  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {
    re.canonicalize();
    im.canonicalize();
  }
  ComplexRational(int real) : re(real) {}  // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ComplexRational conj() const { return parts(re, -im); }
  ComplexRational operator-() const { return parts(-re, -im); }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    if (b.is_real()) return parts(a.re * b.re, a.im * b.re);
    if (a.is_real()) return parts(a.re * b.re, a.re * b.im);
    return parts(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

 private:
  // GMP arithmetic on canonical operands is already canonical.
  static ComplexRational parts(Rational real, Rational imag) {
    ComplexRational out;
    out.re = std::move(real);
    out.im = std::move(imag);
    return out;
  }
};

/// Renders a coefficient in DSL-literal form: `3/4`, `2i`, `(1/2-3i)`.
/// Negative reals keep a leading minus.
std::string to_string(const ComplexRational& value);

}  // namespace mqsym
