#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padelab {

using Complex = std::complex<double>;

/// Correctly rounded (round-to-nearest) conversion of a rational to double.
double to_double(const mpq_class& q);

/// Parses an exact rational literal: integers, "p/q", or decimals with an
/// optional exponent ("0.25", "-1.5e-3"). Throws ParseError otherwise.
mpq_class parse_rational(std::string_view text);

/// Canonical text form of a rational ("1/4", "-3", "0").
std::string rational_to_string(const mpq_class& q);

/// Exact complex rational number.
class QComplex {
public:
  QComplex() = default;
  QComplex(long value) : re_(value) {}  // NOLINT: implicit by intent
  QComplex(mpq_class re, mpq_class im = 0);

  /// Accepts "a", "bi", "a+bi", "a-bi" where a and b are rational literals.
  static QComplex parse(std::string_view text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// Squared modulus, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  QComplex conj() const { return {re_, -im_}; }
  Complex to_complex() const { return {to_double(re_), to_double(im_)}; }
  std::string to_string() const;

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Integer power by repeated squaring.
QComplex pow(const QComplex& base, unsigned long exponent);

/// A complex value with its exact rational form when one is known.
struct Number {
  Complex value{};
  std::optional<QComplex> exact;

  Number() = default;
  Number(Complex v) : value(v) {}  // NOLINT
  Number(double v) : value(v) {}   // NOLINT
  Number(const QComplex& q) : value(q.to_complex()), exact(q) {}  // NOLINT

  /// Rational and decimal literals parse exactly.
  static Number parse(std::string_view text) { return Number(QComplex::parse(text)); }

  bool is_exact() const { return exact.has_value(); }
};

}  // namespace padelab
