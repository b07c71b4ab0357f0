#ifndef MCRS_REAL_HPP
#define MCRS_REAL_HPP

#include <string>
#include <variant>

#include "mcrs/ball.hpp"
#include "mcrs/number_field.hpp"
#include "mcrs/rational.hpp"
#include "mcrs/surd.hpp"

namespace mcrs {

// One real number, kept in the cheapest tier that can represent it exactly:
// rational, quadratic surd, cubic-field element, or (when exact tiers cannot
// mix) a certified computable real. Arithmetic stays exact whenever the two
// operands live in a common exact tier and otherwise falls back to intervals,
// so equality tests on exact values are always decidable.
class Real {
public:
  Real() : v_(Rational(0)) {}
  Real(long x) : v_(Rational(x)) {}
  Real(Rational x) : v_(std::move(x)) {}
  Real(Int x) : v_(Rational(std::move(x))) {}
  Real(QuadraticSurd x);
  Real(NFElem x);
  Real(BallReal x) : v_(std::move(x)) {}

  bool is_exact() const { return !std::holds_alternative<BallReal>(v_); }
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& as_rational() const;  // requires is_rational()
  bool is_surd() const { return std::holds_alternative<QuadraticSurd>(v_); }
  const QuadraticSurd& as_surd() const;
  bool is_field_elem() const { return std::holds_alternative<NFElem>(v_); }
  const NFElem& as_field_elem() const;

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  Real sqrt() const;
  Real abs() const;

  // Exact on exact tiers; on the interval tier decided by refinement and
  // throws a precision error if undecidable within max_bits.
  int sign(long max_bits = 1L << 16) const;
  static int cmp(const Real& a, const Real& b, long max_bits = 1L << 16);
  bool is_zero() const;  // exact tiers only; interval tier throws
  Int floor(long max_bits = 1L << 16) const;

  BallReal to_ball() const;
  DyadicInterval enclose(long bits) const { return to_ball().enclose(bits); }
  double to_double() const;
  std::string to_string() const;

  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }

private:
  std::variant<Rational, QuadraticSurd, NFElem, BallReal> v_;
};

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im.is_exact() ? im.is_zero() : false; }
  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }

  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.norm2();
    Complex num = a * b.conj();
    return {num.re / n, num.im / n};
  }

  std::string to_string() const;
};

}  // namespace mcrs

#endif
