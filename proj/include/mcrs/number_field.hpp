#ifndef MCRS_NUMBER_FIELD_HPP
#define MCRS_NUMBER_FIELD_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mcrs/dyadic.hpp"
#include "mcrs/rational.hpp"

namespace mcrs {

// Dense univariate polynomial over Q, coefficients low to high.
using QPoly = std::vector<Rational>;

QPoly qpoly_trim(QPoly p);
QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_rem(QPoly a, const QPoly& b);
QPoly qpoly_derivative(const QPoly& p);
Rational qpoly_eval(const QPoly& p, const Rational& x);
int qpoly_degree(const QPoly& p);  // -1 for zero polynomial
// Number of distinct real roots in (lo, hi] via a Sturm chain.
int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi);

// A real root of an irreducible integer polynomial, shared by all elements of
// the field Q(xi). The isolating interval refines on demand; endpoints stay
// dyadic so refinement is deterministic and re-runnable.
class NumberField {
public:
  // All real roots of p, ascending, each wrapped in its own field object
  // (same polynomial, different isolating interval).
  static std::vector<std::shared_ptr<const NumberField>> real_roots(
      const std::vector<Int>& int_poly);

  const QPoly& poly() const { return poly_; }           // monic over Q
  const std::vector<Int>& int_poly() const { return ipoly_; }
  int degree() const { return qpoly_degree(poly_); }

  // Current isolating interval refined until its width is <= 2^-bits.
  DyadicInterval enclose(long bits) const;

  std::string describe() const;

private:
  NumberField() = default;

  QPoly poly_;
  std::vector<Int> ipoly_;
  mutable Rational lo_, hi_;  // dyadic-valued isolating bounds, p(lo)*p(hi) < 0
  mutable std::mutex mu_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q(xi): polynomial in xi of degree < deg(field).  Arithmetic is
// exact; sign() decides by refining the root interval, with the exact zero
// test "all coefficients vanish" (valid since the polynomial is irreducible).
class NFElem {
public:
  NFElem() = default;
  NFElem(FieldPtr field, QPoly coeffs);
  static NFElem from_rational(FieldPtr field, const Rational& x);
  static NFElem generator(FieldPtr field);  // xi itself

  const FieldPtr& field() const { return field_; }
  const QPoly& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational to_rational() const;  // requires is_rational()

  friend NFElem operator-(const NFElem& a);
  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  NFElem inverse() const;

  int sign() const;
  NFElem abs() const { return sign() < 0 ? -*this : *this; }
  friend bool operator==(const NFElem& a, const NFElem& b) { return (a - b).is_zero(); }
  static int cmp(const NFElem& a, const NFElem& b) { return (a - b).sign(); }

  DyadicInterval enclose(long bits) const;
  double to_double() const { return enclose(60).midpoint().to_double(); }
  std::string to_string() const;

private:
  static void require_same_field(const NFElem& a, const NFElem& b);

  FieldPtr field_;
  QPoly c_;
};

}  // namespace mcrs

#endif
