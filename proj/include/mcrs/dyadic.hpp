#ifndef MCRS_DYADIC_HPP
#define MCRS_DYADIC_HPP

#include <string>

#include "mcrs/rational.hpp"

namespace mcrs {

// Dyadic rational m * 2^e. Addition and multiplication are exact, which keeps
// ball-real refinement re-runnable: no hidden rounding anywhere.
struct Dyadic {
  Int m{0};
  long e{0};

  Dyadic() = default;
  Dyadic(long v) : m(v), e(0) {}
  Dyadic(Int v, long ex = 0) : m(std::move(v)), e(ex) { normalize(); }

  void normalize();

  Rational to_rational() const;
  double to_double() const;
  bool is_zero() const { return m == 0; }
  int sign() const { return sgn(m); }

  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.m, a.e); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.m * b.m, a.e + b.e); }

  static int cmp(const Dyadic& a, const Dyadic& b);
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }

  // Round toward -inf / +inf to a value with at most `bits` fractional bits.
  Dyadic round_down(long bits) const;
  Dyadic round_up(long bits) const;

  // 2^-bits as a dyadic.
  static Dyadic pow2(long e2) { return Dyadic(Int(1), e2); }

  std::string to_string() const;
};

// Closed interval [lo, hi] with dyadic endpoints; the standard certified
// enclosure used by BallReal.
struct DyadicInterval {
  Dyadic lo, hi;

  DyadicInterval() = default;
  DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}
  static DyadicInterval point(Dyadic v) { return DyadicInterval(v, v); }

  Dyadic width() const { return hi - lo; }
  Dyadic midpoint() const;  // (lo+hi)/2, exact in dyadics
  Dyadic radius() const;    // ceil of (hi-lo)/2 so [mid-rad, mid+rad] covers

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  // -1 / +1 when the sign is decided, 0 when the interval straddles zero.
  int sign() const { return lo.sign() > 0 ? 1 : (hi.sign() < 0 ? -1 : 0); }

  friend DyadicInterval operator-(const DyadicInterval& a) { return {-a.hi, -a.lo}; }
  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
    return a + (-b);
  }
  friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);

  // Outward-rounded to `bits` fractional bits (division and roots are the only
  // inexact steps in a refinement).
  DyadicInterval inverse(long bits) const;  // throws if contains zero
  DyadicInterval sqrt(long bits) const;     // requires lo >= 0
  DyadicInterval abs() const;

  // Enclose a rational with at most `bits` fractional bits of slack.
  static DyadicInterval enclose(const Rational& x, long bits);

  // Shrink endpoint representations without changing the enclosure guarantee.
  DyadicInterval rounded_out(long bits) const { return {lo.round_down(bits), hi.round_up(bits)}; }
};

}  // namespace mcrs

#endif
