#ifndef MCRS_GAUSSIAN_HPP
#define MCRS_GAUSSIAN_HPP

#include <string>
#include <vector>

#include "mcrs/rational.hpp"

namespace mcrs {

// Gaussian integer re + im*i with exact arithmetic.
struct GaussianInt {
  Int re{0}, im{0};

  GaussianInt() = default;
  GaussianInt(long r, long i = 0) : re(r), im(i) {}
  GaussianInt(Int r, Int i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const { return norm2() == 1; }
  Int norm2() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }

  friend GaussianInt operator-(const GaussianInt& a) { return {-a.re, -a.im}; }
  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string to_string() const;
};

// Nearest-lattice-point quotient: |a - q*b| < |b| for b != 0.
GaussianInt gaussian_div_round(const GaussianInt& a, const GaussianInt& b);

// A gcd by the rounded Euclidean algorithm; unique only up to a unit.
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);

// The unique associate u*z (u in {1,i,-1,-i}) with re > 0, im >= 0 -- i.e.
// argument in [0, pi/2). Zero maps to zero.
GaussianInt gaussian_canonical_associate(const GaussianInt& z);

// Divide out the gcd of all coordinates, then rotate by the unit that puts
// the first nonzero coordinate's argument in [0, pi/2). Idempotent, and
// invariant under multiplying the input by any Gaussian scalar.
std::vector<GaussianInt> gaussian_primitive(std::vector<GaussianInt> v);

}  // namespace mcrs

#endif
