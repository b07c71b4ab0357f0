#ifndef MCRS_SURD_HPP
#define MCRS_SURD_HPP

#include <string>

#include "mcrs/dyadic.hpp"
#include "mcrs/rational.hpp"

namespace mcrs {

// Exact quadratic surd (p + q*sqrt(d)) / r with r > 0, gcd(p,q,r) = 1 and d
// squarefree (d = 0 marks a plain rational, q = 0). All comparisons within one
// field, and against rationals, are decided exactly.
class QuadraticSurd {
public:
  QuadraticSurd() = default;
  QuadraticSurd(const Rational& x);
  QuadraticSurd(Int p, Int q, Int r, Int d);

  static QuadraticSurd sqrt_of(const Int& d) { return QuadraticSurd(0, 1, 1, d); }
  static QuadraticSurd sqrt_of(const Rational& x);  // sqrt of a nonneg rational

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& r() const { return r_; }
  const Int& d() const { return d_; }

  bool is_rational() const { return q_ == 0; }
  Rational to_rational() const;  // requires is_rational()
  int sign() const;
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QuadraticSurd conjugate() const { return QuadraticSurd(p_, -q_, r_, d_); }

  friend QuadraticSurd operator-(const QuadraticSurd& a) {
    return QuadraticSurd(-a.p_, -a.q_, a.r_, a.d_);
  }
  friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b);

  QuadraticSurd abs() const { return sign() < 0 ? -*this : *this; }

  // Exact trichotomy; throws "incomparable surd fields" on mixed nonzero d.
  static int cmp(const QuadraticSurd& a, const QuadraticSurd& b);
  int cmp(const Rational& x) const { return cmp(*this, QuadraticSurd(x)); }
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && (a.q_ == 0 || a.d_ == b.d_);
  }

  Int floor() const;
  DyadicInterval enclose(long bits) const;
  double to_double() const;

  std::string to_string() const;

private:
  void normalize();

  Int p_{0}, q_{0}, r_{1}, d_{0};
};

// Extract the largest detectable square factor: x = s^2 * f.  Trial division
// up to a fixed bound plus a final perfect-square check; for the inputs this
// artifact meets (small discriminants) f is genuinely squarefree.
void squarefree_split(const Int& x, Int& square_root_part, Int& free_part);

}  // namespace mcrs

#endif
