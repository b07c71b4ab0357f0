#ifndef MCRS_RATIONAL_HPP
#define MCRS_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace mcrs {

// Arbitrary-size integers and rationals. mpq_class keeps gcd(num,den)=1 and
// den>0 on canonicalization, which is exactly the BigRational contract.
using Int = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not reduce; this does.
inline Rational make_rat(const Int& n, const Int& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }

inline Int rat_ceil(const Rational& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Nearest integer, ties toward +infinity (deterministic; ties never matter to
// callers, which compare both neighbors exactly).
inline Int rat_round(const Rational& x) { return rat_floor(x + Rational(1, 2)); }

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int int_pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_perfect_square(const Int& x, Int* root = nullptr) {
  if (x < 0) return false;
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  bool ok = (r * r == x);
  if (ok && root) *root = r;
  return ok;
}

std::string rat_to_string(const Rational& x);

}  // namespace mcrs

#endif
