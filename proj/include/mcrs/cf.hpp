#ifndef MCRS_CF_HPP
#define MCRS_CF_HPP

#include <string>
#include <vector>

#include "mcrs/real.hpp"

namespace mcrs {

// Continued fraction [a0; a1, a2, ...], a_i >= 1 for i >= 1. Finite
// expansions are canonical (last term >= 2 when there is more than one).
// Periodic expansions store preperiod followed by one period. Streamed
// expansions are a certified prefix of an infinite expansion.
struct ContinuedFraction {
  enum class Kind { finite, periodic, streamed };

  Kind kind = Kind::finite;
  std::vector<Int> terms;
  size_t preperiod = 0;  // periodic only: terms[preperiod..] repeat forever

  size_t period_length() const { return terms.size() - preperiod; }
  std::string to_string() const;
};

struct Convergent {
  Int m;  // numerator
  Int n;  // denominator > 0
  long index = 0;

  Rational value() const { return make_rat(m, n); }
  friend bool operator==(const Convergent& a, const Convergent& b) {
    return a.m == b.m && a.n == b.n;
  }
};

// Expansion of any arithmetic tier. Rationals give finite canonical
// expansions; irrational quadratic surds detect their period exactly;
// everything else streams up to max_terms digits, each certified before it is
// emitted ("undecidable digit" if the interval tier runs out of precision).
ContinuedFraction cf_expand(const Real& x, long max_terms = 64);

// Exact value of a finite expansion.
Rational cf_value(const std::vector<Int>& terms);

// Convergents m_k/n_k of the expansion prefix.
std::vector<Convergent> convergents(const ContinuedFraction& cf);

// Minimizer of |x - m/n| over |m| <= N, |n| <= N, n >= 1 (semiconvergents
// included), plus the first better fraction outside the box (equal to best
// when x itself is representable in the box).
struct BoxApprox {
  Convergent best;
  Convergent next;
  bool exact = false;  // best equals x
};
BoxApprox best_dioph_in_box(const Real& x, const Int& N);

// Fraction of smallest denominator (and, within the interval, smallest
// numerator magnitude) strictly inside the open interval (lo, hi).
Rational simplest_in_open_interval(const Real& lo, const Real& hi);

// The classical best-approximation denominators of an alpha in [0,1]: every
// truncation of its expansion and, for finite expansions, the variant with
// the last term decreased by one.
std::vector<Rational> classical_best_sequence(const Real& alpha, long max_terms = 64);

}  // namespace mcrs

#endif
