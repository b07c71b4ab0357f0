#ifndef MCRS_BALL_HPP
#define MCRS_BALL_HPP

#include <memory>
#include <mutex>
#include <string>

#include "mcrs/dyadic.hpp"
#include "mcrs/number_field.hpp"
#include "mcrs/rational.hpp"
#include "mcrs/surd.hpp"

namespace mcrs {

namespace detail {
struct BallNode;
}

// Computable real: a shared expression DAG whose nodes refine on demand to any
// requested precision. enclose(bits) always returns an interval of width at
// most 2^-bits; refinement is memoized per node and deterministic, so repeated
// queries (and queries from several threads) agree bit for bit.
class BallReal {
public:
  BallReal();  // zero
  BallReal(const Rational& x);
  BallReal(long x) : BallReal(Rational(x)) {}
  explicit BallReal(const QuadraticSurd& x);
  explicit BallReal(const NFElem& x);

  friend BallReal operator-(const BallReal& a);
  friend BallReal operator+(const BallReal& a, const BallReal& b);
  friend BallReal operator-(const BallReal& a, const BallReal& b);
  friend BallReal operator*(const BallReal& a, const BallReal& b);
  friend BallReal operator/(const BallReal& a, const BallReal& b);  // refines b away from 0
  BallReal sqrt() const;                                            // refines argument to >= 0 side
  BallReal abs() const;

  DyadicInterval enclose(long bits) const;

  // Sign decided by refinement; an exact zero cannot be certified here, so the
  // caller bounds the effort. Throws a precision error past max_bits.
  int sign(long max_bits = 1L << 16) const;
  static int cmp(const BallReal& a, const BallReal& b, long max_bits = 1L << 16);
  Int floor(long max_bits = 1L << 16) const;

  double to_double() const;
  std::string to_string() const;  // decimal midpoint tagged with a radius

private:
  explicit BallReal(std::shared_ptr<const detail::BallNode> n) : node_(std::move(n)) {}

  std::shared_ptr<const detail::BallNode> node_;
};

}  // namespace mcrs

#endif
