#include "mcrs/surd.hpp"

#include "mcrs/error.hpp"

namespace mcrs {

void squarefree_split(const Int& x, Int& square_root_part, Int& free_part) {
  Int n = int_abs(x);
  square_root_part = 1;
  if (n == 0) {
    free_part = 0;
    return;
  }
  for (Int f = 2; f * f <= n && f < 65536; ++f) {
    Int ff = f * f;
    while (n % ff == 0) {
      n /= ff;
      square_root_part *= f;
    }
  }
  Int root;
  if (is_perfect_square(n, &root)) {
    square_root_part *= root;
    n = 1;
  }
  free_part = (x < 0) ? Int(-n) : n;
}

QuadraticSurd::QuadraticSurd(const Rational& x) : p_(x.get_num()), q_(0), r_(x.get_den()), d_(0) {}

QuadraticSurd::QuadraticSurd(Int p, Int q, Int r, Int d)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
  if (r_ == 0) fail(errc::domain, "surd with zero denominator");
  if (q_ != 0 && d_ <= 0) fail(errc::domain, "surd discriminant must be positive");
  normalize();
}

QuadraticSurd QuadraticSurd::sqrt_of(const Rational& x) {
  if (x < 0) fail(errc::domain, "sqrt of negative rational");
  if (x == 0) return QuadraticSurd(Rational(0));
  // sqrt(a/b) = sqrt(a*b)/b
  Int ab = x.get_num() * x.get_den();
  Int s, f;
  squarefree_split(ab, s, f);
  if (f == 1 || f == 0) return QuadraticSurd(make_rat(s, x.get_den()));
  return QuadraticSurd(0, s, x.get_den(), f);
}

void QuadraticSurd::normalize() {
  if (r_ < 0) {
    r_ = -r_;
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ != 0) {
    Int s, f;
    squarefree_split(d_, s, f);
    q_ *= s;
    d_ = f;
    if (d_ == 1) {  // collapsed to a rational
      p_ += q_;
      q_ = 0;
      d_ = 0;
    }
  }
  if (q_ == 0) d_ = 0;
  Int g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

Rational QuadraticSurd::to_rational() const {
  if (q_ != 0) fail(errc::domain, "surd is irrational");
  return Rational(p_, r_);
}

int QuadraticSurd::sign() const {
  if (q_ == 0) return sgn(p_);
  if (p_ == 0) return sgn(q_);
  int sp = sgn(p_), sq = sgn(q_);
  if (sp == sq) return sp;
  // compare p^2 against q^2 d; sign of the dominant term wins
  int big = (p_ * p_ > q_ * q_ * d_) ? sp : sq;
  if (p_ * p_ == q_ * q_ * d_) return 0;  // cannot happen with d squarefree > 1
  return big;
}

static void require_same_field(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.q() != 0 && b.q() != 0 && a.d() != b.d())
    fail(errc::domain, "incomparable surd fields");
}

QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
  require_same_field(a, b);
  Int d = (a.q() != 0) ? a.d() : b.d();
  return QuadraticSurd(a.p() * b.r() + b.p() * a.r(), a.q() * b.r() + b.q() * a.r(),
                       a.r() * b.r(), d);
}

QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }

QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
  require_same_field(a, b);
  Int d = (a.q() != 0) ? a.d() : b.d();
  return QuadraticSurd(a.p() * b.p() + a.q() * b.q() * d, a.p() * b.q() + a.q() * b.p(),
                       a.r() * b.r(), d);
}

QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) {
  require_same_field(a, b);
  if (b.is_zero()) fail(errc::domain, "surd division by zero");
  // multiply by the conjugate of b: (p - q sqrt d) * r / (p^2 - q^2 d)
  Int norm = b.p() * b.p() - b.q() * b.q() * b.d();
  QuadraticSurd conj(b.p() * b.r(), -b.q() * b.r(), norm, b.d() == 0 ? a.d() : b.d());
  return a * conj;
}

int QuadraticSurd::cmp(const QuadraticSurd& a, const QuadraticSurd& b) {
  return (a - b).sign();
}

Int QuadraticSurd::floor() const {
  if (q_ == 0) return floor_div(p_, r_);
  // floor((p + q sqrt d)/r): bracket q*sqrt(d) between integers, then correct.
  Int qq = q_ * q_ * d_;
  Int s;
  mpz_sqrt(s.get_mpz_t(), qq.get_mpz_t());  // s = floor(sqrt(q^2 d))
  Int t = (q_ > 0) ? s : Int(-s - 1);       // t <= q sqrt d < t+1
  Int k = floor_div(p_ + t, r_);
  // correct by exact comparison (at most a couple of steps)
  while (cmp(*this, QuadraticSurd(Rational(k + 1))) >= 0) ++k;
  while (cmp(*this, QuadraticSurd(Rational(k))) < 0) --k;
  return k;
}

DyadicInterval QuadraticSurd::enclose(long bits) const {
  if (q_ == 0) return DyadicInterval::enclose(Rational(p_, r_), bits);
  // The sqrt error is amplified by |q|/r, so start with enough working
  // precision for the coefficient sizes and refine until the width target
  // (with margin for the final outward rounding) is met.
  long amp = static_cast<long>(mpz_sizeinbase(q_.get_mpz_t(), 2));
  for (long work = bits + 8 + amp;; work *= 2) {
    DyadicInterval root = DyadicInterval::point(Dyadic(d_)).sqrt(work);
    DyadicInterval v = (DyadicInterval::point(Dyadic(p_)) +
                        DyadicInterval::point(Dyadic(q_)) * root) *
                       DyadicInterval::enclose(Rational(1, r_), work);
    if (v.width() <= Dyadic::pow2(-bits - 2)) return v.rounded_out(bits + 2);
    if (work > (1L << 26)) fail(errc::precision, "surd enclosure did not converge");
  }
}

double QuadraticSurd::to_double() const { return enclose(60).midpoint().to_double(); }

std::string QuadraticSurd::to_string() const {
  if (q_ == 0) return rat_to_string(Rational(p_, r_));
  std::string s = "(" + p_.get_str();
  s += (q_ >= 0 ? "+" : "-") + int_abs(q_).get_str() + "*sqrt(" + d_.get_str() + "))";
  if (r_ != 1) s += "/" + r_.get_str();
  return s;
}

}  // namespace mcrs
