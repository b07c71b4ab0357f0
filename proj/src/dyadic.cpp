#include "mcrs/dyadic.hpp"

#include "mcrs/error.hpp"

namespace mcrs {

std::string rat_to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

void Dyadic::normalize() {
  if (m == 0) {
    e = 0;
    return;
  }
  unsigned long tz = mpz_scan1(m.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), tz);
    e += static_cast<long>(tz);
  }
}

Rational Dyadic::to_rational() const {
  Rational r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return r;
}

double Dyadic::to_double() const { return to_rational().get_d(); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.m == 0) return b;
  if (b.m == 0) return a;
  long e = std::min(a.e, b.e);
  Int am = a.m << static_cast<unsigned long>(a.e - e);
  Int bm = b.m << static_cast<unsigned long>(b.e - e);
  return Dyadic(am + bm, e);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) { return (a - b).sign(); }

Dyadic Dyadic::round_down(long bits) const {
  if (e >= -bits) return *this;
  unsigned long shift = static_cast<unsigned long>(-bits - e);
  Int q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), shift);
  return Dyadic(q, -bits);
}

Dyadic Dyadic::round_up(long bits) const {
  if (e >= -bits) return *this;
  unsigned long shift = static_cast<unsigned long>(-bits - e);
  Int q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), shift);
  return Dyadic(q, -bits);
}

std::string Dyadic::to_string() const {
  if (e == 0) return m.get_str();
  return m.get_str() + "*2^" + std::to_string(e);
}

Dyadic DyadicInterval::midpoint() const {
  Dyadic s = lo + hi;
  return Dyadic(s.m, s.e - 1);
}

Dyadic DyadicInterval::radius() const {
  Dyadic w = width();
  if (w.sign() < 0) fail(errc::precision, "inverted dyadic interval");
  return Dyadic(w.m, w.e - 1);
}

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  Dyadic c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Dyadic lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < lo) lo = c[i];
    if (hi < c[i]) hi = c[i];
  }
  return {lo, hi};
}

DyadicInterval DyadicInterval::enclose(const Rational& x, long bits) {
  // floor(x * 2^bits) / 2^bits and the ceiling variant
  Rational s = x;
  mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(bits));
  return {Dyadic(rat_floor(s), -bits), Dyadic(rat_ceil(s), -bits)};
}

DyadicInterval DyadicInterval::inverse(long bits) const {
  if (contains_zero()) fail(errc::precision, "interval inverse across zero");
  Rational a(1);
  Rational l = a / hi.to_rational();
  Rational h = a / lo.to_rational();
  DyadicInterval li = enclose(l, bits), hi2 = enclose(h, bits);
  return {li.lo, hi2.hi};
}

DyadicInterval DyadicInterval::sqrt(long bits) const {
  if (lo.sign() < 0) fail(errc::domain, "sqrt of negative interval");
  // isqrt of scaled numerators gives directed roundings
  auto root_down = [&](const Dyadic& d) {
    Rational r = d.to_rational();
    // floor(sqrt(r) * 2^bits) = floor(sqrt(r * 2^{2bits}))
    Int num = r.get_num() << static_cast<unsigned long>(2 * bits);
    Int q = floor_div(num, r.get_den());
    Int s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    return Dyadic(s, -bits);
  };
  Dyadic l = root_down(lo);
  Dyadic h = root_down(hi) + Dyadic::pow2(-bits);
  return {l, h};
}

DyadicInterval DyadicInterval::abs() const {
  if (lo.sign() >= 0) return *this;
  if (hi.sign() <= 0) return -*this;
  Dyadic h = (-lo < hi) ? hi : -lo;
  return {Dyadic(), h};
}

}  // namespace mcrs
