#include "mcrs/gaussian.hpp"

#include "mcrs/error.hpp"

namespace mcrs {

std::string GaussianInt::to_string() const {
  if (im == 0) return re.get_str();
  std::string s = re.get_str();
  s += (im >= 0 ? "+" : "-") + int_abs(im).get_str() + "i";
  return s;
}

static Int div_round(const Int& a, const Int& b) {
  // nearest integer to a/b, ties toward +infinity
  return floor_div(2 * a + b, 2 * b);
}

GaussianInt gaussian_div_round(const GaussianInt& a, const GaussianInt& b) {
  if (b.is_zero()) fail(errc::domain, "gaussian division by zero");
  GaussianInt num = a * b.conj();
  Int n = b.norm2();
  return {div_round(num.re, n), div_round(num.im, n)};
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b) {
  while (!b.is_zero()) {
    GaussianInt q = gaussian_div_round(a, b);
    GaussianInt r = a - q * b;
    a = b;
    b = r;
  }
  return a;
}

GaussianInt gaussian_canonical_associate(const GaussianInt& z) {
  GaussianInt w = z;
  for (int k = 0; k < 3 && !(w.re > 0 && w.im >= 0); ++k)
    w = w * GaussianInt(0, 1);
  if (!w.is_zero() && !(w.re > 0 && w.im >= 0))
    fail(errc::domain, "unreachable: unit orbit misses the first quadrant");
  return w;
}

std::vector<GaussianInt> gaussian_primitive(std::vector<GaussianInt> v) {
  GaussianInt g(0, 0);
  for (const auto& z : v) g = gaussian_gcd(g, z);
  if (g.is_zero()) return v;
  Int n = g.norm2();
  for (auto& z : v) {
    GaussianInt num = z * g.conj();
    if (num.re % n != 0 || num.im % n != 0) fail(errc::domain, "gcd does not divide coordinate");
    z = GaussianInt(num.re / n, num.im / n);
  }
  for (const auto& z : v)
    if (!z.is_zero()) {
      // rotate every coordinate by the unit canonicalizing the first nonzero one
      GaussianInt u(1, 0), w = z;
      while (!(w.re > 0 && w.im >= 0)) {
        w = w * GaussianInt(0, 1);
        u = u * GaussianInt(0, 1);
      }
      for (auto& y : v) y = y * u;
      break;
    }
  return v;
}

}  // namespace mcrs
