#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcrs/ball.hpp"
#include "mcrs/error.hpp"
#include "mcrs/gaussian.hpp"
#include "mcrs/number_field.hpp"
#include "mcrs/real.hpp"
#include "mcrs/surd.hpp"

using namespace mcrs;

static bool interval_inside(const DyadicInterval& v, const Rational& lo, const Rational& hi) {
  return lo <= v.lo.to_rational() && v.hi.to_rational() <= hi;
}

TEST_CASE("dyadic arithmetic is exact") {
  Dyadic a(Int(3), -2);   // 0.75
  Dyadic b(Int(5), -4);   // 0.3125
  CHECK((a + b).to_rational() == Rational(17, 16));
  CHECK((a * b).to_rational() == Rational(15, 64));
  CHECK((a - b).to_rational() == Rational(7, 16));
  CHECK(Dyadic::cmp(a, b) > 0);
  CHECK(a.round_down(1).to_rational() == Rational(1, 2));
  CHECK(a.round_up(1).to_rational() == Rational(1));
}

TEST_CASE("interval sqrt and inverse are outward-rounded") {
  auto two = DyadicInterval::point(Dyadic(2));
  auto r = two.sqrt(64);
  CHECK(r.lo.to_rational() * r.lo.to_rational() <= 2);
  CHECK(2 <= r.hi.to_rational() * r.hi.to_rational());
  CHECK(r.width() <= Dyadic(Int(1), -60));
  auto inv = r.inverse(64);
  CHECK(inv.lo.to_rational() * r.hi.to_rational() <= 1);
  CHECK(1 <= inv.hi.to_rational() * r.hi.to_rational());
}

TEST_CASE("surd comparisons are exact") {
  QuadraticSurd golden(1, 1, 2, 5);  // (1+sqrt5)/2
  CHECK(golden.cmp(Rational(3, 2)) > 0);
  CHECK(QuadraticSurd(0, 0, 1, 5).cmp(Rational(0)) == 0);
  QuadraticSurd a(1, 1, 1, 2);  // 1+sqrt2
  CHECK(QuadraticSurd::cmp(a, QuadraticSurd(Rational(3, 2))) > 0);
  // 64-digit-grade check of the same comparison through the interval layer
  auto av = a.enclose(240), bv = DyadicInterval::enclose(Rational(3, 2), 240);
  CHECK(bv.hi < av.lo);
  // mixed fields refuse to compare
  CHECK_THROWS_AS((void)QuadraticSurd::cmp(a, golden), Error);
}

TEST_CASE("surd arithmetic, floor, conjugate") {
  QuadraticSurd golden(1, 1, 2, 5);
  QuadraticSurd prod = golden * golden - golden;  // golden ratio satisfies x^2 = x+1
  CHECK(prod.is_rational());
  CHECK(prod.to_rational() == 1);
  CHECK(golden.floor() == 1);
  CHECK((-golden).floor() == -2);
  QuadraticSurd inv = QuadraticSurd(Rational(1)) / golden;
  CHECK(QuadraticSurd::cmp(inv, golden - QuadraticSurd(Rational(1))) == 0);
  CHECK(QuadraticSurd::cmp(golden.conjugate(), QuadraticSurd(Rational(1)) - golden) == 0);
  // sqrt_of collapses perfect squares
  CHECK(QuadraticSurd::sqrt_of(Rational(49, 4)).to_rational() == Rational(7, 2));
  Int s, f;
  squarefree_split(Int(45), s, f);
  CHECK(s == 3);
  CHECK(f == 5);
}

TEST_CASE("order embedding of rationals into surds") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    Rational x = make_rat(num(rng), den(rng)), y = make_rat(num(rng), den(rng));
    int rc = x < y ? -1 : (x == y ? 0 : 1);
    CHECK(QuadraticSurd::cmp(QuadraticSurd(x), QuadraticSurd(y)) == rc);
  }
}

TEST_CASE("cubic field roots refine to the published decimals") {
  // x^3 - x - 1, the characteristic polynomial of the 3x3 operator B
  auto roots_b = NumberField::real_roots({-1, -1, 0, 1});
  REQUIRE(roots_b.size() == 1);
  auto v = roots_b[0]->enclose(40);
  CHECK(interval_inside(v, make_rat(13247179572, 10000000000), make_rat(13247179574, 10000000000)));

  // x^3 - 2x^2 - x + 1, characteristic polynomial of E1; three real roots
  auto roots_e1 = NumberField::real_roots({1, -1, -2, 1});
  REQUIRE(roots_e1.size() == 3);
  auto w = roots_e1.back()->enclose(40);
  CHECK(interval_inside(w, make_rat(22469796036, 10000000000), make_rat(22469796038, 10000000000)));
}

TEST_CASE("number field element arithmetic is exact") {
  auto roots = NumberField::real_roots({-1, -1, 0, 1});
  auto xi = NFElem::generator(roots[0]);
  auto one = NFElem::from_rational(roots[0], Rational(1));
  CHECK((xi * xi * xi - xi - one).is_zero());
  CHECK((xi.inverse() * xi - one).is_zero());
  CHECK(xi.sign() > 0);
  CHECK((xi - one).sign() > 0);
  CHECK((xi - NFElem::from_rational(roots[0], Rational(2))).sign() < 0);
  // 1/xi = xi^2 - 1 in this field
  CHECK((xi.inverse() - (xi * xi - one)).is_zero());
  CHECK_THROWS_AS((void)NumberField::real_roots({-1, 0, 1}), Error);  // reducible x^2-1
}

TEST_CASE("ball refinement certifies sqrt(2) and cubic roots") {
  BallReal r = BallReal(Rational(2)).sqrt();
  auto v = r.enclose(10);
  CHECK(v.width() <= Dyadic(Int(1), -10));
  CHECK(v.lo.to_rational() * v.lo.to_rational() <= 2);
  CHECK(2 <= v.hi.to_rational() * v.hi.to_rational());

  auto roots = NumberField::real_roots({-1, -1, 0, 1});
  BallReal xi = BallReal(NFElem::generator(roots[0]));
  auto w = xi.enclose(40);
  CHECK(interval_inside(w, make_rat(13247179572, 10000000000), make_rat(13247179574, 10000000000)));
  // refinement keeps the true value inside at high precision
  auto w2 = xi.enclose(256);
  CHECK(w2.width() <= Dyadic(Int(1), -256));
  CHECK(w.lo <= w2.lo);
  CHECK(w2.hi <= w.hi);
}

TEST_CASE("ball arithmetic composes with certified widths") {
  BallReal s2 = BallReal(Rational(2)).sqrt();
  BallReal s3 = BallReal(Rational(3)).sqrt();
  BallReal x = (s2 + s3) * (s3 - s2);  // = 1 exactly
  auto v = x.enclose(100);
  CHECK(v.lo.to_rational() <= 1);
  CHECK(1 <= v.hi.to_rational());
  CHECK(v.width() <= Dyadic(Int(1), -100));
  CHECK((s2 * s2 - BallReal(Rational(2))).enclose(128).contains_zero());
  CHECK(BallReal::cmp(s2, s3) < 0);
  CHECK((BallReal(Rational(1)) / s2).sign() > 0);
  CHECK(s2.floor() == 1);
  CHECK_THROWS_AS((void)(s2 - s2).sign(1 << 10), Error);  // exact zero is undecidable here
}

TEST_CASE("real tier promotion keeps exactness where possible") {
  Real g = Real(QuadraticSurd(1, 1, 2, 5));
  CHECK((g * g - g - Real(1)).is_zero());
  CHECK(g.floor() == 1);
  Real r2 = Real(Rational(2)).sqrt();
  CHECK((r2 * r2).is_rational());
  CHECK((r2 * r2).as_rational() == 2);
  // cross-field products drop to the interval tier but stay correct
  Real r3 = Real(Rational(3)).sqrt();
  Real p = r2 * r3;
  CHECK(!p.is_exact());
  CHECK(Real::cmp(p * p, Real(6) - Real(Rational(1, 1000000))) > 0);
  auto roots = NumberField::real_roots({-1, -1, 0, 1});
  Real xi = Real(NFElem::generator(roots[0]));
  CHECK((xi * xi * xi - xi - Real(1)).is_zero());
  CHECK(Real::cmp(xi, Real(Rational(4, 3))) < 0);
  CHECK(min(g, xi) == xi);
  CHECK_THROWS_AS((void)(Real(1) / Real(0)), Error);
}

TEST_CASE("complex arithmetic over reals") {
  Complex i(Real(0), Real(1));
  Complex z = Complex(Real(1), Real(2)) * Complex(Real(3), Real(-1));
  CHECK(z.re.as_rational() == 5);
  CHECK(z.im.as_rational() == 5);
  CHECK((i * i).re.as_rational() == -1);
  Complex q = Complex(Real(1), Real(0)) / Complex(Real(1), Real(1));
  CHECK(q.re.as_rational() == Rational(1, 2));
  CHECK(q.im.as_rational() == Rational(-1, 2));
  CHECK(Complex(Real(3), Real(4)).norm2().as_rational() == 25);
}

TEST_CASE("gaussian primitive vectors") {
  auto v1 = gaussian_primitive({GaussianInt(2), GaussianInt(4)});
  CHECK(v1 == std::vector<GaussianInt>{GaussianInt(1), GaussianInt(2)});
  auto v2 = gaussian_primitive({GaussianInt(0, 1), GaussianInt(1)});
  CHECK(v2 == std::vector<GaussianInt>{GaussianInt(1), GaussianInt(0, -1)});
  auto v3 = gaussian_primitive({GaussianInt(0), GaussianInt(3, 3)});
  REQUIRE(v3.size() == 2);
  CHECK(v3[0].is_zero());
  CHECK(v3[1].norm2() == 1);
  CHECK(v3[1].re > 0);  // canonical associate of a unit is 1
}

TEST_CASE("gaussian primitive: idempotence, unit and scalar invariance") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-9, 9);
  const GaussianInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int it = 0; it < 300; ++it) {
    std::vector<GaussianInt> v{GaussianInt(c(rng), c(rng)), GaussianInt(c(rng), c(rng)),
                               GaussianInt(c(rng), c(rng))};
    bool zero = true;
    for (auto& z : v) zero = zero && z.is_zero();
    if (zero) continue;
    auto p = gaussian_primitive(v);
    CHECK(gaussian_primitive(p) == p);
    // norm is unit-invariant; primitivization is scalar-invariant
    for (const auto& u : units) {
      std::vector<GaussianInt> uv = v;
      Int n0 = 0, n1 = 0;
      for (auto& z : uv) {
        n0 = std::max(n0, z.norm2());
        z = z * u;
        n1 = std::max(n1, z.norm2());
      }
      CHECK(n0 == n1);
      CHECK(gaussian_primitive(uv) == p);
    }
    GaussianInt s(c(rng), c(rng));
    if (!s.is_zero()) {
      std::vector<GaussianInt> sv = v;
      for (auto& z : sv) z = z * s;
      CHECK(gaussian_primitive(sv) == p);
    }
    // primitivity: gcd of the result is a unit
    GaussianInt g(0, 0);
    for (const auto& z : p) g = gaussian_gcd(g, z);
    CHECK(g.norm2() == 1);
  }
}

TEST_CASE("error taxonomy carries exit codes") {
  try {
    fail(errc::precision, "x");
  } catch (const Error& e) {
    CHECK(e.code() == errc::precision);
    CHECK(e.exit_code() == 4);
  }
  try {
    fail(errc::domain, "y");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 3);
  }
}
