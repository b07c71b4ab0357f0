#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcrs/error.hpp"
#include "mcrs/form.hpp"
#include "mcrs/group.hpp"

using namespace mcrs;

static Complex rc(long num, long den = 1) { return Complex(Real(make_rat(num, den))); }

static bool forms_equal_up_to_sign(const MDForm& a, const MDForm& b) {
  auto d = discrepancy(a, b);
  return d.value.is_exact() && d.value.is_zero();
}

static MDForm form2(Complex cxx, Complex cxy, Complex cyy) {
  MDForm f;
  f.n = 2;
  f.coeff = {std::move(cxx), std::move(cxy), std::move(cyy)};
  f.canonicalize_sign();
  return f;
}

TEST_CASE("eigenlines of 2x2 matrices") {
  auto fib = group_from_matrix(IMat{{1, 1}, {1, 0}});
  CHECK(fib.spectrum == Spectrum::hyperbolic);
  CHECK(!fib.rational());
  // slopes are theta - 1 = 1/theta and -theta (the two roots of x^2+x-1
  // read as slope s with eigenvector (1, s))
  QuadraticSurd theta(1, 1, 2, 5);
  for (const auto& l : fib.lines) {
    REQUIRE(l.dir.size() == 2);
    Real s = l.dir[1].re;
    CHECK((s * s + s - Real(1)).is_zero());
  }

  auto rot = group_from_matrix(IMat{{0, -1}, {1, 0}});
  CHECK(rot.spectrum == Spectrum::complex_pair);
  CHECK(rot.rational());
  for (const auto& l : rot.lines) {
    CHECK(l.primitive.size() == 2);
    CHECK(l.primitive[0].norm2() == 1);
    CHECK(l.primitive[1].norm2() == 1);
  }
  CHECK(size_value(rot).as_rational() == 1);

  CHECK_THROWS_WITH_AS((void)group_from_matrix(IMat{{1, 0}, {0, 1}}), "not regular", Error);
}

TEST_CASE("markoff-davenport forms: worked 2d values") {
  auto fib = group_from_matrix(IMat{{1, 1}, {1, 0}});
  QuadraticSurd inv_root5(0, 1, 5, 5);  // 1/sqrt 5
  MDForm expected = form2(Complex(Real(-inv_root5)), Complex(Real(inv_root5)),
                          Complex(Real(inv_root5)));
  CHECK(forms_equal_up_to_sign(md_form(fib), expected));

  auto hyp = group_from_lines({{rc(1), rc(2)}, {rc(1), rc(-2)}});
  CHECK(forms_equal_up_to_sign(md_form(hyp), form2(rc(-1), rc(0), rc(1, 4))));

  auto rot = group_from_lines({{Complex(Real(0), Real(1)), rc(1)},
                               {Complex(Real(0), Real(-1)), rc(1)}});
  MDForm imf = form2(Complex(Real(0), Real(Rational(1, 2))), Complex(),
                     Complex(Real(0), Real(Rational(1, 2))));
  CHECK(forms_equal_up_to_sign(md_form(rot), imf));
}

TEST_CASE("form is independent of line scaling") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> c(-6, 6), s(1, 9);
  for (int it = 0; it < 50; ++it) {
    long a = c(rng), b = c(rng), d = c(rng), e = c(rng);
    if (a * e == b * d || (a == 0 && b == 0) || (d == 0 && e == 0)) continue;
    auto g1 = group_from_lines({{rc(a), rc(b)}, {rc(d), rc(e)}});
    auto g2 = group_from_lines({{rc(a * s(rng)), rc(b * s(rng) * 0 + b * 1)}, {rc(d), rc(e)}});
    // scale whole vectors, not per-coordinate
    long k = s(rng), l = s(rng);
    auto g3 = group_from_lines({{rc(a * k), rc(b * k)}, {rc(d * l), rc(e * l)}});
    CHECK(forms_equal_up_to_sign(md_form(g1), md_form(g3)));
    (void)g2;
  }
}

TEST_CASE("unimodular equivariance of the form") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> c(-5, 5);
  int done = 0;
  while (done < 30) {
    long a = c(rng), b = c(rng), d = c(rng), e = c(rng);
    if (a * e - b * d == 0) continue;
    long p = c(rng), q = c(rng), r = c(rng), s = (p * 0 + 1);
    // build g in SL(2,Z) from a random shear product
    IMat g = IMat{{1, p}, {0, 1}} * IMat{{1, 0}, {q, 1}} * IMat{{1, r}, {0, 1}};
    (void)s;
    auto A = group_from_lines({{rc(a), rc(b)}, {rc(d), rc(e)}});
    auto apply = [&](long x, long y) {
      return std::pair<Int, Int>{g.at(0, 0) * x + g.at(0, 1) * y, g.at(1, 0) * x + g.at(1, 1) * y};
    };
    auto [ga1, gb1] = apply(a, b);
    auto [gd1, ge1] = apply(d, e);
    if (ga1 * ge1 - gb1 * gd1 == 0) continue;
    auto gA = group_from_lines({{Complex(Real(Rational(ga1))), Complex(Real(Rational(gb1)))},
                                {Complex(Real(Rational(gd1))), Complex(Real(Rational(ge1)))}});
    MDForm fA = md_form(A), fgA = md_form(gA);
    // Phi_gA(g v) = +/- Phi_A(v), with one global sign across all v
    int sign = 0;
    bool ok = true;
    for (long vx = -2; vx <= 2 && ok; ++vx)
      for (long vy = -2; vy <= 2 && ok; ++vy) {
        auto [wx, wy] = apply(vx, vy);
        Complex lhs = fgA.eval({Real(Rational(wx)), Real(Rational(wy))});
        Complex rhs = fA.eval({Real(Rational(vx)), Real(Rational(vy))});
        Real dplus = (lhs + rhs).norm2(), dminus = (lhs - rhs).norm2();
        bool zp = dplus.is_zero(), zm = dminus.is_zero();
        if (zp && zm) continue;  // value is zero, no sign information
        int s_here = zm ? 1 : (zp ? -1 : 0);
        if (s_here == 0) ok = false;
        else if (sign == 0) sign = s_here;
        else if (sign != s_here) ok = false;
      }
    CHECK(ok);
    ++done;
  }
}

TEST_CASE("size of rational groups") {
  auto hyp = group_from_lines({{rc(1), rc(2)}, {rc(1), rc(-2)}});
  CHECK(size_value(hyp).as_rational() == 2);
  CHECK(size_fits(hyp, 2));
  CHECK(!size_fits(hyp, 1));

  std::mt19937 rng(31);
  std::uniform_int_distribution<int> mm(0, 20), nn(1, 20);
  for (int it = 0; it < 60; ++it) {
    long m = mm(rng), n = nn(rng);
    if (m > n || gcd(Int(m), Int(n)) != 1) continue;
    auto a = group_A_alpha(Real(make_rat(m, n)));
    CHECK(size_value(a).as_rational() == n);
  }

  auto fib = group_from_matrix(IMat{{1, 1}, {1, 0}});
  CHECK_THROWS_WITH_AS((void)size_value(fib), "not a rational group", Error);
}

TEST_CASE("discrepancy basics and worked values") {
  auto hyp = group_from_lines({{rc(1), rc(2)}, {rc(1), rc(-2)}});
  auto self = discrepancy(hyp, hyp);
  CHECK(self.value.is_zero());
  CHECK(self.branch == Branch::difference);

  // slope family: rho(A[a1], A[a2]) = |a1 - a2|
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> mm(1, 30), nn(1, 30);
  for (int it = 0; it < 40; ++it) {
    Rational a1 = make_rat(mm(rng), nn(rng)), a2 = make_rat(mm(rng), nn(rng));
    if (a1 > 1 || a2 > 1 || a1 == a2) continue;
    auto d = discrepancy(group_A_alpha(Real(a1)), group_A_alpha(Real(a2)));
    CHECK(d.value == Real(rat_abs(a1 - a2)));
  }

  // the worked pair with discrepancy exactly 6
  auto target = group_from_lines({{rc(1), rc(2)}, {rc(2), rc(3)}});
  auto cand = group_from_lines({{rc(1), rc(0)}, {rc(1), rc(1)}});
  auto d6 = discrepancy(target, cand);
  CHECK(d6.value == Real(6));

  // symmetry
  auto dab = discrepancy(target, cand), dba = discrepancy(cand, target);
  CHECK(Real::cmp(dab.value, dba.value) == 0);

  // the real/complex-pair example: definition gives sqrt(5)/2
  auto rot = group_from_lines({{Complex(Real(0), Real(1)), rc(1)},
                               {Complex(Real(0), Real(-1)), rc(1)}});
  auto dx = discrepancy(rot, hyp);
  CHECK((dx.value * dx.value).as_rational() == Rational(5, 4));
}

TEST_CASE("3d: cubic spectra and the family chart") {
  auto B = group_from_matrix(IMat{{0, 1, 1}, {0, 0, 1}, {1, 0, 0}});
  CHECK(B.spectrum == Spectrum::mixed);
  REQUIRE(B.lines.size() == 3);
  // one real line, a conjugate pair
  int reals = 0;
  for (const auto& l : B.lines) reals += l.is_real();
  CHECK(reals == 1);

  auto E1 = group_from_matrix(IMat{{1, 1, 1}, {1, 1, 0}, {1, 0, 0}});
  CHECK(E1.spectrum == Spectrum::hyperbolic);

  CHECK_THROWS_WITH_AS(
      (void)group_from_matrix(IMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), "not regular", Error);
}

TEST_CASE("family form matches its closed formula") {
  // worked instances
  auto f100 = md_form_simul3(Real(1), Real(0), Real(0));
  MDForm e100;
  e100.n = 3;
  e100.coeff.assign(10, Complex());
  e100.coeff[3] = Complex(Real(0), Real(Rational(-1, 2)));  // xy^2
  e100.coeff[5] = Complex(Real(0), Real(Rational(-1, 2)));  // xz^2
  e100.canonicalize_sign();
  CHECK(forms_equal_up_to_sign(f100, e100));

  auto f111 = md_form_simul3(Real(1), Real(1), Real(1));
  MDForm e111;
  e111.n = 3;
  e111.coeff.assign(10, Complex());
  e111.coeff[0] = Complex(Real(0), Real(-1));               // x^3
  e111.coeff[1] = Complex(Real(0), Real(1));                // x^2 y
  e111.coeff[2] = Complex(Real(0), Real(1));                // x^2 z
  e111.coeff[3] = Complex(Real(0), Real(Rational(-1, 2)));  // xy^2
  e111.coeff[5] = Complex(Real(0), Real(Rational(-1, 2)));  // xz^2
  e111.canonicalize_sign();
  CHECK(forms_equal_up_to_sign(f111, e111));

  // cross-validation against the generic construction
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> c(-9, 9), a(1, 9);
  for (int it = 0; it < 100; ++it) {
    Real ra(Rational(a(rng))), rb(Rational(c(rng))), rcv(Rational(c(rng)));
    auto generic = md_form(group_simul3(ra, rb, rcv));
    auto closed = md_form_simul3(ra, rb, rcv);
    CHECK(forms_equal_up_to_sign(generic, closed));
  }

  CHECK_THROWS_AS((void)md_form_simul3(Real(0), Real(1), Real(1)), Error);
}

TEST_CASE("family discrepancy difference branch exposes the three moduli") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> c(-9, 9), a(1, 9);
  for (int it = 0; it < 60; ++it) {
    Rational a1(a(rng)), b1(c(rng)), c1(c(rng)), a2(a(rng)), b2(c(rng)), c2(c(rng));
    auto f1 = md_form_simul3(Real(a1), Real(b1), Real(c1));
    auto f2 = md_form_simul3(Real(a2), Real(b2), Real(c2));
    // canonical sign of both is the same orientation, so the difference branch
    // cancels the constant xy^2, xz^2 coefficients entirely
    Rational t1 = rat_abs(b1 / a1 - b2 / a2);
    Rational t2 = rat_abs(c1 / a1 - c2 / a2);
    Rational t3 = rat_abs((b1 * b1 + c1 * c1) / (2 * a1 * a1) -
                          (b2 * b2 + c2 * c2) / (2 * a2 * a2));
    Rational expect = std::max({t1, t2, t3});
    auto d = discrepancy(f1, f2);
    if (expect <= 1) {  // otherwise the sum branch may win; here diff == expect
      CHECK(d.value == Real(expect));
    }
  }
}
