#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "mcrs/approx2d.hpp"
#include "mcrs/cf.hpp"
#include "mcrs/error.hpp"
#include "mcrs/form.hpp"
#include "mcrs/group.hpp"
#include "mcrs/sails.hpp"

using namespace mcrs;

// Eigenline slopes theta = (1+sqrt 5)/2 and -1/theta.
static MCRSGroup golden_group() { return group_from_matrix(IMat{{0, 1}, {1, 1}}); }

static Real golden_slope(const MCRSGroup& g, int which) {
  // which = 0: the positive slope; which = 1: the negative one.
  for (const auto& l : g.lines) {
    Real s = l.dir[1].re / l.dir[0].re;
    if ((s.sign() > 0) == (which == 0)) return s;
  }
  REQUIRE(false);
  return Real(0);
}

// Lines spanned by (1,2) and (2,3): slopes 2 and 3/2, every size-1 group is
// equally far in a four-way tie.
static MCRSGroup antisail_group() {
  auto rc = [](long x) { return Complex(Real(x)); };
  return group_from_lines({{rc(1), rc(2)}, {rc(2), rc(3)}});
}

static std::vector<std::vector<GaussianInt>> primitive_lines(const MCRSGroup& g) {
  std::vector<std::vector<GaussianInt>> out;
  for (const auto& l : g.lines) {
    REQUIRE(l.rational);
    out.push_back(l.primitive);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto key = [](const std::vector<GaussianInt>& v) {
      return std::array<Int, 4>{v[0].re, v[0].im, v[1].re, v[1].im};
    };
    return key(a) < key(b);
  });
  return out;
}

static bool same_results(const ApproxResult& a, const ApproxResult& b) {
  // Equal optima can arrive in incomparable expression forms (exact equality
  // of two interval-tier reals is undecidable); accept a difference that is
  // certifiably below 2^-160 alongside identical minimizer sets.
  Dyadic mag = (a.rho.value - b.rho.value).enclose(192).abs().hi;
  if (Dyadic::cmp(mag, Dyadic::pow2(-160)) > 0) return false;
  if (a.minimizers.size() != b.minimizers.size()) return false;
  for (size_t i = 0; i < a.minimizers.size(); ++i)
    if (primitive_lines(a.minimizers[i]) != primitive_lines(b.minimizers[i])) return false;
  return true;
}

TEST_CASE("slope confinement radii: exact formula values") {
  auto d = delta_bound_from_eps(Real(2), Real(1), Real(Rational(1, 10)));
  CHECK(Real::cmp(d[0], Real(Rational(1, 3))) == 0);
  CHECK(Real::cmp(d[1], Real(Rational(1, 9))) == 0);

  CHECK_THROWS_WITH_AS((void)delta_bound_from_eps(Real(2), Real(0), Real(Rational(1, 10))),
                       "slope must be nonzero", Error);
  // the radius formula needs eps < 1/|a1 - a2|
  CHECK_THROWS_WITH_AS((void)delta_bound_from_eps(Real(3), Real(1), Real(1)),
                       "epsilon too large", Error);
}

TEST_CASE("perturbation discrepancy bound: exact value and sampled soundness") {
  // a1=1, a2=0, eps=1/100: max(2,2,1+eps)/(1*(1+2eps)) * eps = 1/51.
  CHECK(Real::cmp(eps_bound_from_delta(Real(1), Real(0), Real(Rational(1, 100))),
                  Real(Rational(1, 51))) == 0);

  std::mt19937 rng(20240817);
  auto coin = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  int tested = 0;
  while (tested < 300) {
    Rational a1(coin(-300, 300), coin(1, 100)), a2(coin(-300, 300), coin(1, 100));
    a1.canonicalize();
    a2.canonicalize();
    if (a1 == a2) continue;
    Rational eps(coin(1, 50), 1000);
    // The estimate degrades once the perturbation is comparable to the slope
    // gap (which is why certification relies on exact seed discrepancies, not
    // on this formula); sample well inside the gap.
    if (Rational(eps * 8) > rat_abs(Rational(a1 - a2))) continue;
    Rational d1(coin(-999, 999), 1000), d2(coin(-999, 999), 1000);
    d1 = d1 * eps;
    d2 = d2 * eps;
    Rational s1 = a1 + d1, s2 = a2 + d2;
    if (s1 == s2) continue;
    Real bound = eps_bound_from_delta(Real(a1), Real(a2), Real(eps));
    Real rho = discrepancy(group_from_slopes(Real(a1), Real(a2)),
                           group_from_slopes(Real(s1), Real(s2)))
                   .value;
    CHECK(Real::cmp(rho, bound) <= 0);
    ++tested;
  }
}

TEST_CASE("slope confinement radii: sampled soundness") {
  std::mt19937 rng(7321);
  auto coin = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  int tested = 0;
  while (tested < 200) {
    Rational a1(coin(-40, 40), coin(1, 12)), a2(coin(-40, 40), coin(1, 12));
    a1.canonicalize();
    a2.canonicalize();
    if (a1 == a2 || a1 == 0 || a2 == 0) continue;
    Rational ad = rat_abs(Rational(a1 - a2));
    Rational eps = Rational(coin(1, 9), 10) / ad;  // below the 1/|a1-a2| gate
    Rational s1 = a1 + Rational(coin(-50, 50), 1000), s2 = a2 + Rational(coin(-50, 50), 1000);
    if (s1 == s2) continue;
    Real rho = discrepancy(group_from_slopes(Real(a1), Real(a2)),
                           group_from_slopes(Real(s1), Real(s2)))
                   .value;
    if (Real::cmp(rho, Real(eps)) >= 0) continue;  // the radius only covers rho < eps
    auto b = delta_bound_from_eps(Real(a1), Real(a2), Real(eps));
    CHECK(Real::cmp(Real(rat_abs(Rational(s1 - a1))), b[0]) < 0);
    CHECK(Real::cmp(Real(rat_abs(Rational(s2 - a2))), b[1]) < 0);
    ++tested;
  }
}

TEST_CASE("conjugate-pair bounds: values and sampled soundness") {
  auto conj_group = [](const Rational& x, const Rational& y) {
    return group_from_lines({{Complex(Real(1)), Complex(Real(x), Real(y))},
                             {Complex(Real(1)), Complex(Real(x), Real(Rational(-y)))}});
  };

  // Precondition gate of the confinement radii.
  CHECK_THROWS_WITH_AS((void)conj_delta_bound_from_eps(Real(1), Real(1), Real(1)),
                       "epsilon too large", Error);
  // The cap factor 2b/(2b+eps) at b=1, eps=2 is 1/2.
  CHECK(Real::cmp(conj_phi_bound(Real(1), Real(2)), Real(Rational(1, 2))) == 0);

  std::mt19937 rng(515);
  auto coin = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  int tested = 0, confined = 0;
  while (tested < 200) {
    Rational al(coin(-20, 20), coin(1, 10)), be(coin(1, 20), coin(1, 10));
    al.canonicalize();
    be.canonicalize();
    Rational eps(coin(1, 30), 1000);
    Rational x = al + Rational(coin(-999, 999), 1000) * eps;
    Rational y = be + Rational(coin(-999, 999), 1000) * eps;
    if (y <= 0) continue;
    Real bound = conj_rho_bound_from_delta(Real(al), Real(be), Real(eps));
    Real rho = discrepancy(conj_group(al, be), conj_group(x, y)).value;
    CHECK(Real::cmp(rho, bound) <= 0);
    ++tested;

    // Soundness of the confinement radius used for pruning: the larger of the
    // two displayed radii must cover both coordinates.
    Rational eps1(1, 200);
    if (Real::cmp(rho, Real(eps1)) >= 0) continue;
    std::array<Real, 2> db;
    try {
      db = conj_delta_bound_from_eps(Real(al), Real(be), Real(eps1));
    } catch (const Error&) {
      continue;  // radius formula unavailable at this eps
    }
    Real safe = max(db[0], db[1]);
    CHECK(Real::cmp(Real(rat_abs(Rational(x - al))), safe) < 0);
    CHECK(Real::cmp(Real(rat_abs(Rational(y - be))), safe) < 0);
    ++confined;
  }
  CHECK(confined > 10);
}

TEST_CASE("golden-ratio worked bounds match the published decimals") {
  auto g = golden_group();
  Real a1 = golden_slope(g, 0), a2 = golden_slope(g, 1);
  Int N(100);

  auto b1 = best_dioph_in_box(a1, N);
  auto b2 = best_dioph_in_box(a2, N);
  CHECK(b1.best.value() == Rational(89, 55));
  CHECK(b1.next.value() == Rational(144, 89));
  CHECK(b2.best.value() == Rational(-55, 89));
  Rational eps2 = std::max(make_rat(1, b1.best.n * b1.next.n), make_rat(1, b2.best.n * b2.next.n));
  CHECK(eps2 == Rational(1, 4895));

  // Each published decimal must bound its exact value from above, by at most
  // 0.015 in units of 1/N^2.
  auto matches = [](const Real& value, long printed_hundredths) {
    Rational printed(printed_hundredths, 1000000);  // e.g. 379 -> 3.79/100^2
    Rational slack(15, 10000000);                   // 0.015/100^2
    return Real::cmp(value, Real(printed)) <= 0 &&
           Real::cmp(Real(Rational(printed - slack)), value) <= 0;
  };

  // The published 3.79/N^2 figure quotes the epsilon-factor of the bound with
  // the unit conversion (89/55)^3 folded in (1/(55*89) versus 1/N^2 units).
  Real rho_bar = eps_bound_from_delta(a1, a2, Real(eps2));
  Real conv = Real(Rational(89, 55));
  conv = conv * conv * conv;
  CHECK(matches(rho_bar * Real(4895) * conv * Real(Rational(1, 10000)), 379));  // 3.79/N^2

  Real eps1 = Real(Rational(379, 1000000));
  auto db = delta_bound_from_eps(a1, a2, eps1);
  CHECK(matches(db[0], 8035));  // 80.35/N^2
  CHECK(matches(db[1], 1897));  // 18.97/N^2

  // Admitted vectors obey |Phi(m,n)|/n^2 <= D (|d| + D)/|d|.
  Real ad = (a1 - a2).abs();
  Real D1 = Real(Rational(8035, 1000000)), D2 = Real(Rational(1897, 1000000));
  Real cap1 = D1 / phi_over_q2_bound(a1, a2, D1, 1);
  Real cap2 = D2 / phi_over_q2_bound(a1, a2, D2, 2);
  CHECK(Real::cmp(cap1, D1 * (ad + D1) / ad) == 0);
  CHECK(matches(cap1, 8065));  // 80.65/N^2
  CHECK(matches(cap2, 1899));  // 18.99/N^2
}

TEST_CASE("admitted-vector bound: sampled inequality") {
  auto g = golden_group();
  Real a1 = golden_slope(g, 0), a2 = golden_slope(g, 1);
  Real ad = (a1 - a2).abs();
  std::mt19937 rng(99);
  auto coin = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  Real eps3 = Real(Rational(1, 4));
  int tested = 0;
  while (tested < 150) {
    Int n(coin(1, 60));
    Int m = rat_round(Rational(coin(-100, 100), 100)) + Int(coin(1, 3)) * n;  // near small slopes
    Real diff = (a1 - Real(make_rat(m, n))).abs();
    if (Real::cmp(diff, eps3) >= 0) continue;
    Real phi_q2 = (Real(m) - a1 * Real(n)).abs() * (Real(m) - a2 * Real(n)).abs() /
                  (ad * Real(n) * Real(n));
    CHECK(Real::cmp(diff, phi_over_q2_bound(a1, a2, eps3, 1) * phi_q2) > 0);
    ++tested;
  }
}

TEST_CASE("four best approximations of the antisail target at size one") {
  auto target = antisail_group();
  ApproxQuery q{target, Int(1)};
  auto r = best_approx(q);
  CHECK(Real::cmp(r.rho.value, Real(6)) == 0);
  REQUIRE(r.minimizers.size() == 4);
  std::vector<std::array<long, 4>> expect = {
      {0, 1, 1, 0}, {0, 1, 1, 1}, {1, -1, 1, 0}, {1, 0, 1, 1}};
  for (size_t i = 0; i < 4; ++i) {
    auto lines = primitive_lines(r.minimizers[i]);
    CHECK(lines[0][0].re == expect[i][0]);
    CHECK(lines[0][1].re == expect[i][1]);
    CHECK(lines[1][0].re == expect[i][2]);
    CHECK(lines[1][1].re == expect[i][3]);
  }
  CHECK(same_results(r, brute_force_best(q)));
}

TEST_CASE("hyperbolic search matches the exhaustive reference") {
  auto g = golden_group();
  bool certified_somewhere = false;
  for (long n : {1, 2, 3, 5, 8, 13, 21, 34, 40}) {
    ApproxQuery q{g, Int(n)};
    auto fast = best_approx_hyperbolic(q);
    auto slow = brute_force_best(q);
    CAPTURE(n);
    CHECK(same_results(fast, slow));
    certified_somewhere = certified_somewhere || fast.certificate.has_value();
  }
  CHECK(certified_somewhere);

  Real r2 = Real(2).sqrt();
  auto sq = group_from_slopes(r2, -Real(1) / r2);
  for (long n : {5, 12, 30}) {
    ApproxQuery q{sq, Int(n)};
    CAPTURE(n);
    CHECK(same_results(best_approx_hyperbolic(q), brute_force_best(q)));
  }
}

TEST_CASE("conjugate search matches the exhaustive reference") {
  Real s = Real(1) / Real(2).sqrt();
  auto target = group_from_lines(
      {{Complex(Real(1)), Complex(s, s)}, {Complex(Real(1)), Complex(s, -s)}});
  REQUIRE(target.spectrum == Spectrum::complex_pair);
  for (long n : {1, 2, 3, 4, 5, 6, 10}) {
    ApproxQuery q{target, Int(n)};
    CAPTURE(n);
    CHECK(same_results(best_approx_complex(q), brute_force_best(q)));
  }

  // A rational conjugate-pair target of size 1 is its own best approximation.
  auto rot = group_from_matrix(IMat{{0, -1}, {1, 0}});
  auto r = best_approx(ApproxQuery{rot, Int(1)});
  CHECK(r.rho.value.is_zero());
  REQUIRE(r.minimizers.size() == 1);
  CHECK(primitive_lines(r.minimizers[0]) == primitive_lines(rot));
}

TEST_CASE("certified pruning is never wrong about excluded candidates") {
  // Where the certificate applies, the certified result must equal the global
  // minimum over everything the exhaustive reference enumerates.
  auto g = golden_group();
  for (long n : {10, 25, 40}) {
    ApproxQuery q{g, Int(n)};
    auto fast = best_approx_hyperbolic(q);
    CAPTURE(n);
    REQUIRE(fast.certificate.has_value());
    CHECK(Real::cmp(fast.rho.value, fast.certificate->rho_upper) <= 0);
    CHECK(same_results(fast, brute_force_best(q)));
    // Minimizer slopes lie within the certified radii.
    Real a1 = golden_slope(g, 0), a2 = golden_slope(g, 1);
    for (const auto& m : fast.minimizers) {
      for (const auto& l : m.lines) {
        Real slope = Real(l.primitive[1].re) / Real(l.primitive[0].re);
        bool near1 = Real::cmp((slope - a1).abs(), fast.certificate->delta[0]) <= 0;
        bool near2 = Real::cmp((slope - a2).abs(), fast.certificate->delta[1]) <= 0;
        CHECK((near1 || near2));
      }
    }
  }
}

TEST_CASE("discrepancy decreases with the size bound") {
  auto g = golden_group();
  std::optional<Real> prev;
  for (long n = 1; n <= 15; ++n) {
    auto r = best_approx(ApproxQuery{g, Int(n)});
    // Consecutive optima can be exactly equal but held in different expression
    // forms, so certify non-increase through a tight enclosure instead of an
    // exact (possibly undecidable) comparison.
    if (prev)
      CHECK(Dyadic::cmp((r.rho.value - *prev).enclose(192).lo, Dyadic::pow2(-160)) <= 0);
    prev = r.rho.value;
  }
}

TEST_CASE("certified search at a million: predicted Fibonacci eigenspaces") {
  auto g = golden_group();
  auto r = best_approx(ApproxQuery{g, Int(1000000)});
  REQUIRE(r.certificate.has_value());
  CHECK(r.rho.value.sign() > 0);
  REQUIRE(r.minimizers.size() == 1);
  auto lines = primitive_lines(r.minimizers[0]);
  CHECK(lines[0][0].re == 514229);
  CHECK(lines[0][1].re == 832040);
  CHECK(lines[1][0].re == 832040);
  CHECK(lines[1][1].re == -514229);

  auto levels = sail_level_of_result(g, r);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0][0] == 1);
  CHECK(levels[0][1] == 1);
}

TEST_CASE("sail levels of the antisail minimizers match the coordinate sum") {
  // The target's eigenrays are spanned by (1,2) and (2,3), a unimodular basis,
  // so each of the four cones is a unimodular image of the first quadrant.
  // There the peel chains are the diagonals a + b = k, so the level of an
  // integer vector equals the sum of its nonnegative cone coordinates in the
  // (+/- (1,2), +/- (2,3)) basis.
  auto target = antisail_group();
  auto r = best_approx(ApproxQuery{target, Int(1)});
  auto levels = sail_level_of_result(target, r);
  REQUIRE(levels.size() == 4);

  auto coordinate_sum = [](const Int& x, const Int& y) -> Int {
    // Solve v = a*s1*(1,2) + b*s2*(2,3) over the four sign choices and return
    // a + b for the choice with both coordinates nonnegative.
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        // det(s1*(1,2), s2*(2,3)) = -s1*s2; Cramer with that determinant.
        Int det = -s1 * s2;
        Int a = (Int(x * 3 * s2) - Int(y * 2 * s2)) / det;
        Int b = (Int(y * s1) - Int(x * 2 * s1)) / det;
        if (a >= 0 && b >= 0 && a + b > 0) return Int(a + b);
      }
    REQUIRE(false);
    return Int(0);
  };

  for (size_t i = 0; i < r.minimizers.size(); ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto& l = r.minimizers[i].lines[j];
      int level = sail_membership_level(target, {l.primitive[0].re, l.primitive[1].re});
      CHECK(Int(level) == coordinate_sum(l.primitive[0].re, l.primitive[1].re));
    }
    CHECK(levels[i][0] >= 1);
    CHECK(levels[i][1] >= levels[i][0]);
  }
}

TEST_CASE("scaled discrepancy window stays bounded") {
  auto g = golden_group();
  auto rep = lagrange_sweep(g, {Int(10), Int(100), Int(1000), Int(10000)});
  CHECK(!rep.degenerate);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.window_min.sign() > 0);
  double ratio = rep.window_max.to_double() / rep.window_min.to_double();
  CHECK(ratio < 100.0);

  Real r2 = Real(2).sqrt();
  auto sq = group_from_slopes(r2, -Real(1) / r2);
  auto rep2 = lagrange_sweep(sq, {Int(10), Int(100), Int(1000), Int(10000)});
  CHECK(!rep2.degenerate);
  CHECK(rep2.window_min.sign() > 0);
  CHECK(rep2.window_max.to_double() / rep2.window_min.to_double() < 100.0);

  // A rational target degenerates once it fits the box.
  auto rep3 = lagrange_sweep(antisail_group(), {Int(1), Int(3)});
  CHECK(rep3.degenerate);
  CHECK(rep3.rows[1].rho.is_zero());
}

TEST_CASE("sparse sweep for a fast-growing expansion decays like N^(-3/2)") {
  // Terms grow as a_{k+1} = n_k (the previous denominator): 1,1,1,2,5,27,734...
  std::vector<Int> terms = {Int(1), Int(1)};
  std::vector<Int> dens = {Int(1), Int(1)};  // n_0, n_1
  while (dens.back() < Int("100000000000000000000000000000000000000")) {
    Int a = dens.back();
    terms.push_back(a);
    dens.push_back(a * dens[dens.size() - 1] + dens[dens.size() - 2]);
  }
  Rational alpha = cf_value(terms);
  auto target = group_from_slopes(Real(alpha), Real(0));

  // N_k = (n_k + n_{k+1}) / 2 for the mid-size denominators.
  std::vector<Int> sizes = {Int((2 + 5) / 2), Int((5 + 27) / 2), Int((27 + 734) / 2)};
  auto rep = lagrange_sweep(target, sizes);
  CHECK(!rep.degenerate);
  for (const auto& row : rep.rows) {
    double n = row.N.get_d();
    double scaled32 = row.rho.to_double() * std::pow(n, 1.5);
    CAPTURE(n);
    CHECK(row.rho.to_double() > 0);
    CHECK(scaled32 > 0.05);   // bounded below: decay no faster than N^(-3/2)
    CHECK(scaled32 < 100.0);  // and no N^(-2) window: rho * N^2 diverges below
  }
  // rho * N^2 grows along the sweep, so no Lagrange-style window exists.
  CHECK(rep.rows.back().scaled.to_double() > 4 * rep.rows.front().scaled.to_double());
}

TEST_CASE("query validation and routing errors") {
  CHECK_THROWS_WITH_AS((void)brute_force_best(ApproxQuery{golden_group(), Int(61)}),
                       "size bound exceeds the exhaustive-search cap", Error);
  CHECK_THROWS_WITH_AS((void)best_approx(ApproxQuery{golden_group(), Int(0)}),
                       "size bound must be positive", Error);
  CHECK_THROWS_WITH_AS(
      (void)best_approx(ApproxQuery{group_A_alpha(golden_slope(golden_group(), 0)), Int(5)}),
      "vertical eigenline: use the classical single-slope chart", Error);
  CHECK_THROWS_WITH_AS((void)best_approx_complex(ApproxQuery{golden_group(), Int(5)}),
                       "not complex-pair", Error);
}
