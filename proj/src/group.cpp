#include "mcrs/group.hpp"

#include "mcrs/error.hpp"
#include "mcrs/number_field.hpp"

namespace mcrs {

static bool real_is_zero(const Real& x) { return x.is_exact() && x.is_zero(); }
static bool cx_is_zero(const Complex& z) { return real_is_zero(z.re) && real_is_zero(z.im); }

bool EigenLine::is_real() const {
  for (const auto& z : dir)
    if (!real_is_zero(z.im)) return false;
  return true;
}

std::string EigenLine::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < dir.size(); ++i) s += (i ? ", " : "") + dir[i].to_string();
  return s + ")";
}

EigenLine make_line(std::vector<Complex> dir) {
  size_t lead = dir.size();
  for (size_t i = 0; i < dir.size(); ++i)
    if (!cx_is_zero(dir[i])) {
      lead = i;
      break;
    }
  if (lead == dir.size()) fail(errc::domain, "zero direction vector");
  Complex pivot = dir[lead];
  for (auto& z : dir) z = z / pivot;

  EigenLine line;
  line.dir = std::move(dir);
  bool rat = true;
  for (const auto& z : line.dir) rat = rat && z.re.is_rational() && z.im.is_rational();
  if (rat) {
    Int den = 1;
    for (const auto& z : line.dir)
      den = lcm(lcm(den, z.re.as_rational().get_den()), z.im.as_rational().get_den());
    std::vector<GaussianInt> g;
    for (const auto& z : line.dir) {
      Rational re = z.re.as_rational() * den, im = z.im.as_rational() * den;
      g.emplace_back(re.get_num(), im.get_num());
    }
    line.rational = true;
    line.primitive = gaussian_primitive(std::move(g));
  }
  return line;
}

static bool lines_independent(const EigenLine& a, const EigenLine& b) {
  size_t n = a.dir.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Complex minor = a.dir[i] * b.dir[j] - a.dir[j] * b.dir[i];
      if (!cx_is_zero(minor)) return true;
    }
  return false;
}

MCRSGroup group_from_lines(std::vector<std::vector<Complex>> dirs) {
  MCRSGroup g;
  g.n = static_cast<int>(dirs.size());
  for (auto& d : dirs) {
    if (static_cast<int>(d.size()) != g.n) fail(errc::domain, "direction dimension mismatch");
    g.lines.push_back(make_line(std::move(d)));
  }
  for (size_t i = 0; i < g.lines.size(); ++i)
    for (size_t j = i + 1; j < g.lines.size(); ++j)
      if (!lines_independent(g.lines[i], g.lines[j]))
        fail(errc::domain, "lines are not pairwise independent");
  bool all_real = true, none_real = true;
  for (const auto& l : g.lines) (l.is_real() ? none_real : all_real) = false;
  g.spectrum = all_real ? Spectrum::hyperbolic
                        : (none_real ? Spectrum::complex_pair : Spectrum::mixed);
  return g;
}

MCRSGroup group_from_slopes(const Real& a1, const Real& a2) {
  return group_from_lines({{Complex(Real(1)), Complex(a1)}, {Complex(Real(1)), Complex(a2)}});
}

MCRSGroup group_A_alpha(const Real& alpha) {
  return group_from_lines({{Complex(Real(0)), Complex(Real(1))}, {Complex(Real(1)), Complex(alpha)}});
}

MCRSGroup group_simul3(const Real& a, const Real& b, const Real& c) {
  if (real_is_zero(a)) fail(errc::domain, "vertical direction unsupported in A[a,b,c] chart");
  std::vector<Complex> main{Complex(a), Complex(b), Complex(c)};
  std::vector<Complex> plus{Complex(Real(0)), Complex(Real(1)), Complex(Real(0), Real(1))};
  std::vector<Complex> minus{Complex(Real(0)), Complex(Real(1)), Complex(Real(0), Real(-1))};
  return group_from_lines({main, plus, minus});
}

// ---------- eigenline computation ----------

namespace {

// 2D eigenvector of [[a,b],[c,d]] for eigenvalue lam: (b, lam-a), falling
// back to (lam-d, c) and the diagonal case.
std::vector<Complex> eigvec2(const IMat& m, const Complex& lam) {
  Complex a(Real(Rational(m.at(0, 0)))), b(Real(Rational(m.at(0, 1))));
  Complex c(Real(Rational(m.at(1, 0)))), d(Real(Rational(m.at(1, 1))));
  std::vector<Complex> v{b, lam - a};
  if (!(cx_is_zero(v[0]) && cx_is_zero(v[1]))) return v;
  v = {lam - d, c};
  if (!(cx_is_zero(v[0]) && cx_is_zero(v[1]))) return v;
  fail(errc::domain, "not regular");
}

std::vector<Complex> cross3(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// 3D eigenvector for eigenvalue lam via cross products of rows of M - lam*I.
std::vector<Complex> eigvec3(const IMat& m, const Complex& lam) {
  std::vector<std::vector<Complex>> rows(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex e(Real(Rational(m.at(i, j))));
      if (i == j) e = e - lam;
      rows[i].push_back(e);
    }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : pairs) {
    auto v = cross3(rows[i], rows[j]);
    if (!(cx_is_zero(v[0]) && cx_is_zero(v[1]) && cx_is_zero(v[2]))) return v;
  }
  fail(errc::domain, "not regular");
}

// Element A + B*mu of Q(xi)[mu]/(mu^2 + P mu + Q) -- used to keep the
// complex-pair eigenvector of a cubic exact.
struct QE {
  NFElem a, b;
};

struct QERing {
  NFElem P, Q;
  FieldPtr field;

  QE from_rat(const Rational& x) const { return {NFElem::from_rational(field, x), NFElem::from_rational(field, Rational(0))}; }
  QE mu() const { return {NFElem::from_rational(field, Rational(0)), NFElem::from_rational(field, Rational(1))}; }
  QE add(const QE& x, const QE& y) const { return {x.a + y.a, x.b + y.b}; }
  QE sub(const QE& x, const QE& y) const { return {x.a - y.a, x.b - y.b}; }
  QE mul(const QE& x, const QE& y) const {
    NFElem bd = x.b * y.b;
    return {x.a * y.a - bd * Q, x.a * y.b + x.b * y.a - bd * P};
  }
  bool zero(const QE& x) const { return x.a.is_zero() && x.b.is_zero(); }
  QE inv(const QE& x) const {
    // conjugate of mu is -P - mu; norm lands in Q(xi)
    NFElem norm = x.a * x.a - x.a * x.b * P + x.b * x.b * Q;
    if (norm.is_zero()) fail(errc::domain, "non-invertible quadratic-extension element");
    NFElem ninv = norm.inverse();
    return {(x.a - x.b * P) * ninv, (-x.b) * ninv};
  }
};

}  // namespace

static MCRSGroup finalize(MCRSGroup g, const IMat& m) {
  g.source = m;
  bool all_real = true, none_real = true;
  for (const auto& l : g.lines) (l.is_real() ? none_real : all_real) = false;
  g.spectrum = all_real ? Spectrum::hyperbolic
                        : (none_real ? Spectrum::complex_pair : Spectrum::mixed);
  return g;
}

static MCRSGroup from_matrix2(const IMat& m) {
  Int tr = m.at(0, 0) + m.at(1, 1);
  Int det = mat_det(m);
  Int disc = tr * tr - 4 * det;
  if (disc == 0) fail(errc::domain, "not regular");
  MCRSGroup g;
  g.n = 2;
  if (disc > 0) {
    QuadraticSurd s = QuadraticSurd::sqrt_of(disc);
    for (int sign : {1, -1}) {
      QuadraticSurd lam = (QuadraticSurd(Rational(tr)) + (sign > 0 ? s : -s)) /
                          QuadraticSurd(Rational(2));
      g.lines.push_back(make_line(eigvec2(m, Complex(Real(lam)))));
    }
  } else {
    QuadraticSurd s = QuadraticSurd::sqrt_of(Int(-disc));
    for (int sign : {1, -1}) {
      Complex lam(Real(make_rat(tr, 2)), Real((sign > 0 ? s : -s) / QuadraticSurd(Rational(2))));
      g.lines.push_back(make_line(eigvec2(m, lam)));
    }
  }
  return finalize(std::move(g), m);
}

static MCRSGroup from_matrix3(const IMat& m) {
  std::vector<Int> cp = char_poly(m);  // monic cubic
  // repeated eigenvalues <=> gcd(p, p') non-constant
  {
    QPoly p;
    for (const auto& c : cp) p.push_back(Rational(c));
    QPoly q = qpoly_derivative(p), r0 = p, r1 = q;
    while (qpoly_degree(r1) > 0) {
      QPoly rem = qpoly_rem(r0, r1);
      r0 = r1;
      r1 = rem;
    }
    if (r1.empty()) fail(errc::domain, "not regular");
  }

  // integer roots (the polynomial is monic, so rational roots are integers
  // dividing the constant term)
  std::vector<Int> int_roots;
  Int c0 = int_abs(cp[0]);
  auto eval = [&](const Int& x) -> Int { return cp[0] + cp[1] * x + cp[2] * x * x + x * x * x; };
  if (c0 == 0) {
    int_roots.push_back(0);
  } else {
    for (Int f = 1; f * f <= c0; ++f)
      if (c0 % f == 0)
        for (const Int& cand : {Int(f), Int(c0 / f), Int(-f), Int(-(c0 / f))})
          if (eval(cand) == 0 &&
              std::find(int_roots.begin(), int_roots.end(), cand) == int_roots.end())
            int_roots.push_back(cand);
  }

  MCRSGroup g;
  g.n = 3;

  if (!int_roots.empty()) {
    // deflate by every rational root, then finish with the quadratic formula
    std::vector<Int> poly = cp;
    std::vector<Complex> lams;
    for (const auto& r : int_roots) {
      lams.emplace_back(Real(Rational(r)));
      // synthetic division of x^3+a2x^2+a1x+a0 (or the deflated quadratic)
      if (poly.size() == 4) {
        Int b2 = poly[3], b1 = poly[2] + r * b2, b0 = poly[1] + r * b1;
        poly = {b0, b1, b2};
      }
    }
    if (lams.size() == 1) {
      // remaining quadratic b2 x^2 + b1 x + b0 with b2 = 1
      Int b1 = poly[1], b0 = poly[0];
      Int disc = b1 * b1 - 4 * b0;
      if (disc > 0) {
        QuadraticSurd s = QuadraticSurd::sqrt_of(disc);
        for (int sign : {1, -1})
          lams.emplace_back(Real((QuadraticSurd(Rational(-b1)) + (sign > 0 ? s : -s)) /
                                 QuadraticSurd(Rational(2))));
      } else {
        QuadraticSurd s = QuadraticSurd::sqrt_of(Int(-disc));
        for (int sign : {1, -1})
          lams.emplace_back(Real(make_rat(-b1, 2)),
                            Real((sign > 0 ? s : -s) / QuadraticSurd(Rational(2))));
      }
    }
    for (const auto& lam : lams) g.lines.push_back(make_line(eigvec3(m, lam)));
    return finalize(std::move(g), m);
  }

  // irreducible cubic
  auto fields = NumberField::real_roots(cp);
  for (const auto& f : fields) {
    NFElem xi = NFElem::generator(f);
    g.lines.push_back(make_line(eigvec3(m, Complex(Real(xi)))));
  }
  if (fields.size() == 1) {
    // complex pair: p(x)/(x - xi) = x^2 + P x + Q over Q(xi)
    FieldPtr f = fields[0];
    NFElem xi = NFElem::generator(f);
    auto rat = [&](const Int& v) { return NFElem::from_rational(f, Rational(v)); };
    QERing ring;
    ring.field = f;
    ring.P = rat(cp[2]) + xi;
    ring.Q = rat(cp[1]) + rat(cp[2]) * xi + xi * xi;

    // eigenvector over the quadratic extension via row cross products
    std::vector<std::vector<QE>> rows(3, std::vector<QE>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        rows[i][j] = ring.from_rat(Rational(m.at(i, j)));
        if (i == j) rows[i][j] = ring.sub(rows[i][j], ring.mu());
      }
    auto cross = [&](int i, int j) {
      const auto &a = rows[i], &b = rows[j];
      return std::vector<QE>{ring.sub(ring.mul(a[1], b[2]), ring.mul(a[2], b[1])),
                             ring.sub(ring.mul(a[2], b[0]), ring.mul(a[0], b[2])),
                             ring.sub(ring.mul(a[0], b[1]), ring.mul(a[1], b[0]))};
    };
    std::vector<QE> v;
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      v = cross(i, j);
      if (!(ring.zero(v[0]) && ring.zero(v[1]) && ring.zero(v[2]))) break;
    }
    // canonicalize exactly in the extension ring, then realize mu numerically
    size_t lead = 0;
    while (lead < 3 && ring.zero(v[lead])) ++lead;
    if (lead == 3) fail(errc::domain, "not regular");
    QE piv_inv = ring.inv(v[lead]);
    for (auto& e : v) e = ring.mul(e, piv_inv);

    Real re_mu = Real(-ring.P) / Real(2);
    NFElem disc = ring.P * ring.P - NFElem::from_rational(f, Rational(4)) * ring.Q;
    Real im_mu = Real(BallReal(-disc).sqrt()) / Real(2);
    for (int sign : {1, -1}) {
      std::vector<Complex> dir;
      for (const auto& e : v)
        dir.emplace_back(Real(e.a) + Real(e.b) * re_mu, Real(e.b) * (Real(sign) * im_mu));
      g.lines.push_back(make_line(std::move(dir)));
    }
  }
  return finalize(std::move(g), m);
}

MCRSGroup group_from_matrix(const IMat& m) {
  if (m.n == 2) return from_matrix2(m);
  if (m.n == 3) return from_matrix3(m);
  fail(errc::domain, "only dimensions 2 and 3 are supported");
}

// ---------- size ----------

Real size_value(const MCRSGroup& a) {
  Int best = -1;
  for (const auto& l : a.lines) {
    if (!l.rational) fail(errc::domain, "not a rational group");
    Int m = 0;
    for (const auto& z : l.primitive) m = std::max(m, z.norm2());
    best = std::max(best, m);
  }
  return Real(Rational(best)).sqrt();
}

bool size_fits(const MCRSGroup& a, const Int& N) {
  Int nn = N * N;
  for (const auto& l : a.lines) {
    if (!l.rational) fail(errc::domain, "not a rational group");
    for (const auto& z : l.primitive)
      if (z.norm2() > nn) return false;
  }
  return true;
}

}  // namespace mcrs
