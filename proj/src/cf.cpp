#include "mcrs/cf.hpp"

#include <map>
#include <tuple>

#include "mcrs/error.hpp"

namespace mcrs {

std::string ContinuedFraction::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (kind == Kind::periodic && i == preperiod) s += "(";
    if (i == 1) s += "; ";
    if (i > 1) s += ", ";
    s += terms[i].get_str();
  }
  if (kind == Kind::periodic) s += ")";
  s += "]";
  if (kind == Kind::streamed) s += "...";
  return s;
}

Rational cf_value(const std::vector<Int>& terms) {
  if (terms.empty()) fail(errc::domain, "value of empty continued fraction");
  Rational v(terms.back());
  for (size_t i = terms.size() - 1; i-- > 0;) v = Rational(terms[i]) + 1 / v;
  return v;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf) {
  std::vector<Convergent> out;
  Int m1 = 1, m0 = 0, n1 = 0, n0 = 1;  // (m_{-1}, m_{-2}), (n_{-1}, n_{-2})
  long idx = 0;
  for (const auto& a : cf.terms) {
    Int m = a * m1 + m0, n = a * n1 + n0;
    out.push_back({m, n, idx++});
    m0 = m1;
    m1 = m;
    n0 = n1;
    n1 = n;
  }
  return out;
}

static ContinuedFraction expand_rational(Rational x) {
  ContinuedFraction cf;
  cf.kind = ContinuedFraction::Kind::finite;
  for (;;) {
    Int a = rat_floor(x);
    cf.terms.push_back(a);
    x -= Rational(a);
    if (x == 0) break;
    x = 1 / x;
  }
  return cf;
}

static ContinuedFraction expand_surd(QuadraticSurd x) {
  // iterate complete quotients; a quadratic irrational has finitely many, so
  // the canonical (p,q,r) state must repeat and the repeat closes the period
  ContinuedFraction cf;
  cf.kind = ContinuedFraction::Kind::periodic;
  std::map<std::tuple<Int, Int, Int>, size_t> seen;
  for (;;) {
    auto key = std::make_tuple(x.p(), x.q(), x.r());
    auto it = seen.find(key);
    if (it != seen.end()) {
      cf.preperiod = it->second;
      cf.terms.resize(seen.size());
      return cf;
    }
    seen[key] = cf.terms.size();
    Int a = x.floor();
    cf.terms.push_back(a);
    x = QuadraticSurd(Rational(1)) / (x - QuadraticSurd(Rational(a)));
  }
}

namespace {

// Certified digit source for any tier; finite expansions set done after the
// last digit.
struct DigitStream {
  Real cur;
  bool done = false;

  explicit DigitStream(Real x) : cur(std::move(x)) {}

  Int next() {
    if (done) fail(errc::domain, "continued fraction exhausted");
    Int a;
    try {
      a = cur.floor();
    } catch (const Error& e) {
      if (e.code() == errc::precision) fail(errc::precision, "undecidable digit");
      throw;
    }
    Real frac = cur - Real(Rational(a));
    if (cur.is_exact() && frac.is_zero())
      done = true;
    else
      cur = Real(1) / frac;
    return a;
  }
};

}  // namespace

ContinuedFraction cf_expand(const Real& x, long max_terms) {
  if (max_terms < 1) fail(errc::domain, "max_terms must be positive");
  if (x.is_rational()) return expand_rational(x.as_rational());
  if (x.is_surd()) return expand_surd(x.as_surd());
  ContinuedFraction cf;
  cf.kind = ContinuedFraction::Kind::streamed;
  DigitStream ds(x);
  for (long i = 0; i < max_terms && !ds.done; ++i) cf.terms.push_back(ds.next());
  if (ds.done) cf.kind = ContinuedFraction::Kind::finite;
  return cf;
}

// Largest j >= 0 with |c + j*s| <= N (s != 0), or N itself as a cap when s == 0.
static Int max_shift(const Int& c, const Int& s, const Int& N) {
  if (s == 0) return N;
  if (s > 0) return floor_div(N - c, s);
  return floor_div(c + N, -s);
}

Rational simplest_in_open_interval(const Real& lo, const Real& hi) {
  if (Real::cmp(lo, hi) >= 0) fail(errc::domain, "empty interval");
  Int a = lo.floor();
  // integers in (lo, hi): pick the one nearest zero (smallest size)
  Int first = a + 1;  // smallest integer strictly above lo
  if (Real::cmp(Real(first), hi) < 0) {
    if (first <= 0 && Real::cmp(Real(0), hi) < 0 && lo.sign() < 0) return Rational(0);
    if (first > 0) return Rational(first);
    // interval entirely below zero: take the largest integer strictly below hi
    Int last = -((-hi).floor()) - 1;  // = ceil(hi) - 1 for non-integer hi
    while (Real::cmp(Real(last), hi) >= 0) --last;
    return Rational(last);
  }
  // no integer inside: recurse on the flipped fractional parts
  Real fl = lo - Real(a);
  if (fl.is_exact() && fl.is_zero()) {
    // interval (a, hi): the winner is a + 1/k for the least valid k
    Int k = (Real(1) / (hi - Real(a))).floor() + 1;
    return Rational(a) + make_rat(1, k);
  }
  Rational inner = simplest_in_open_interval(Real(1) / (hi - Real(a)), Real(1) / fl);
  return Rational(a) + 1 / inner;
}

BoxApprox best_dioph_in_box(const Real& x, const Int& N) {
  if (N < 1) fail(errc::domain, "box bound must be positive");
  auto fits = [&](const Int& m, const Int& n) { return int_abs(m) <= N && n <= N; };
  auto err = [&](const Convergent& c) { return (x - Real(c.value())).abs(); };
  auto first_better = [&](const Convergent& best) {
    Real e = err(best);
    Rational f = simplest_in_open_interval(x - e, x + e);
    return Convergent{f.get_num(), f.get_den(), best.index + 1};
  };

  if (x.is_rational()) {
    const Rational& r = x.as_rational();
    if (fits(r.get_num(), r.get_den())) {
      Convergent c{r.get_num(), r.get_den(), 0};
      return {c, c, true};
    }
  }

  DigitStream ds(x);
  Int a0 = ds.next();
  if (int_abs(a0) > N) {
    // x is outside [-N, N]; the closest box fraction is the nearest endpoint
    Convergent best{a0 > 0 ? N : -N, 1, 0};
    return {best, first_better(best), false};
  }

  Int m0 = 1, n0 = 0;       // previous convergent
  Int m1 = a0, n1 = Int(1);  // current convergent
  long idx = 0;
  bool have_next_digit = false;
  Int a_next;
  while (!ds.done) {
    a_next = ds.next();
    have_next_digit = true;
    Int m2 = a_next * m1 + m0, n2 = a_next * n1 + n0;
    if (!fits(m2, n2)) break;
    m0 = m1;
    n0 = n1;
    m1 = m2;
    n1 = n2;
    ++idx;
    have_next_digit = false;
  }

  Convergent conv{m1, n1, idx};
  if (!have_next_digit) return {conv, conv, true};  // expansion ended inside the box

  // semiconvergents m0 + j*m1 / n0 + j*n1 for 0 <= j <= a_next; the largest
  // in-box one competes with the last convergent
  Int jm = std::min(max_shift(m0, m1, N), max_shift(n0, n1, N));
  if (jm > a_next) jm = a_next;  // cannot pass the next convergent
  if (jm < 0) jm = 0;
  auto semi = [&](const Int& j) { return Convergent{m0 + j * m1, n0 + j * n1, idx + 1}; };

  Convergent best = conv;
  if (jm >= 1 && Real::cmp(err(semi(jm)), err(conv)) < 0) best = semi(jm);
  return {best, first_better(best), false};
}

std::vector<Rational> classical_best_sequence(const Real& alpha, long max_terms) {
  if (alpha.sign() < 0 || Real::cmp(alpha, Real(1)) > 0)
    fail(errc::domain, "alpha must lie in [0, 1]");
  ContinuedFraction cf = cf_expand(alpha, max_terms);
  if (cf.kind == ContinuedFraction::Kind::periodic) {
    // unroll the period so every truncation up to max_terms is covered
    size_t plen = cf.period_length();
    while (cf.terms.size() < static_cast<size_t>(max_terms))
      cf.terms.push_back(cf.terms[cf.terms.size() - plen]);
  }
  auto convs = convergents(cf);
  std::vector<Rational> out;
  for (const auto& c : convs) {
    if (c.index == 0 && !(convs.size() == 1)) continue;  // skip 0/1 unless alpha is 0 or 1
    out.push_back(c.value());
  }
  if (cf.kind == ContinuedFraction::Kind::finite && cf.terms.size() >= 2) {
    std::vector<Int> alt = cf.terms;
    alt.back() -= 1;
    if (alt.back() == 0) alt.pop_back();
    out.push_back(cf_value(alt));
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    return a.get_den() < b.get_den() || (a.get_den() == b.get_den() && a < b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mcrs
