#include "mcrs/number_field.hpp"

#include <algorithm>

#include "mcrs/error.hpp"

namespace mcrs {

QPoly qpoly_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int qpoly_degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return qpoly_trim(std::move(r));
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return qpoly_trim(std::move(r));
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qpoly_trim(std::move(r));
}

QPoly qpoly_rem(QPoly a, const QPoly& b) {
  if (b.empty()) fail(errc::domain, "polynomial remainder by zero");
  a = qpoly_trim(std::move(a));
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a = qpoly_trim(std::move(a));
  }
  return a;
}

QPoly qpoly_derivative(const QPoly& p) {
  QPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(Rational(static_cast<long>(i)) * p[i]);
  return qpoly_trim(std::move(r));
}

Rational qpoly_eval(const QPoly& p, const Rational& x) {
  Rational v(0);
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

static std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(qpoly_trim(p));
  chain.push_back(qpoly_derivative(p));
  while (!chain.back().empty() && qpoly_degree(chain.back()) > 0) {
    QPoly r = qpoly_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

static int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sgn(qpoly_eval(q, x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
  auto chain = sturm_chain(p);
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

static bool has_rational_root(const std::vector<Int>& ip) {
  // candidates p/q with p | ip[0], q | ip.back() -- fine for the small
  // characteristic polynomials this artifact meets
  Int a0 = int_abs(ip.front()), an = int_abs(ip.back());
  if (a0 == 0) return true;  // x divides
  std::vector<Int> ps, qs;
  for (Int f = 1; f * f <= a0; ++f)
    if (a0 % f == 0) {
      ps.push_back(f);
      ps.push_back(a0 / f);
    }
  for (Int f = 1; f * f <= an; ++f)
    if (an % f == 0) {
      qs.push_back(f);
      qs.push_back(an / f);
    }
  QPoly p;
  for (const auto& c : ip) p.push_back(Rational(c));
  for (const auto& num : ps)
    for (const auto& den : qs) {
      Rational r = make_rat(num, den);
      if (qpoly_eval(p, r) == 0 || qpoly_eval(p, -r) == 0) return true;
    }
  return false;
}

std::vector<FieldPtr> NumberField::real_roots(const std::vector<Int>& int_poly) {
  std::vector<Int> ip = int_poly;
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  int deg = static_cast<int>(ip.size()) - 1;
  if (deg < 2) fail(errc::domain, "number field needs degree >= 2");
  if (deg > 3) fail(errc::domain, "number fields beyond cubic are not supported");
  if (has_rational_root(ip)) fail(errc::domain, "polynomial is reducible over Q");

  QPoly p;
  for (const auto& c : ip) p.push_back(Rational(c));
  // monic normalization
  Rational lead = p.back();
  for (auto& c : p) c /= lead;

  // Cauchy bound, rounded up to an integer so bisection endpoints stay dyadic
  Rational m(0);
  for (int i = 0; i < deg; ++i) m = std::max(m, rat_abs(p[i]));
  Int bound = rat_floor(m) + 2;

  auto chain = sturm_chain(p);
  auto count = [&](const Rational& lo, const Rational& hi) {
    return sign_changes(chain, lo) - sign_changes(chain, hi);
  };

  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> stack{{Rational(-bound), Rational(bound)}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count(lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    // keep endpoints off the roots: p has no rational roots, so mid is safe
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<FieldPtr> out;
  for (auto& [lo, hi] : isolated) {
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->poly_ = p;
    f->ipoly_ = ip;
    // shrink to a sign-change bracket for plain bisection
    Rational a = lo, b = hi;
    while (sgn(qpoly_eval(p, a)) == sgn(qpoly_eval(p, b))) {
      // endpoint sign equal can only happen via a zero eval; nudge inwards
      Rational mid = (a + b) / 2;
      if (count(a, mid) == 1)
        b = mid;
      else
        a = mid;
    }
    f->lo_ = a;
    f->hi_ = b;
    out.push_back(std::move(f));
  }
  return out;
}

DyadicInterval NumberField::enclose(long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  Rational width = hi_ - lo_;
  Rational target = Rational(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(bits));
  int slo = sgn(qpoly_eval(poly_, lo_));
  while (width > target) {
    Rational mid = (lo_ + hi_) / 2;
    int sm = sgn(qpoly_eval(poly_, mid));
    if (sm == 0) fail(errc::domain, "rational root in irreducible field");
    if (sm == slo)
      lo_ = mid;
    else
      hi_ = mid;
    width = hi_ - lo_;
  }
  // endpoints are dyadic by construction (integer start, halving only)
  return {Dyadic(lo_.get_num(), -static_cast<long>(mpz_sizeinbase(lo_.get_den().get_mpz_t(), 2) - 1)),
          Dyadic(hi_.get_num(), -static_cast<long>(mpz_sizeinbase(hi_.get_den().get_mpz_t(), 2) - 1))};
}

std::string NumberField::describe() const {
  std::string s = "root of";
  for (size_t i = 0; i < ipoly_.size(); ++i)
    s += " " + ipoly_[i].get_str() + (i ? "*x^" + std::to_string(i) : "");
  return s;
}

NFElem::NFElem(FieldPtr field, QPoly coeffs) : field_(std::move(field)), c_(qpoly_trim(std::move(coeffs))) {
  if (!field_) fail(errc::domain, "element without a field");
  if (qpoly_degree(c_) >= field_->degree()) c_ = qpoly_rem(std::move(c_), field_->poly());
}

NFElem NFElem::from_rational(FieldPtr field, const Rational& x) {
  return NFElem(std::move(field), x == 0 ? QPoly{} : QPoly{x});
}

NFElem NFElem::generator(FieldPtr field) { return NFElem(std::move(field), QPoly{Rational(0), Rational(1)}); }

Rational NFElem::to_rational() const {
  if (c_.size() > 1) fail(errc::domain, "field element is irrational");
  return c_.empty() ? Rational(0) : c_[0];
}

void NFElem::require_same_field(const NFElem& a, const NFElem& b) {
  if (a.field_ != b.field_) fail(errc::domain, "elements of different number fields");
}

NFElem operator-(const NFElem& a) {
  QPoly c = a.c_;
  for (auto& x : c) x = -x;
  return NFElem(a.field_, std::move(c));
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  NFElem::require_same_field(a, b);
  return NFElem(a.field_, qpoly_add(a.c_, b.c_));
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  NFElem::require_same_field(a, b);
  return NFElem(a.field_, qpoly_sub(a.c_, b.c_));
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  NFElem::require_same_field(a, b);
  return NFElem(a.field_, qpoly_mul(a.c_, b.c_));
}

NFElem NFElem::inverse() const {
  if (is_zero()) fail(errc::domain, "inverse of zero field element");
  // extended Euclid: u*c + v*poly = gcd = const (poly irreducible)
  QPoly r0 = field_->poly(), r1 = c_;
  QPoly u0, u1{Rational(1)};
  while (qpoly_degree(r1) > 0) {
    // quotient of r0 by r1
    QPoly q;
    QPoly rem = r0;
    q.assign(std::max<size_t>(1, r0.size() - r1.size() + 1), Rational(0));
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rational f = rem.back() / r1.back();
      size_t off = rem.size() - r1.size();
      q[off] += f;
      for (size_t i = 0; i < r1.size(); ++i) rem[off + i] -= f * r1[i];
      rem = qpoly_trim(std::move(rem));
    }
    q = qpoly_trim(std::move(q));
    QPoly u2 = qpoly_sub(u0, qpoly_mul(q, u1));
    r0 = r1;
    r1 = rem;
    u0 = u1;
    u1 = u2;
  }
  if (r1.empty()) fail(errc::domain, "field element not invertible (reducible modulus?)");
  Rational lead = r1[0];
  QPoly u = u1;
  for (auto& x : u) x /= lead;
  return NFElem(field_, std::move(u));
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

DyadicInterval NFElem::enclose(long bits) const {
  if (is_rational()) return DyadicInterval::enclose(c_.empty() ? Rational(0) : c_[0], bits);
  long work = bits + 8;
  for (int iter = 0; iter < 64; ++iter) {
    DyadicInterval xi = field_->enclose(work);
    DyadicInterval v = DyadicInterval::point(Dyadic(0));
    for (size_t i = c_.size(); i-- > 0;)
      v = v * xi + DyadicInterval::enclose(c_[i], work);
    if (v.width() <= Dyadic::pow2(-bits - 2)) return v.rounded_out(bits + 2);
    work *= 2;
  }
  fail(errc::precision, "field element enclosure did not converge");
}

int NFElem::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c_[0]);
  for (long bits = 32;; bits *= 2) {
    DyadicInterval v = enclose(bits);
    if (int s = v.sign(); s != 0) return s;
    if (bits > (1L << 22)) fail(errc::precision, "sign of field element undecided");
  }
}

std::string NFElem::to_string() const {
  if (is_rational()) return rat_to_string(c_.empty() ? Rational(0) : c_[0]);
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += rat_to_string(c_[i]);
    if (i == 1) s += "*t";
    if (i > 1) s += "*t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace mcrs
