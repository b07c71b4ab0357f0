#include "mcrs/approx2d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "mcrs/cf.hpp"
#include "mcrs/error.hpp"
#include "mcrs/gaussian.hpp"
#include "mcrs/sails.hpp"

namespace mcrs {

namespace {

// ---------------------------------------------------------------------------
// Small utilities.

std::optional<int> try_cmp(const Real& a, const Real& b) {
  try {
    return Real::cmp(a, b);
  } catch (const Error& e) {
    if (e.code() == errc::precision) return std::nullopt;
    throw;
  }
}

bool certainly_greater(const Real& a, const Real& b) {
  auto c = try_cmp(a, b);
  return c && *c > 0;
}

long bits_for(const Rational& eps) {
  double d = eps.get_d();
  if (!(d > 0)) return 512;
  long extra = static_cast<long>(std::ceil(-std::log2(d)));
  return std::min<long>(8192, 64 + std::max<long>(0, extra));
}

Rational upper_rat(const Real& x, long bits) { return x.enclose(bits).hi.to_rational(); }
Rational lower_rat(const Real& x, long bits) { return x.enclose(bits).lo.to_rational(); }

// Closed rational interval with exact endpoint arithmetic.
struct RInt {
  Rational lo, hi;
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};

RInt renclose(const Real& x, long bits) { return {lower_rat(x, bits), upper_rat(x, bits)}; }

RInt rneg(const RInt& a) { return {-a.hi, -a.lo}; }

RInt rmul(const RInt& a, const RInt& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

RInt rsub(const RInt& a, const RInt& b) { return {a.lo - b.hi, a.hi - b.lo}; }

// Requires b sign-definite.
RInt rdiv(const RInt& a, const RInt& b) {
  RInt inv{Rational(1) / b.hi, Rational(1) / b.lo};
  return rmul(a, inv);
}

bool rintersect(RInt& a, const RInt& b) {
  a.lo = std::max(a.lo, b.lo);
  a.hi = std::min(a.hi, b.hi);
  return a.lo <= a.hi;
}

Rational sqrt_upper(const Rational& x, long bits) {
  if (x <= 0) return Rational(0);
  return DyadicInterval::enclose(x, bits).sqrt(bits).hi.to_rational();
}

Rational sqrt_lower(const Rational& x, long bits) {
  if (x <= 0) return Rational(0);
  Rational r = DyadicInterval::enclose(x, bits).sqrt(bits).lo.to_rational();
  return r < 0 ? Rational(0) : r;
}

int thread_count() {
  const char* env = std::getenv("MCRS_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t < 1 ? 1 : std::min(t, 64);
}

// ---------------------------------------------------------------------------
// Enumeration of reduced fractions p/q with q >= 1, |p| <= N, q <= N inside a
// closed interval, by mediant descent with batched same-direction steps.

void mediant_descent(Int lp, Int lq, Int rp, Int rq, const Rational& lo, const Rational& hi,
                     const Int& N, std::vector<Rational>& out) {
  while (true) {
    Int mp = lp + rp, mq = lq + rq;
    if (mp > N || mq > N) return;
    Rational m(mp, mq);  // already reduced: mediants of neighbours are in lowest terms
    if (m < lo) {
      // Batch right steps: smallest t >= 1 with (lp + t rp)/(lq + t rq) >= lo.
      Int A = rp * lo.get_den() - lo.get_num() * rq;
      if (A <= 0) return;
      Int B = lo.get_num() * lq - lp * lo.get_den();
      Int t = B > 0 ? Int((B + A - 1) / A) : Int(1);
      if (t < 1) t = 1;
      lp += (t - 1) * rp;
      lq += (t - 1) * rq;
      if (lp + rp > N || lq + rq > N) return;
      continue;
    }
    if (hi < m) {
      // Batch left steps: smallest t >= 1 with (t lp + rp)/(t lq + rq) <= hi.
      Int A = hi.get_num() * lq - lp * hi.get_den();
      if (A <= 0) return;
      Int B = rp * hi.get_den() - hi.get_num() * rq;
      Int t = B > 0 ? Int((B + A - 1) / A) : Int(1);
      if (t < 1) t = 1;
      rp += (t - 1) * lp;
      rq += (t - 1) * lq;
      if (lp + rp > N || lq + rq > N) return;
      continue;
    }
    out.push_back(m);
    mediant_descent(lp, lq, mp, mq, lo, hi, N, out);
    lp = mp;
    lq = mq;
  }
}

std::vector<Rational> fractions_in_box(const Rational& lo, const Rational& hi, const Int& N) {
  std::vector<Rational> out;
  if (lo > hi || N < 1) return out;
  if (lo <= 0 && 0 <= hi) out.push_back(Rational(0));
  if (hi > 0) mediant_descent(Int(0), Int(1), Int(1), Int(0), std::max(lo, Rational(0)), hi, N, out);
  if (lo < 0) {
    std::vector<Rational> neg;
    mediant_descent(Int(0), Int(1), Int(1), Int(0), std::max(Rational(-hi), Rational(0)),
                    Rational(-lo), N, neg);
    for (const auto& f : neg) out.push_back(-f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Candidate representation: two lines, each spanned by a Gaussian integer
// vector (re1, im1, re2, im2). Real lines have zero imaginary parts.

using CandLine = std::array<Int, 4>;
using CandLines = std::array<CandLine, 2>;

CandLines make_candidate(CandLine l1, CandLine l2) {
  if (l2 < l1) std::swap(l1, l2);
  return {l1, l2};
}

std::string cand_to_string(const CandLines& c) {
  std::string s = "(";
  for (int i = 0; i < 2; ++i) {
    s += i ? "; " : "";
    s += "[" + c[i][0].get_str() + (c[i][1] != 0 ? "+" + c[i][1].get_str() + "i" : "") + ", " +
         c[i][2].get_str() + (c[i][3] != 0 ? "+" + c[i][3].get_str() + "i" : "") + "]";
  }
  return s + ")";
}

MDForm candidate_form(const CandLines& c) {
  auto C = [](const Int& re, const Int& im) { return Complex(Real(re), Real(im)); };
  Complex a1 = C(c[0][0], c[0][1]), b1 = C(c[0][2], c[0][3]);
  Complex a2 = C(c[1][0], c[1][1]), b2 = C(c[1][2], c[1][3]);
  Complex D = a1 * b2 - a2 * b1;
  MDForm f;
  f.n = 2;
  f.coeff = {b1 * b2 / D, -(b1 * a2 + a1 * b2) / D, a1 * a2 / D};
  f.canonicalize_sign();
  return f;
}

MCRSGroup candidate_group(const CandLines& c) {
  std::vector<std::vector<Complex>> dirs;
  for (const auto& l : c)
    dirs.push_back({Complex(Real(l[0]), Real(l[1])), Complex(Real(l[2]), Real(l[3]))});
  return group_from_lines(std::move(dirs));
}

// Squared discrepancy: stays in the exact tiers (rational, surd, field), so
// equality of tied candidates is decidable; the square root is taken only on
// the final reported value.
std::pair<Real, Branch> discrepancy2(const MDForm& f1, const MDForm& f2) {
  auto branch_max2 = [&](int sign) {
    Real best(0);
    for (size_t k = 0; k < f1.coeff.size(); ++k) {
      Complex d = sign > 0 ? f1.coeff[k] + f2.coeff[k] : f1.coeff[k] - f2.coeff[k];
      Real m2 = d.norm2();
      if (Real::cmp(m2, best) > 0) best = m2;
    }
    return best;
  };
  Real diff2 = branch_max2(-1);
  Real sum2 = branch_max2(+1);
  if (Real::cmp(diff2, sum2) <= 0) return {diff2, Branch::difference};
  return {sum2, Branch::sum};
}

std::array<std::complex<double>, 3> candidate_coeffs_d(const CandLines& c) {
  auto C = [](const Int& re, const Int& im) {
    return std::complex<double>(re.get_d(), im.get_d());
  };
  std::complex<double> a1 = C(c[0][0], c[0][1]), b1 = C(c[0][2], c[0][3]);
  std::complex<double> a2 = C(c[1][0], c[1][1]), b2 = C(c[1][2], c[1][3]);
  std::complex<double> D = a1 * b2 - a2 * b1;
  return {b1 * b2 / D, -(b1 * a2 + a1 * b2) / D, a1 * a2 / D};
}

double rho_double(const std::array<std::complex<double>, 3>& t,
                  const std::array<std::complex<double>, 3>& w) {
  double diff = 0, sum = 0;
  for (int i = 0; i < 3; ++i) {
    diff = std::max(diff, std::abs(t[i] - w[i]));
    sum = std::max(sum, std::abs(t[i] + w[i]));
  }
  return std::min(diff, sum);
}

// ---------------------------------------------------------------------------
// Exact minimum over a candidate stream. A floating pre-screen with an
// explicit error allowance keeps only candidates whose screened value can
// reach the minimum; the allowance (1e-9 of the coefficient magnitude) exceeds
// the worst-case rounding of the dozen double operations involved by more
// than five orders of magnitude, so no true minimizer is ever screened out.
// Survivors are then compared with exact arithmetic, so the returned value
// and tie set are exact.

struct ScreenEntry {
  CandLines cand;
  double rho_d;
  double err;
};

class MinSearch {
 public:
  explicit MinSearch(const MDForm& target_form) : tf_(target_form) {
    for (int i = 0; i < 3; ++i) {
      tcd_[i] = std::complex<double>(tf_.coeff[i].re.to_double(), tf_.coeff[i].im.to_double());
      tmag_ = std::max(tmag_, std::abs(tcd_[i]));
    }
  }

  void offer(const CandLines& c) {
    auto wc = candidate_coeffs_d(c);
    double mc = 0;
    for (const auto& w : wc) mc = std::max(mc, std::abs(w));
    double err = 1e-9 * (1 + tmag_ + mc);
    double rd = rho_double(tcd_, wc);
    dmin_plus_ = std::min(dmin_plus_, rd + err);
    if (rd - err <= dmin_plus_) {
      pool_.push_back({c, rd, err});
      if (pool_.size() > 8192) compact();
    }
  }

  void merge(MinSearch&& other) {
    dmin_plus_ = std::min(dmin_plus_, other.dmin_plus_);
    pool_.insert(pool_.end(), other.pool_.begin(), other.pool_.end());
    compact();
  }

  size_t offered_pool_size() const { return pool_.size(); }

  // Exact pass: returns the optimal discrepancy and all tied candidates,
  // sorted by their defining vectors.
  std::pair<DiscrepancyValue, std::vector<CandLines>> finalize() {
    compact();
    std::sort(pool_.begin(), pool_.end(),
              [](const ScreenEntry& a, const ScreenEntry& b) { return a.cand < b.cand; });
    std::optional<std::pair<Real, Branch>> best;
    std::vector<CandLines> ties;
    for (const auto& e : pool_) {
      auto dv = discrepancy2(tf_, candidate_form(e.cand));
      if (!best) {
        best = dv;
        ties = {e.cand};
        continue;
      }
      auto c = try_cmp(dv.first, best->first);
      if (!c)
        fail(errc::precision, "tie undecidable at maximum precision between candidates " +
                                  cand_to_string(ties.front()) + " and " + cand_to_string(e.cand));
      if (*c < 0) {
        best = dv;
        ties = {e.cand};
      } else if (*c == 0) {
        ties.push_back(e.cand);
      }
    }
    if (!best) fail(errc::domain, "no candidate of the requested size exists");
    return {DiscrepancyValue{best->first.sqrt(), best->second}, std::move(ties)};
  }

 private:
  void compact() {
    pool_.erase(std::remove_if(pool_.begin(), pool_.end(),
                               [&](const ScreenEntry& e) { return e.rho_d - e.err > dmin_plus_; }),
                pool_.end());
  }

  const MDForm& tf_;
  std::array<std::complex<double>, 3> tcd_{};
  double tmag_ = 0;
  double dmin_plus_ = std::numeric_limits<double>::infinity();
  std::vector<ScreenEntry> pool_;
};

// Deterministic parallel reduction over a materialized candidate list: the
// final exact pass filters a pool that is a superset of every candidate able
// to reach the minimum, so the result does not depend on the chunking.
std::pair<DiscrepancyValue, std::vector<CandLines>> minimize_candidates(
    const MDForm& tf, const std::vector<CandLines>& cands) {
  int T = thread_count();
  if (T <= 1 || cands.size() < 1024) {
    MinSearch s(tf);
    for (const auto& c : cands) s.offer(c);
    return s.finalize();
  }
  std::vector<MinSearch> locals;
  locals.reserve(T);
  for (int i = 0; i < T; ++i) locals.emplace_back(tf);
  std::vector<std::thread> threads;
  size_t chunk = (cands.size() + T - 1) / T;
  for (int i = 0; i < T; ++i) {
    size_t lo = i * chunk, hi = std::min(cands.size(), lo + chunk);
    threads.emplace_back([&, lo, hi, i]() {
      for (size_t j = lo; j < hi; ++j) locals[i].offer(cands[j]);
    });
  }
  for (auto& t : threads) t.join();
  MinSearch s(tf);
  for (auto& l : locals) s.merge(std::move(l));
  return s.finalize();
}

ApproxResult assemble_result(const Int& N, std::pair<DiscrepancyValue, std::vector<CandLines>> m,
                             std::optional<PruningCertificate> cert) {
  ApproxResult r;
  r.N = N;
  r.rho = std::move(m.first);
  r.certificate = std::move(cert);
  for (const auto& c : m.second) r.minimizers.push_back(candidate_group(c));
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of every rational planar group of size <= N: all
// pairs of distinct real rational lines plus all conjugate pairs of Gaussian
// lines. The reference path; also the fallback when no pruning certificate
// applies.

std::vector<CandLine> real_primitive_vectors(const Int& N) {
  std::vector<CandLine> v;
  long n = N.get_si();
  v.push_back({Int(0), Int(0), Int(1), Int(0)});  // the vertical line
  for (long a = 1; a <= n; ++a)
    for (long b = -n; b <= n; ++b)
      if (std::gcd(a, std::abs(b)) == 1) v.push_back({Int(a), Int(0), Int(b), Int(0)});
  return v;
}

// Conjugate-pair candidates, one line per group (the second line is the
// conjugate): primitive Gaussian vectors (v, u) with |v|, |u| <= N and
// Im(u/v) > 0, canonicalized.
void append_conjugate_pair(std::vector<CandLines>& out, const GaussianInt& v,
                           const GaussianInt& u) {
  auto prim = gaussian_primitive({v, u});
  CandLine l1{prim[0].re, prim[0].im, prim[1].re, prim[1].im};
  CandLine l2{prim[0].re, -prim[0].im, prim[1].re, -prim[1].im};
  out.push_back(make_candidate(l1, l2));
}

std::vector<CandLines> conjugate_candidates_all(const Int& N) {
  std::vector<CandLines> out;
  long n = N.get_si();
  Int n2 = N * N;
  std::set<CandLines> seen;
  for (long vr = 0; vr <= n; ++vr)
    for (long vi = (vr == 0 ? 1 : 0); vi <= n; ++vi) {
      GaussianInt v(vr, vi);
      if (v.norm2() > n2) continue;
      for (long ur = -n; ur <= n; ++ur)
        for (long ui = -n; ui <= n; ++ui) {
          GaussianInt u(ur, ui);
          if (u.norm2() > n2) continue;
          // Im(u/v) > 0 <=> Im(u * conj(v)) > 0; also drops real ratios.
          if (ui * vr - ur * vi <= 0) continue;
          if (!gaussian_gcd(v, u).is_unit()) continue;
          std::vector<CandLines> one;
          append_conjugate_pair(one, v, u);
          if (seen.insert(one[0]).second) out.push_back(one[0]);
        }
    }
  return out;
}

std::vector<CandLines> exhaustive_candidates(const Int& N) {
  if (N > 150)
    fail(errc::precision,
         "full enumeration is infeasible at this size and no pruning certificate applies");
  std::vector<CandLines> cands;
  auto vecs = real_primitive_vectors(N);
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = i + 1; j < vecs.size(); ++j) cands.push_back(make_candidate(vecs[i], vecs[j]));
  auto conj = conjugate_candidates_all(N);
  cands.insert(cands.end(), conj.begin(), conj.end());
  return cands;
}

ApproxResult exhaustive_search(const MCRSGroup& target, const Int& N) {
  MDForm tf = md_form(target);
  auto cands = exhaustive_candidates(N);
  return assemble_result(N, minimize_candidates(tf, cands), std::nullopt);
}

void check_query(const ApproxQuery& q) {
  if (q.target.n != 2) fail(errc::domain, "planar approximation needs a 2x2 group");
  if (q.N < 1) fail(errc::domain, "size bound must be positive");
}

bool trivially_self(const ApproxQuery& q, ApproxResult& out) {
  if (!q.target.rational() || !size_fits(q.target, q.N)) return false;
  out.N = q.N;
  out.rho = {Real(0), Branch::difference};
  out.minimizers = {q.target};
  return true;
}

// ---------------------------------------------------------------------------
// Hyperbolic targets.

// Extracts the slope of a non-vertical real eigenline.
Real line_slope(const EigenLine& l) {
  if (l.dir.size() != 2) fail(errc::domain, "planar approximation needs a 2x2 group");
  if (l.dir[0].re.is_exact() && l.dir[0].re.is_zero())
    fail(errc::domain, "vertical eigenline: use the classical single-slope chart");
  return l.dir[1].re / l.dir[0].re;
}

struct SlopeBox {
  RInt interval;   // confinement of the candidate slope
  Real radius;     // certified radius around the target slope
  Real phi_cap;    // admission threshold on |Phi(p,q)|/q^2
};

ApproxResult best_approx_hyperbolic_impl(const ApproxQuery& q) {
  ApproxResult trivial;
  if (trivially_self(q, trivial)) return trivial;

  Real a1 = line_slope(q.target.lines[0]);
  Real a2 = line_slope(q.target.lines[1]);
  Real d = a1 - a2, ad = d.abs();
  MDForm tf = md_form(q.target);

  // Step 1: best single-slope approximations inside the box, with the first
  // better fraction outside it.
  BoxApprox b1 = best_dioph_in_box(a1, q.N);
  BoxApprox b2 = best_dioph_in_box(a2, q.N);

  // Step 2: a discrepancy upper bound from the seed candidate with the two
  // boxed slopes. Exactly represented slopes contribute no perturbation.
  auto side_eps = [](const BoxApprox& b) {
    return b.exact ? Rational(0) : make_rat(Int(1), b.best.n * b.next.n);
  };
  Rational eps2 = std::max(side_eps(b1), side_eps(b2));
  long dbits = bits_for(eps2 > 0 ? eps2 : Rational(1, 1000)) + 32;
  eps2 = std::max(eps2, upper_rat((a1 - Real(b1.best.value())).abs(), dbits));
  eps2 = std::max(eps2, upper_rat((a2 - Real(b2.best.value())).abs(), dbits));
  if (eps2 <= 0) return exhaustive_search(q.target, q.N);

  // Only the seed candidate's exact discrepancy is used as the certificate:
  // it is a true value of the objective, so it bounds the optimum by
  // construction; estimate formulas can undershoot when the perturbation is
  // comparable to the slope gap.
  std::optional<Real> rho_ub2;  // squared, to stay in the exact tiers
  if (b1.best.value() != b2.best.value()) {
    CandLines seed = make_candidate({b1.best.n, Int(0), b1.best.m, Int(0)},
                                    {b2.best.n, Int(0), b2.best.m, Int(0)});
    rho_ub2 = discrepancy2(tf, candidate_form(seed)).first;
  }

  // Gate: the bound must separate the target's leading coefficient from zero;
  // past it, every vertical-line and every conjugate-pair candidate is also
  // certifiably worse, so only slope pairs remain.
  if (!rho_ub2) return exhaustive_search(q.target, q.N);
  long gbits = bits_for(upper_rat(*rho_ub2, 128)) / 2 + 64;
  RInt t2 = renclose(Real(1) / d, gbits);
  Rational eps_hi = sqrt_upper(upper_rat(*rho_ub2, 2 * gbits), gbits);
  Rational inv_d_lo = std::min(rat_abs(t2.lo), rat_abs(t2.hi));
  if (t2.contains_zero() || eps_hi >= inv_d_lo) return exhaustive_search(q.target, q.N);
  // Slack above the bound keeps candidates that tie with it exactly; it must
  // be relative, or the confinement interval stops shrinking with the bound.
  Rational eps_r = eps_hi > 0 ? Rational(eps_hi * 1025 / 1024) : Rational(inv_d_lo / 1024);
  eps_r = std::min(eps_r, Rational((eps_hi + inv_d_lo) / 2));

  // Step 3: confine the two candidate slopes. The coefficient enclosures give
  // intervals for the sum and product of the slopes, hence for each slope;
  // the dedicated radius bound is intersected in when its preconditions hold.
  RInt K0 = renclose(tf.coeff[0].re, gbits);
  RInt K1 = renclose(tf.coeff[1].re, gbits);
  RInt K2 = renclose(tf.coeff[2].re, gbits);
  K0 = {K0.lo - eps_r, K0.hi + eps_r};
  K1 = {K1.lo - eps_r, K1.hi + eps_r};
  K2 = {K2.lo - eps_r, K2.hi + eps_r};
  if (K2.contains_zero()) return exhaustive_search(q.target, q.N);
  RInt S = rneg(rdiv(K1, K2));
  RInt P = rdiv(K0, K2);
  RInt disc = rsub(rmul(S, S), {4 * P.lo, 4 * P.hi});
  if (disc.hi <= 0) return exhaustive_search(q.target, q.N);
  RInt sq{sqrt_lower(disc.lo, gbits), sqrt_upper(disc.hi, gbits)};
  RInt Iplus{(S.lo + sq.lo) / 2, (S.hi + sq.hi) / 2};
  RInt Iminus{(S.lo - sq.hi) / 2, (S.hi - sq.lo) / 2};
  auto c12 = try_cmp(a1, a2);
  if (!c12) return exhaustive_search(q.target, q.N);
  std::array<RInt, 2> I = (*c12 > 0) ? std::array<RInt, 2>{Iplus, Iminus}
                                     : std::array<RInt, 2>{Iminus, Iplus};

  bool ok = true;
  std::array<Real, 2> alphas{a1, a2};
  if (a1.sign() != 0 && a2.sign() != 0) {
    auto db = delta_bound_from_eps(a1, a2, Real(eps_r));
    for (int i = 0; i < 2; ++i) {
      RInt ai = renclose(alphas[i], gbits);
      Rational dr = upper_rat(db[i], gbits);
      ok = ok && rintersect(I[i], {ai.lo - dr, ai.hi + dr});
    }
  }
  Rational Nr(q.N);
  for (int i = 0; i < 2; ++i) ok = ok && rintersect(I[i], {-Nr, Nr});
  if (!ok) return exhaustive_search(q.target, q.N);
  // The two confinement intervals must separate the slopes.
  if (I[0].lo <= I[1].hi && I[1].lo <= I[0].hi) return exhaustive_search(q.target, q.N);

  // Step 4: cap |Phi(p,q)|/q^2 for admitted slopes.
  std::array<SlopeBox, 2> side;
  for (int i = 0; i < 2; ++i) {
    side[i].interval = I[i];
    side[i].radius = max(Real(I[i].hi) - alphas[i], alphas[i] - Real(I[i].lo));
    Real factor = phi_over_q2_bound(a1, a2, side[i].radius, i + 1);
    side[i].phi_cap = side[i].radius / factor;
  }

  // Step 5: enumerate admitted slopes, filter by the cap, compare exactly.
  std::array<std::vector<Rational>, 2> slopes;
  for (int i = 0; i < 2; ++i) {
    auto fr = fractions_in_box(I[i].lo, I[i].hi, q.N);
    for (const auto& s : fr) {
      Real p(s.get_num()), qq(s.get_den());
      Real phi_q2 = ((p - a1 * qq).abs() * (p - a2 * qq).abs()) / (ad * qq * qq);
      if (!certainly_greater(phi_q2, side[i].phi_cap)) slopes[i].push_back(s);
    }
  }
  std::vector<CandLines> cands;
  for (const auto& s1 : slopes[0])
    for (const auto& s2 : slopes[1])
      cands.push_back(make_candidate({s1.get_den(), Int(0), s1.get_num(), Int(0)},
                                     {s2.get_den(), Int(0), s2.get_num(), Int(0)}));
  if (cands.empty()) return exhaustive_search(q.target, q.N);

  PruningCertificate cert;
  cert.eps2 = eps2;
  cert.rho_upper = Real(eps_r);
  cert.delta = {side[0].radius, side[1].radius};
  cert.phi_cap = {side[0].phi_cap, side[1].phi_cap};
  return assemble_result(q.N, minimize_candidates(tf, cands), cert);
}

// ---------------------------------------------------------------------------
// Conjugate-pair targets.

ApproxResult best_approx_complex_impl(const ApproxQuery& q) {
  ApproxResult trivial;
  if (trivially_self(q, trivial)) return trivial;

  // Pick the eigenline with positive imaginary slope part.
  Real alpha(0), beta(0);
  bool found = false;
  for (const auto& l : q.target.lines) {
    if (l.dir[0].re.is_exact() && l.dir[0].re.is_zero()) continue;
    Complex slope = l.dir[1] / l.dir[0];
    if (slope.im.sign() > 0) {
      alpha = slope.re;
      beta = slope.im;
      found = true;
    }
  }
  if (!found) fail(errc::domain, "not complex-pair");
  MDForm tf = md_form(q.target);

  // Step 1: boxed approximations of the real and imaginary slope parts.
  BoxApprox b1 = best_dioph_in_box(alpha, q.N);
  BoxApprox b2 = best_dioph_in_box(beta, q.N);

  // Step 2: a discrepancy upper bound from a seed candidate inside the size
  // bound. The componentwise seed may exceed the bound after clearing
  // denominators, so real-denominator seeds u/n are tried as well.
  auto side_eps = [](const BoxApprox& b) {
    return b.exact ? Rational(0) : make_rat(Int(1), b.best.n * b.next.n);
  };
  Rational eps2 = std::max(side_eps(b1), side_eps(b2));
  long dbits = bits_for(eps2 > 0 ? eps2 : Rational(1, 1000)) + 32;
  eps2 = std::max(eps2, upper_rat((alpha - Real(b1.best.value())).abs(), dbits));
  eps2 = std::max(eps2, upper_rat((beta - Real(b2.best.value())).abs(), dbits));
  if (eps2 <= 0) return exhaustive_search(q.target, q.N);

  // As in the real-slope path, the certificate uses only exact discrepancies
  // of admissible seed candidates.
  std::optional<Real> rho_ub2;  // squared, to stay in the exact tiers
  auto consider_bound2 = [&](const Real& r2) {
    if (!rho_ub2) {
      rho_ub2 = r2;
      return;
    }
    auto c = try_cmp(r2, *rho_ub2);
    if (c && *c < 0) rho_ub2 = r2;
  };
  auto consider_seed = [&](const GaussianInt& v, const GaussianInt& u) {
    if (v.is_zero() || u.im * v.re - u.re * v.im == 0) return;
    auto prim = gaussian_primitive({v, u});
    Int n2 = q.N * q.N;
    if (prim[0].norm2() > n2 || prim[1].norm2() > n2) return;
    std::vector<CandLines> one;
    append_conjugate_pair(one, v, u);
    consider_bound2(discrepancy2(tf, candidate_form(one[0])).first);
  };
  {
    GaussianInt v(b1.best.n * b2.best.n, Int(0));
    GaussianInt u(b1.best.m * b2.best.n, b2.best.m * b1.best.n);
    GaussianInt g = gaussian_gcd(v, u);
    if (!g.is_zero()) consider_seed(v, u);
  }
  for (const Int& n : {b1.best.n, b2.best.n, Int(b1.best.n * b2.best.n), q.N}) {
    if (n < 1 || n > q.N) continue;
    long rbits = 96;
    Int ur = rat_round(Rational(upper_rat(alpha * Real(n), rbits) +
                                lower_rat(alpha * Real(n), rbits)) /
                       2);
    Int ui = rat_round(Rational(upper_rat(beta * Real(n), rbits) +
                                lower_rat(beta * Real(n), rbits)) /
                       2);
    consider_seed(GaussianInt(n, Int(0)), GaussianInt(ur, ui));
  }
  if (!rho_ub2) return exhaustive_search(q.target, q.N);

  // Gate on the leading-coefficient modulus 1/(2 beta); past it the candidate
  // must also be a conjugate pair.
  long gbits = bits_for(upper_rat(*rho_ub2, 128)) / 2 + 64;
  RInt T2 = renclose(Real(1) / (2 * beta), gbits);
  Rational eps_hi = sqrt_upper(upper_rat(*rho_ub2, 2 * gbits), gbits);
  if (T2.lo <= 0 || eps_hi >= T2.lo) return exhaustive_search(q.target, q.N);
  // Relative slack above the bound keeps exactly-tied candidates admissible.
  Rational eps_r = eps_hi > 0 ? Rational(eps_hi * 1025 / 1024) : Rational(T2.lo / 1024);
  eps_r = std::min(eps_r, Rational((eps_hi + T2.lo) / 2));

  // Step 3: confine Re and Im of the candidate ratio.
  RInt K0 = renclose((alpha * alpha + beta * beta) / (2 * beta), gbits);
  RInt K1 = renclose(-alpha / beta, gbits);
  RInt K2 = T2;
  K0 = {K0.lo - eps_r, K0.hi + eps_r};
  K1 = {K1.lo - eps_r, K1.hi + eps_r};
  K2 = {K2.lo - eps_r, K2.hi + eps_r};
  if (K2.contains_zero()) return exhaustive_search(q.target, q.N);
  RInt Iy{Rational(1) / (2 * K2.hi), Rational(1) / (2 * K2.lo)};
  RInt Ix = rneg(rdiv(K1, K2));
  Ix = {Ix.lo / 2, Ix.hi / 2};
  bool ok = true;
  // Intersect with the dedicated radius bounds when they certify anything.
  try {
    auto db = conj_delta_bound_from_eps(alpha, beta, Real(eps_r));
    Real safe = max(db[0], db[1]);  // valid for both components
    RInt ar = renclose(alpha, gbits), br = renclose(beta, gbits);
    Rational sr = upper_rat(safe, gbits);
    ok = ok && rintersect(Ix, {ar.lo - sr, ar.hi + sr});
    ok = ok && rintersect(Iy, {br.lo - sr, br.hi + sr});
  } catch (const Error& e) {
    if (e.code() != errc::domain) throw;
  }
  Rational Nr(q.N);
  ok = ok && rintersect(Ix, {-Nr, Nr}) && rintersect(Iy, {Rational(0), Nr});
  if (!ok || Iy.lo <= 0) return exhaustive_search(q.target, q.N);

  // Step 4: cap |Phi(1, z)| for admitted ratios.
  Real Dx = max(Real(Ix.hi) - alpha, alpha - Real(Ix.lo));
  Real Dy = max(Real(Iy.hi) - beta, beta - Real(Iy.lo));
  Real eps3 = Dx + Dy;
  Real phi_cap = eps3 / conj_phi_bound(beta, eps3);
  Real cap2 = phi_cap * phi_cap;

  // Step 5: enumerate primitive Gaussian pairs (v, u) of modulus <= N with
  // u/v inside the confinement rectangle; filter by the cap; compare exactly.
  if (q.N > 100000) fail(errc::precision, "conjugate-pair search infeasible at this size");
  long n = q.N.get_si();
  Int n2 = q.N * q.N;
  std::set<CandLines> seen;
  std::vector<CandLines> cands;
  for (long vr = 0; vr <= n; ++vr)
    for (long vi = (vr == 0 ? 1 : 0); vi <= n; ++vi) {
      GaussianInt v(vr, vi);
      Int nv = v.norm2();
      if (nv == 0 || nv > n2) continue;
      // u = v z ranges over the image of the rectangle.
      RInt ure = rsub(rmul({Rational(vr), Rational(vr)}, Ix),
                      rmul({Rational(vi), Rational(vi)}, Iy));
      RInt uim{Rational(vr) * Iy.lo + Rational(vi) * Ix.lo,
               Rational(vr) * Iy.hi + Rational(vi) * Ix.hi};
      for (Int ur = rat_ceil(ure.lo); ur <= rat_floor(ure.hi); ++ur)
        for (Int ui = rat_ceil(uim.lo); ui <= rat_floor(uim.hi); ++ui) {
          GaussianInt u(ur, ui);
          if (u.norm2() > n2) continue;
          Rational x = make_rat(ur * vr + ui * vi, nv);
          Rational y = make_rat(ui * vr - ur * vi, nv);
          if (y <= 0 || x < Ix.lo || x > Ix.hi || y < Iy.lo || y > Iy.hi) continue;
          if (!gaussian_gcd(v, u).is_unit()) continue;
          Real dx = Real(x) - alpha, dy1 = Real(y) - beta, dy2 = Real(y) + beta;
          Real phi2 = (dx * dx + dy1 * dy1) * (dx * dx + dy2 * dy2) / (4 * beta * beta);
          if (certainly_greater(phi2, cap2)) continue;
          std::vector<CandLines> one;
          append_conjugate_pair(one, v, u);
          if (seen.insert(one[0]).second) cands.push_back(one[0]);
        }
    }
  if (cands.empty()) return exhaustive_search(q.target, q.N);

  PruningCertificate cert;
  cert.eps2 = eps2;
  cert.rho_upper = Real(eps_r);
  cert.delta = {Dx, Dy};
  cert.phi_cap = {phi_cap, phi_cap};
  return assemble_result(q.N, minimize_candidates(tf, cands), cert);
}

}  // namespace

// ---------------------------------------------------------------------------
// Certified bound formulas.

std::array<Real, 2> delta_bound_from_eps(const Real& a1, const Real& a2, const Real& eps1) {
  if (eps1.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  Real d = a1 - a2;
  if (d.sign() == 0) fail(errc::domain, "slopes must be distinct");
  if (a1.sign() == 0 || a2.sign() == 0) fail(errc::domain, "slope must be nonzero");
  Real ad = d.abs();
  if (!(eps1 * ad < Real(1))) fail(errc::domain, "epsilon too large");
  Real common = d * d / (Real(1) - eps1 * ad) * eps1;
  return {(Real(1) + a1.abs()) / a2.abs() * common, (Real(1) + a2.abs()) / a1.abs() * common};
}

Real eps_bound_from_delta(const Real& a1, const Real& a2, const Real& eps2) {
  if (eps2.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  Real ad = (a1 - a2).abs();
  if (ad.sign() == 0) fail(errc::domain, "slopes must be distinct");
  Real num = max(Real(2), max(2 * (a1.abs() + a2.abs()), a1 * a1 + a2 * a2 + ad * eps2));
  return num / (ad * (ad + 2 * eps2)) * eps2;
}

Real phi_over_q2_bound(const Real& a1, const Real& a2, const Real& eps3, int side) {
  if (side != 1 && side != 2) fail(errc::domain, "side must be 1 or 2");
  if (eps3.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  Real ad = (a1 - a2).abs();
  if (ad.sign() == 0) fail(errc::domain, "slopes must be distinct");
  // The same factor certifies either eigendirection (the roles of the two
  // slopes are symmetric in the underlying identity).
  return ad / (ad + eps3);
}

std::array<Real, 2> conj_delta_bound_from_eps(const Real& alpha, const Real& beta,
                                              const Real& eps1) {
  if (eps1.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  if (beta.sign() == 0) fail(errc::domain, "not complex-pair");
  Real ab = beta.abs();
  if (!(eps1 * 2 * (Real(1) + ab) < Real(1))) fail(errc::domain, "epsilon too large");
  Real amb = (alpha - beta).abs();
  Real den = amb - 2 * eps1 * ab * (Real(1) + ab);
  if (den.sign() <= 0) fail(errc::domain, "epsilon too large");
  Real b2 = beta * beta;
  return {2 * amb * b2 / den * eps1, 2 * (Real(1) + ab + amb) * b2 / den * eps1};
}

Real conj_rho_bound_from_delta(const Real& alpha, const Real& beta, const Real& eps2) {
  if (eps2.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  if (beta.sign() == 0) fail(errc::domain, "not complex-pair");
  Real aa = alpha.abs(), ab = beta.abs();
  Real num = max(Real(2), max(2 * (aa + ab),
                              (alpha * alpha - beta * beta).abs() + 2 * (alpha * beta).abs() +
                                  2 * ab * eps2));
  return num / (ab * (ab + eps2)) * eps2;
}

Real conj_phi_bound(const Real& beta, const Real& eps3) {
  if (eps3.sign() <= 0) fail(errc::domain, "epsilon must be positive");
  if (beta.sign() <= 0) fail(errc::domain, "not complex-pair");
  return 2 * beta / (2 * beta + eps3);
}

// ---------------------------------------------------------------------------
// Searches.

ApproxResult best_approx_hyperbolic(const ApproxQuery& q) {
  check_query(q);
  if (q.target.spectrum != Spectrum::hyperbolic)
    fail(errc::domain, "target is not hyperbolic");
  return best_approx_hyperbolic_impl(q);
}

ApproxResult best_approx_complex(const ApproxQuery& q) {
  check_query(q);
  if (q.target.spectrum != Spectrum::complex_pair) fail(errc::domain, "not complex-pair");
  return best_approx_complex_impl(q);
}

ApproxResult best_approx(const ApproxQuery& q) {
  check_query(q);
  if (q.target.spectrum == Spectrum::complex_pair) return best_approx_complex(q);
  return best_approx_hyperbolic(q);
}

ApproxResult brute_force_best(const ApproxQuery& q, const Int& cap) {
  check_query(q);
  if (q.N > cap) fail(errc::domain, "size bound exceeds the exhaustive-search cap");
  return exhaustive_search(q.target, q.N);
}

LagrangeRateReport lagrange_sweep(const MCRSGroup& target, const std::vector<Int>& sizes) {
  LagrangeRateReport rep;
  std::optional<Real> lo, hi;
  for (const Int& N : sizes) {
    ApproxQuery q{target, N};
    ApproxResult r = best_approx(q);
    Real scaled = r.rho.value * Real(N) * Real(N);
    bool zero = false;
    try {
      zero = r.rho.value.sign() == 0;
    } catch (const Error& e) {
      if (e.code() != errc::precision) throw;
    }
    if (zero) {
      rep.degenerate = true;
    } else {
      // Undecidable comparisons mean exactly equal values; the window is
      // unchanged either way.
      auto cl = lo ? try_cmp(scaled, *lo) : std::nullopt;
      auto ch = hi ? try_cmp(scaled, *hi) : std::nullopt;
      if (!lo || (cl && *cl < 0)) lo = scaled;
      if (!hi || (ch && *ch > 0)) hi = scaled;
    }
    rep.rows.push_back({N, r.rho.value, scaled});
  }
  if (lo) {
    rep.window_min = *lo;
    rep.window_max = *hi;
  }
  return rep;
}

std::vector<std::array<int, 2>> sail_level_of_result(const MCRSGroup& target,
                                                     const ApproxResult& result) {
  if (target.n != 2 || target.spectrum != Spectrum::hyperbolic)
    fail(errc::domain, "sail levels need a hyperbolic planar group");
  std::vector<std::array<int, 2>> out;
  for (const auto& g : result.minimizers) {
    std::array<int, 2> ks{0, 0};
    for (int i = 0; i < 2; ++i) {
      const EigenLine& l = g.lines[i];
      if (!l.rational || l.primitive[0].im != 0 || l.primitive[1].im != 0)
        fail(errc::domain, "sail levels need integer eigenvectors");
      Vec2 v{l.primitive[0].re, l.primitive[1].re};
      ks[i] = sail_membership_level(target, v);
    }
    if (ks[1] < ks[0]) std::swap(ks[0], ks[1]);
    out.push_back(ks);
  }
  return out;
}

}  // namespace mcrs
