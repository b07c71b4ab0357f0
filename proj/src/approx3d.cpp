#include "mcrs/approx3d.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <set>

#include "mcrs/error.hpp"
#include "mcrs/group.hpp"

namespace mcrs {

namespace {

Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Chart of a direction with nonzero first coordinate: the three quantities
// the family form depends on.
struct Chart {
  Real beta, gamma, sigma;  // b/a, c/a, (beta^2+gamma^2)/2
};

Chart chart_of(const SimulTarget& t) {
  if (t.a.is_exact() && t.a.is_zero())
    fail(errc::domain, "direction with zero first coordinate has no family chart");
  Real beta = t.b / t.a;
  Real gamma = t.c / t.a;
  Real sigma = (beta * beta + gamma * gamma) / Real(2);
  return {beta, gamma, sigma};
}

// Exact discrepancy of an integer candidate against the chart: min over the
// two relative signs of the forms.  The difference branch is the three-term
// chart max (the constant coefficients cancel); in the sum branch those
// constants add up to 1, so that branch is never below 1.
DiscrepancyValue rho_of(const Chart& ch, const Int& a, const Int& b, const Int& c) {
  Real bb{make_rat(b, a)};
  Real cc{make_rat(c, a)};
  Real ss{make_rat(Int(b * b + c * c), Int(2 * a * a))};
  Real diff = max((ch.beta - bb).abs(), max((ch.gamma - cc).abs(), (ch.sigma - ss).abs()));
  Real sum = max(Real(1), max((ch.beta + bb).abs(),
                              max((ch.gamma + cc).abs(), (ch.sigma + ss).abs())));
  if (Real::cmp(diff, sum) <= 0) return {diff, Branch::difference};
  return {sum, Branch::sum};
}

struct PoolEntry {
  SimulCandidate v;
  Real rho;
  Branch branch;
  Int size;
};

// Comparison that never throws: exact tiers compare exactly; interval tiers
// report 0 when undecided at a bounded precision.  Callers treat 0
// conservatively (accept the candidate / keep the current bound), which
// preserves soundness of the pruning.
int cmp_lenient(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real::cmp(a, b);
  try {
    return Real::cmp(a, b, 1L << 12);
  } catch (const Error&) {
    return 0;
  }
}

}  // namespace

std::string SimulCandidate::to_string() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

SimulTarget simul_eigen_target(const IMat& m) {
  if (m.n != 3) fail(errc::domain, "eigen target requires a 3x3 operator");
  MCRSGroup g = group_from_matrix(m);
  // Recover the eigenvalue of each real line from m*v = lambda*v at the
  // normalized (== 1) component, then keep the dominant one.
  std::optional<Real> best_abs;
  const EigenLine* best = nullptr;
  bool tie = false;
  for (const auto& l : g.lines) {
    if (!l.is_real()) continue;
    int j0 = -1;
    for (int j = 0; j < 3 && j0 < 0; ++j)
      if (!(l.dir[j].re.is_exact() && l.dir[j].re.is_zero())) j0 = j;
    if (j0 < 0) fail(errc::domain, "degenerate eigendirection");
    Real lam(0);
    for (int k = 0; k < 3; ++k) lam = lam + Real(m.at(j0, k)) * l.dir[k].re;
    lam = (lam / l.dir[j0].re).abs();
    if (!best_abs) {
      best_abs = lam;
      best = &l;
    } else {
      int c = Real::cmp(lam, *best_abs);
      if (c > 0) {
        best_abs = lam;
        best = &l;
        tie = false;
      } else if (c == 0) {
        tie = true;
      }
    }
  }
  if (!best) fail(errc::domain, "operator has no real eigendirection");
  if (tie) fail(errc::domain, "dominant real eigenvalue is not unique");
  const auto& d = best->dir;
  if (d[0].re.is_exact() && d[0].re.is_zero())
    fail(errc::domain, "dominant eigendirection has zero first coordinate");
  return {Real(1), d[1].re / d[0].re, d[2].re / d[0].re};
}

DiscrepancyValue discrepancy3(const SimulTarget& t, const SimulCandidate& c) {
  if (c.a == 0) fail(errc::domain, "candidate with zero first coordinate has no family chart");
  Chart ch = chart_of(t);
  return rho_of(ch, c.a, c.b, c.c);
}

namespace {

// The scan core shared by best_simul_sequence / best_simul / verify_table.
//
// Candidates are enumerated by first coordinate a' = 1..N.  For each a' the
// (b', c') window is derived from the current certified discrepancy bound:
// once the running minimum rho_run is below 1 only the difference branch can
// attain it, so any candidate at least as good as the bound must satisfy
// |b/a - b'/a'| <= rho_run and |c/a - c'/a'| <= rho_run.  The running minimum
// folds in a pooled candidate only once the scan has passed its size, which
// keeps the bound valid for every not-yet-enumerated sequence member.  While
// the bound is >= 1 the sum branch can compete and the window widens to cover
// both branches symmetrically.
std::vector<PoolEntry> scan(const Chart& ch, const Int& N) {
  long bits = 96 + 2 * static_cast<long>(mpz_sizeinbase(N.get_mpz_t(), 2));
  DyadicInterval bi = ch.beta.enclose(bits);
  DyadicInterval gi = ch.gamma.enclose(bits);
  Rational blo = bi.lo.to_rational(), bhi = bi.hi.to_rational();
  Rational glo = gi.lo.to_rational(), ghi = gi.hi.to_rational();

  // double-precision prescreen values (midpoints; generous error allowance)
  double bd = bi.midpoint().to_double();
  double gd = gi.midpoint().to_double();
  double sd = (bd * bd + gd * gd) / 2;

  std::vector<PoolEntry> pool;
  auto later = [&pool](size_t x, size_t y) { return pool[y].size < pool[x].size; };
  std::priority_queue<size_t, std::vector<size_t>, decltype(later)> pending(later);

  std::optional<Real> rho_run;
  std::optional<Rational> rho_ub;
  double rho_ub_d = 0;

  long long evals = 0;
  const long long eval_cap = 400000000;

  for (Int a = 1; a <= N; ++a) {
    while (!pending.empty() && pool[pending.top()].size <= a) {
      const PoolEntry& e = pool[pending.top()];
      if (!rho_run || cmp_lenient(e.rho, *rho_run) < 0) {
        rho_run = e.rho;
        rho_ub = e.rho.enclose(bits).hi.to_rational();
        rho_ub_d = rho_ub->get_d();
      }
      pending.pop();
    }

    Rational wblo, wbhi, wclo, wchi;
    if (!rho_ub) {
      // nothing certified yet: nearest-integer bootstrap window
      wblo = Rational(a) * blo - 1;
      wbhi = Rational(a) * bhi + 1;
      wclo = Rational(a) * glo - 1;
      wchi = Rational(a) * ghi + 1;
    } else if (*rho_ub >= 1) {
      // the sum branch can still compete: symmetric window over both branches
      Rational mb = std::max(rat_abs(blo), rat_abs(bhi)) + *rho_ub;
      Rational mc = std::max(rat_abs(glo), rat_abs(ghi)) + *rho_ub;
      wblo = Rational(a) * -mb;
      wbhi = Rational(a) * mb;
      wclo = Rational(a) * -mc;
      wchi = Rational(a) * mc;
    } else {
      wblo = Rational(a) * (blo - *rho_ub);
      wbhi = Rational(a) * (bhi + *rho_ub);
      wclo = Rational(a) * (glo - *rho_ub);
      wchi = Rational(a) * (ghi + *rho_ub);
    }
    Int b_lo = std::max(rat_ceil(wblo), Int(-N));
    Int b_hi = std::min(rat_floor(wbhi), Int(N));
    Int c_lo = std::max(rat_ceil(wclo), Int(-N));
    Int c_hi = std::min(rat_floor(wchi), Int(N));
    if (b_lo > b_hi || c_lo > c_hi) continue;

    double ad = a.get_d();
    for (Int b = b_lo; b <= b_hi; ++b) {
      Int gab = int_gcd(a, b);
      double bbd = b.get_d() / ad;
      for (Int c = c_lo; c <= c_hi; ++c) {
        if (++evals > eval_cap)
          fail(errc::precision, "simultaneous search window failed to contract");
        if (int_gcd(gab, c) != 1) continue;
        // prescreen in doubles before paying for an exact evaluation
        if (rho_run) {
          double ccd = c.get_d() / ad;
          double ssd = (bbd * bbd + ccd * ccd) / 2;
          double rd = std::max(std::abs(bd - bbd), std::max(std::abs(gd - ccd), std::abs(sd - ssd)));
          if (rho_ub_d < 1) {
            double err = 1e-9 * (1 + std::abs(bd) + std::abs(gd) + std::abs(sd) +
                                 std::abs(bbd) + std::abs(ccd) + std::abs(ssd));
            if (rd - err > rho_ub_d) continue;
          }
        }
        DiscrepancyValue rho = rho_of(ch, a, b, c);
        if (!rho_run || cmp_lenient(rho.value, *rho_run) <= 0) {
          SimulCandidate v{a, b, c};
          pool.push_back({v, rho.value, rho.branch, v.size()});
          pending.push(pool.size() - 1);
        }
      }
    }
  }

  if (pool.empty())
    fail(errc::precision, "no candidate entered the search window (chart too large for the bound)");

  std::sort(pool.begin(), pool.end(), [](const PoolEntry& x, const PoolEntry& y) {
    if (x.size != y.size) return x.size < y.size;
    return x.v < y.v;
  });
  return pool;
}

// Keep only pool entries that attain the minimum over all sizes up to their
// own (the best-approximation sequence).
// Ties between distinct candidates compare exactly (decidable in the exact
// tiers); comparisons of an entry against itself are avoided by tracking the
// index of the running-minimum holder, so interval-tier targets work whenever
// the final distinctions are decidable.
std::vector<PoolEntry> members_of(std::vector<PoolEntry> pool) {
  std::vector<PoolEntry> members;
  std::optional<size_t> best_idx;
  size_t i = 0;
  while (i < pool.size()) {
    size_t j = i;
    while (j + 1 < pool.size() && pool[j + 1].size == pool[i].size) ++j;
    size_t arg = i;
    for (size_t k = i + 1; k <= j; ++k)
      if (Real::cmp(pool[k].rho, pool[arg].rho) < 0) arg = k;
    size_t eff = arg;
    if (best_idx && Real::cmp(pool[*best_idx].rho, pool[arg].rho) < 0) eff = *best_idx;
    for (size_t k = i; k <= j; ++k)
      if (k == eff || Real::cmp(pool[k].rho, pool[eff].rho) == 0) members.push_back(pool[k]);
    best_idx = eff;
    i = j + 1;
  }
  return members;
}

SimulCandidate canonical(SimulCandidate v) {
  Int g = int_gcd(int_gcd(v.a, v.b), v.c);
  if (g > 1) {
    v.a /= g;
    v.b /= g;
    v.c /= g;
  }
  const Int* lead = &v.a;
  if (*lead == 0) lead = &v.b;
  if (*lead == 0) lead = &v.c;
  if (*lead < 0) {
    v.a = -v.a;
    v.b = -v.b;
    v.c = -v.c;
  }
  return v;
}

}  // namespace

std::vector<SimulSeqEntry> best_simul_sequence(const SimulTarget& t, const Int& N) {
  if (N < 1) fail(errc::domain, "bound must be at least 1");
  Chart ch = chart_of(t);
  std::vector<SimulSeqEntry> out;
  for (const auto& e : members_of(scan(ch, N)))
    out.push_back({e.v, e.rho, e.branch, e.size, true});
  return out;
}

SimulResult best_simul(const SimulTarget& t, const Int& N) {
  auto seq = best_simul_sequence(t, N);
  const SimulSeqEntry& last = seq.back();  // sequence minima are nonincreasing
  SimulResult r;
  r.N = N;
  for (const auto& e : seq)
    if (&e == &last || Real::cmp(e.rho, last.rho) == 0) {
      r.minimizers.push_back(e.v);
      r.rho = {e.rho, e.branch};
    }
  std::sort(r.minimizers.begin(), r.minimizers.end());
  return r;
}

std::vector<SimulCandidate> orbit_candidates(const OrbitFamily& f, const Int& N) {
  if (f.generators.empty()) fail(errc::domain, "orbit needs at least one generator");
  if (f.ranges.size() != f.generators.size())
    fail(errc::domain, "one exponent range per generator required");
  for (const auto& g : f.generators) {
    if (g.n != 3) fail(errc::domain, "orbit generators must be 3x3");
    if (mat_det(g) == 0) fail(errc::domain, "orbit generators must be regular");
  }
  for (size_t i = 0; i < f.generators.size(); ++i)
    for (size_t j = i + 1; j < f.generators.size(); ++j)
      if (!(f.generators[i] * f.generators[j] == f.generators[j] * f.generators[i]))
        fail(errc::domain, "orbit generators must commute");

  // integer inverse via the adjugate; only valid for |det| = 1
  auto unimodular_inverse = [](const IMat& m) {
    Int det = mat_det(m);
    if (det != 1 && det != -1)
      fail(errc::domain, "negative exponents require a unimodular generator");
    IMat adj(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
        int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        // cofactor transpose: adj[j][i] built from minor of (i, j)
        adj.at(j, i) = m.at(r0, c0) * m.at(r1, c1) - m.at(r0, c1) * m.at(r1, c0);
        if (det < 0) adj.at(j, i) = -adj.at(j, i);
      }
    return adj;
  };

  // precompute generator powers over each range
  std::vector<std::vector<IMat>> powers(f.generators.size());
  for (size_t i = 0; i < f.generators.size(); ++i) {
    auto [lo, hi] = f.ranges[i];
    if (lo > hi) fail(errc::domain, "empty exponent range");
    IMat inv;
    if (lo < 0) inv = unimodular_inverse(f.generators[i]);
    for (long e = lo; e <= hi; ++e)
      powers[i].push_back(e >= 0 ? mat_pow(f.generators[i], static_cast<unsigned long>(e))
                                 : mat_pow(inv, static_cast<unsigned long>(-e)));
  }

  std::set<SimulCandidate> seen;
  std::vector<IMat> prefix{IMat::identity(3)};
  auto recurse = [&](auto&& self, size_t depth) -> void {
    if (depth == powers.size()) {
      const IMat& p = prefix.back();
      SimulCandidate v;
      v.a = p.at(0, 0) * f.seed[0] + p.at(0, 1) * f.seed[1] + p.at(0, 2) * f.seed[2];
      v.b = p.at(1, 0) * f.seed[0] + p.at(1, 1) * f.seed[1] + p.at(1, 2) * f.seed[2];
      v.c = p.at(2, 0) * f.seed[0] + p.at(2, 1) * f.seed[1] + p.at(2, 2) * f.seed[2];
      if (v.a == 0 && v.b == 0 && v.c == 0) return;
      v = canonical(v);
      if (v.size() <= N) seen.insert(v);
      return;
    }
    for (const IMat& p : powers[depth]) {
      prefix.push_back(prefix.back() * p);
      self(self, depth + 1);
      prefix.pop_back();
    }
  };
  recurse(recurse, 0);
  return {seen.begin(), seen.end()};
}

TableReport verify_table(const SimulTarget& t, const std::vector<SimulCandidate>& claimed,
                         const Int& N) {
  Chart ch = chart_of(t);
  auto members = members_of(scan(ch, N));
  std::set<SimulCandidate> member_set;
  for (const auto& e : members) member_set.insert(e.v);

  // running-minimum holder at a given size: last member of size <= s
  auto holder_at = [&](const Int& s) -> const PoolEntry* {
    const PoolEntry* h = nullptr;
    for (const auto& e : members) {
      if (e.size > s) break;
      h = &e;
    }
    return h;
  };

  TableReport rep;
  std::set<SimulCandidate> claimed_set;
  bool all_rows_ok = true;
  for (const auto& raw : claimed) {
    TableRowVerdict row;
    row.claimed = raw;
    SimulCandidate v = canonical(raw);
    claimed_set.insert(v);
    try {
      if (v.size() > N) {
        row.verdict = "undecided-at-precision";  // beyond the verified bound
        all_rows_ok = false;
      } else if (member_set.count(v)) {
        row.verdict = "confirmed";
      } else {
        row.verdict = "refuted";
        all_rows_ok = false;
        if (const PoolEntry* h = holder_at(v.size())) row.counterexample = h->v;
      }
    } catch (const Error& err) {
      if (err.code() != errc::precision) throw;
      row.verdict = "undecided-at-precision";
      all_rows_ok = false;
    }
    rep.rows.push_back(std::move(row));
  }
  for (const auto& e : members)
    if (!claimed_set.count(e.v)) rep.extra.push_back(e.v);
  rep.all_confirmed = all_rows_ok && rep.extra.empty();
  return rep;
}

std::vector<SimulCandidate> reference_table_cyclic_shift(const Int& N) {
  IMat B{{0, 1, 1}, {0, 0, 1}, {1, 0, 0}};
  std::vector<SimulCandidate> out;
  for (long n = 4; n <= 52; ++n) {
    if (n == 5) continue;
    IMat p = mat_pow(B, static_cast<unsigned long>(n));
    SimulCandidate v{p.at(0, 0), p.at(1, 0), p.at(2, 0)};
    if (v.size() <= N) out.push_back(v);
  }
  return out;
}

std::vector<SimulCandidate> reference_table_golden3d(const Int& N) {
  IMat E1{{1, 1, 1}, {1, 1, 0}, {1, 0, 0}};
  // inverse of E1 - Id (the generator named E2 in the bundled tables)
  IMat E2{{0, 1, 0}, {1, -1, 1}, {0, 1, -1}};
  // (m, n) exponent pairs in sequence order, with the sporadic element
  // (3,2,1) inserted third.
  static const std::pair<int, int> mn[] = {
      {1, 1},  {2, 1},  {3, 2},  {3, 1},  {4, 2},  {4, 1},  {5, 3},  {5, 2},
      {6, 3},  {6, 2},  {6, 1},  {7, 3},  {7, 2},  {8, 3},  {8, 2},  {9, 4},
      {9, 3},  {10, 4}, {10, 3}, {11, 5}, {11, 4}, {11, 3}, {12, 4}, {12, 3},
      {13, 5}, {13, 4}, {14, 5}, {14, 4}, {15, 6}, {15, 5}, {15, 4}, {16, 5},
      {16, 4}, {17, 6}, {17, 5}, {18, 6}, {18, 5}, {19, 7}, {19, 6}, {19, 5}};
  std::vector<SimulCandidate> out;
  int idx = 0;
  for (const auto& [m, n] : mn) {
    if (idx == 2) {
      SimulCandidate s{Int(3), Int(2), Int(1)};
      if (s.size() <= N) out.push_back(s);
    }
    ++idx;
    IMat p = mat_pow(E1, static_cast<unsigned long>(m)) * mat_pow(E2, static_cast<unsigned long>(n));
    SimulCandidate v{p.at(0, 0), p.at(1, 0), p.at(2, 0)};
    v = canonical(v);
    if (v.size() <= N) out.push_back(v);
  }
  return out;
}

}  // namespace mcrs
