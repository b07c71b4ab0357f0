#include "mcrs/sails.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mcrs/error.hpp"
#include "mcrs/form.hpp"

namespace mcrs {

namespace {

Int icross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

Int iceil(const Real& x) { return -((-x).floor()); }

// Exact integer y-range of the cone restricted to one column x and the box,
// with the origin excluded. Returns false when the column is empty.
bool column_range(const Cone2& c, const Int& x, const Int& box, Int& lo, Int& hi) {
  lo = -box;
  hi = box;
  Real rx = Real(x);
  // v is in the cone iff cross(ray1, v) >= 0 and cross(v, ray2) >= 0.
  {
    const Real& ax = c.ray1[0];
    const Real& ay = c.ray1[1];
    int s = ax.sign();
    if (s > 0) {
      lo = std::max(lo, iceil(ay * rx / ax));
    } else if (s < 0) {
      hi = std::min(hi, (ay * rx / ax).floor());
    } else if (ay.sign() * sgn(x) > 0) {
      return false;  // cross(ray1, v) = -ay*x < 0 for every y
    }
  }
  {
    const Real& bx = c.ray2[0];
    const Real& by = c.ray2[1];
    int s = bx.sign();
    if (s > 0) {
      hi = std::min(hi, (by * rx / bx).floor());
    } else if (s < 0) {
      lo = std::max(lo, iceil(by * rx / bx));
    } else if (by.sign() * sgn(x) < 0) {
      return false;  // cross(v, ray2) = x*by < 0 for every y
    }
  }
  if (x == 0) {
    if (lo == 0 && hi == 0) return false;
    if (lo == 0) lo = 1;
    if (hi == 0) hi = -1;
  }
  return lo <= hi;
}

std::vector<Vec2> hull_ccw(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return icross({a[0] - o[0], a[1] - o[1]}, {b[0] - o[0], b[1] - o[1]});
  };
  for (size_t i = 0; i < pts.size(); ++i) {  // lower hull
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Iteratively peels the origin-facing hull chains of the cone's lattice
// points inside the box.
class Peeler {
 public:
  Peeler(const Cone2& cone, Int box) : box_(std::move(box)) {
    for (Int x = -box_; x <= box_; ++x) {
      Int lo, hi;
      if (column_range(cone, x, box_, lo, hi)) base_.emplace(x, std::make_pair(lo, hi));
    }
  }

  // Chain of the current level, ordered counterclockwise (ray1 side first);
  // the chain's lattice points are then removed from the set. Empty result
  // means the box is exhausted.
  std::vector<Vec2> next_chain() {
    std::vector<Vec2> chain = current_chain();
    for (size_t i = 0; i < chain.size(); ++i) {
      if (i + 1 < chain.size()) {
        Vec2 d{chain[i + 1][0] - chain[i][0], chain[i + 1][1] - chain[i][1]};
        Int g = gcd(d[0], d[1]);
        d = {d[0] / g, d[1] / g};
        for (Int t = 0; t < g; ++t)
          removed_[chain[i][0] + t * d[0]].insert(chain[i][1] + t * d[1]);
      } else {
        removed_[chain[i][0]].insert(chain[i][1]);
      }
    }
    return chain;
  }

 private:
  std::vector<Vec2> current_chain() const {
    std::vector<Vec2> pts;
    for (const auto& [x, range] : base_) {
      Int lo = range.first, hi = range.second;
      auto it = removed_.find(x);
      if (it != removed_.end()) {
        while (lo <= hi && it->second.count(lo)) ++lo;
        while (lo <= hi && it->second.count(hi)) --hi;
      }
      if (lo > hi) continue;
      pts.push_back({x, lo});
      if (hi != lo) pts.push_back({x, hi});
    }
    if (pts.empty()) return {};
    std::vector<Vec2> h = hull_ccw(std::move(pts));
    std::vector<Vec2> chain;
    if (h.size() == 1) {
      chain = h;
    } else if (h.size() == 2) {
      Int c = icross(h[0], h[1]);
      if (c == 0) {  // collinear with the origin: keep the nearer point
        bool first = h[0][0] * h[0][0] + h[0][1] * h[0][1] <
                     h[1][0] * h[1][0] + h[1][1] * h[1][1];
        chain = {first ? h[0] : h[1]};
      } else {
        chain = h;
      }
    } else {
      // An edge u->w of the counterclockwise polygon faces the origin iff the
      // origin lies strictly to its right, which reduces to cross(u, w) < 0.
      size_t n = h.size();
      auto visible = [&](size_t i) { return icross(h[i], h[(i + 1) % n]) < 0; };
      size_t start = n;
      for (size_t i = 0; i < n; ++i)
        if (visible(i) && !visible((i + n - 1) % n)) {
          start = i;
          break;
        }
      if (start == n) fail(errc::domain, "degenerate cone");
      for (size_t i = start; visible(i); i = (i + 1) % n) {
        chain.push_back(h[i]);
        if (chain.size() > n) fail(errc::domain, "degenerate cone");
      }
      chain.push_back(h[(start + chain.size()) % n]);
    }
    // order by angle, counterclockwise from ray1
    std::sort(chain.begin(), chain.end(),
              [](const Vec2& u, const Vec2& v) { return icross(u, v) > 0; });
    return chain;
  }

  Int box_;
  std::map<Int, std::pair<Int, Int>> base_;
  std::map<Int, std::set<Int>> removed_;
};

bool on_ray(const std::array<Real, 2>& r, const Vec2& v) {
  return (r[0] * Real(v[1]) - r[1] * Real(v[0])).sign() == 0;
}

bool on_chain(const std::vector<Vec2>& chain, const Vec2& v) {
  if (chain.size() == 1) return chain[0] == v;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    const Vec2 &u = chain[i], &w = chain[i + 1];
    Vec2 d{w[0] - u[0], w[1] - u[1]}, e{v[0] - u[0], v[1] - u[1]};
    if (icross(d, e) != 0) continue;
    if (v[0] >= std::min(u[0], w[0]) && v[0] <= std::max(u[0], w[0]) &&
        v[1] >= std::min(u[1], w[1]) && v[1] <= std::max(u[1], w[1]))
      return true;
  }
  return false;
}

std::array<Real, 2> line_direction(const EigenLine& l) {
  return {l.dir[0].re, l.dir[1].re};
}

// The four eigenline directions in counterclockwise circular order.
std::vector<std::array<Real, 2>> sorted_directions(const MCRSGroup& a) {
  std::vector<std::array<Real, 2>> dirs{line_direction(a.lines[0]),
                                        line_direction(a.lines[1])};
  dirs.push_back({-dirs[0][0], -dirs[0][1]});
  dirs.push_back({-dirs[1][0], -dirs[1][1]});
  auto half = [](const std::array<Real, 2>& u) {
    int sy = u[1].sign();
    if (sy != 0) return sy > 0 ? 0 : 1;
    return u[0].sign() > 0 ? 0 : 1;
  };
  std::sort(dirs.begin(), dirs.end(),
            [&](const std::array<Real, 2>& u, const std::array<Real, 2>& v) {
              int hu = half(u), hv = half(v);
              if (hu != hv) return hu < hv;
              return (u[0] * v[1] - u[1] * v[0]).sign() > 0;
            });
  return dirs;
}

Vec2 mat_apply(const IMat& g, const Vec2& v) {
  return {g.at(0, 0) * v[0] + g.at(0, 1) * v[1], g.at(1, 0) * v[0] + g.at(1, 1) * v[1]};
}

// Smallest power of the source operator that maps each eigenray to itself
// with a positive factor.
IMat cone_shift(const IMat& m) {
  Int det = mat_det(m);
  Int tr = m.at(0, 0) + m.at(1, 1);
  if (det > 0 && tr > 0) return m;
  return m * m;
}

void trim_to_period(SailPolyline& p, const IMat& g) {
  p.periodic_shift = g;
  if (p.vertices.size() < 3) return;
  size_t i0 = 0;
  auto linf = [](const Vec2& v) { return std::max(int_abs(v[0]), int_abs(v[1])); };
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    Int a = linf(p.vertices[i]), b = linf(p.vertices[i0]);
    if (a < b || (a == b && p.vertices[i] < p.vertices[i0])) i0 = i;
  }
  Vec2 w = mat_apply(g, p.vertices[i0]);
  size_t j = p.vertices.size();
  for (size_t i = 0; i < p.vertices.size(); ++i)
    if (p.vertices[i] == w) {
      j = i;
      break;
    }
  if (j == p.vertices.size() || j == i0) return;
  size_t lo = std::min(i0, j), hi = std::max(i0, j);
  if (lo == 0 || hi + 1 >= p.vertices.size()) return;  // too close to the box
  p.vertices = std::vector<Vec2>(p.vertices.begin() + lo, p.vertices.begin() + hi);
  p.ray_start = p.ray_end = false;
  p.truncated_start = p.truncated_end = false;
}

Real form_abs_at(const MDForm& f, const Vec2& v) {
  Complex val = f.eval({Real(v[0]), Real(v[1])});
  if (val.im.is_exact() && val.im.is_zero()) return val.re.abs();
  return val.norm2().sqrt();
}

}  // namespace

Cone2 make_cone(std::array<Real, 2> ray1, std::array<Real, 2> ray2) {
  Real c = ray1[0] * ray2[1] - ray1[1] * ray2[0];
  int s = c.sign();
  if (s == 0) fail(errc::domain, "degenerate cone");
  if (s < 0) std::swap(ray1, ray2);
  return {std::move(ray1), std::move(ray2)};
}

SailPolyline sail(const Cone2& cone, const Int& box) { return k_sail(cone, 1, box); }

SailPolyline k_sail(const Cone2& cone, int k, const Int& box) {
  if (k < 1) fail(errc::domain, "sail level must be positive");
  if (box < 1) fail(errc::domain, "box must be positive");
  Peeler peeler(cone, box);
  std::vector<Vec2> chain;
  for (int j = 0; j < k; ++j) {
    chain = peeler.next_chain();
    if (chain.empty()) fail(errc::domain, "box exhausted");
  }
  SailPolyline out;
  out.vertices = std::move(chain);
  out.level = k;
  out.ray_start = on_ray(cone.ray1, out.vertices.front());
  out.ray_end = on_ray(cone.ray2, out.vertices.back());
  out.truncated_start = !out.ray_start;
  out.truncated_end = !out.ray_end;
  return out;
}

std::array<SailPolyline, 4> geometric_cf(const MCRSGroup& a, int k, const Int& box) {
  if (a.n != 2 || a.spectrum != Spectrum::hyperbolic)
    fail(errc::domain, "geometric continued fractions need a hyperbolic planar group");
  auto dirs = sorted_directions(a);
  std::optional<IMat> g;
  if (a.source && !a.lines[0].rational && !a.lines[1].rational)
    g = cone_shift(*a.source);
  std::array<SailPolyline, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = k_sail(make_cone(dirs[i], dirs[(i + 1) % 4]), k, box);
    if (g) trim_to_period(out[i], *g);
  }
  return out;
}

Real markoff_minimum(const MCRSGroup& a) {
  if (a.n != 2 || a.spectrum != Spectrum::hyperbolic)
    fail(errc::domain, "Markoff minimum needs a hyperbolic planar group");
  if (a.lines[0].rational || a.lines[1].rational)
    fail(errc::domain, "Markoff minimum needs irrational eigenlines");
  if (!a.source) fail(errc::domain, "Markoff minimum needs an integer source operator");
  MDForm f = md_form(a);
  for (Int box = 64;; box *= 4) {
    auto sails = geometric_cf(a, 1, box);
    bool all_periodic = true;
    for (const auto& s : sails)
      if (!s.periodic_shift || s.truncated_start || s.truncated_end) all_periodic = false;
    if (all_periodic) {
      std::optional<Real> best;
      for (const auto& s : sails)
        for (const auto& v : s.vertices) {
          Real m = form_abs_at(f, v);
          if (!best || Real::cmp(m, *best) < 0) best = m;
        }
      return *best;
    }
    if (box > 4096) fail(errc::precision, "Markoff minimum period not found");
  }
}

int sail_membership_level(const MCRSGroup& a, const Vec2& v) {
  if (a.n != 2 || a.spectrum != Spectrum::hyperbolic)
    fail(errc::domain, "sail level needs a hyperbolic planar group");
  if (v[0] == 0 && v[1] == 0) fail(errc::domain, "zero vector has no sail level");
  for (const auto& l : a.lines)
    if (l.rational && l.primitive[0].re * v[1] - l.primitive[1].re * v[0] == 0)
      return 1;  // on an integer eigenray, hence on the level-1 ray

  // The level is invariant under the shift operator of the group's cones, so
  // a far-out vector can be pulled toward the origin before the chain search.
  Vec2 w = v;
  if (a.source && int_abs(mat_det(*a.source)) == 1 && !a.lines[0].rational &&
      !a.lines[1].rational) {
    IMat g = cone_shift(*a.source);  // determinant 1, so the adjugate inverts it
    IMat gi{{0, 0}, {0, 0}};
    gi.at(0, 0) = g.at(1, 1);
    gi.at(0, 1) = -g.at(0, 1);
    gi.at(1, 0) = -g.at(1, 0);
    gi.at(1, 1) = g.at(0, 0);
    auto linf = [](const Vec2& u) { return std::max(int_abs(u[0]), int_abs(u[1])); };
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (const IMat* m : {&g, &gi}) {
        Vec2 u = mat_apply(*m, w);
        if (linf(u) < linf(w)) {
          w = u;
          shrunk = true;
        }
      }
    }
  }
  const Vec2& vv = w;

  auto dirs = sorted_directions(a);
  std::optional<Cone2> cone;
  for (int i = 0; i < 4 && !cone; ++i) {
    Cone2 c = make_cone(dirs[i], dirs[(i + 1) % 4]);
    if ((c.ray1[0] * Real(vv[1]) - c.ray1[1] * Real(vv[0])).sign() >= 0 &&
        (Real(vv[0]) * c.ray2[1] - Real(vv[1]) * c.ray2[0]).sign() >= 0)
      cone = c;
  }
  if (!cone) fail(errc::domain, "vector lies on no cone of the group");

  std::optional<Real> cap;  // |Phi(v)| / alpha bounds the level for algebraic groups
  if (a.source && !a.lines[0].rational && !a.lines[1].rational)
    cap = form_abs_at(md_form(a), vv) / markoff_minimum(a);

  auto locate = [&](const Int& box) -> int {
    Peeler peeler(*cone, box);
    for (int k = 1; k <= 100000; ++k) {
      if (cap && Real::cmp(Real(k), *cap) > 0) return 0;  // beyond the certified cap
      std::vector<Vec2> chain = peeler.next_chain();
      if (chain.empty()) return 0;  // box exhausted; retry larger
      if (on_chain(chain, vv)) return k;
    }
    fail(errc::domain, "sail level search exhausted");
  };
  Int scale = std::max(Int(1), std::max(int_abs(vv[0]), int_abs(vv[1])));
  for (Int box = 8 * scale;; box *= 2) {
    int k1 = locate(box);
    if (k1 > 0 && locate(box * 2) == k1) return k1;
    if (box > 4096 * scale) fail(errc::precision, "sail level undecided within box limit");
  }
}

}  // namespace mcrs
