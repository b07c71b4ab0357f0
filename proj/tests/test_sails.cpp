#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "mcrs/error.hpp"
#include "mcrs/form.hpp"
#include "mcrs/group.hpp"
#include "mcrs/sails.hpp"

using namespace mcrs;

namespace {

QuadraticSurd golden() { return QuadraticSurd(1, 1, 2, 5); }  // (1+sqrt5)/2

// Independent oracle: gift-wrap the origin-facing hull chain of all integer
// cone points in the box, walking from the smallest angle upward.
std::vector<Vec2> oracle_chain(long r1x, long r1y, long r2x, long r2y, long box) {
  if ((long long)r1x * r2y - (long long)r1y * r2x < 0) {
    std::swap(r1x, r2x);
    std::swap(r1y, r2y);
  }
  auto in_cone = [&](long x, long y) {
    return (long long)r1x * y - (long long)r1y * x >= 0 &&
           (long long)x * r2y - (long long)y * r2x >= 0;
  };
  std::vector<std::array<long, 2>> s;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y)
      if ((x != 0 || y != 0) && in_cone(x, y)) s.push_back({x, y});
  REQUIRE(!s.empty());
  auto cross = [](const std::array<long, 2>& a, const std::array<long, 2>& b) {
    return (long long)a[0] * b[1] - (long long)a[1] * b[0];
  };
  auto norm2 = [](const std::array<long, 2>& a) {
    return (long long)a[0] * a[0] + (long long)a[1] * a[1];
  };
  std::array<long, 2> u = s[0];
  for (const auto& p : s) {
    long long c = cross(p, u);
    if (c > 0 || (c == 0 && norm2(p) < norm2(u))) u = p;
  }
  std::vector<Vec2> chain{{Int(u[0]), Int(u[1])}};
  while (true) {
    bool have = false;
    std::array<long, 2> best{};
    for (const auto& q : s) {
      if (cross(u, q) <= 0) continue;  // only strictly larger angles
      std::array<long, 2> dq{q[0] - u[0], q[1] - u[1]};
      if (!have) {
        best = q;
        have = true;
        continue;
      }
      std::array<long, 2> db{best[0] - u[0], best[1] - u[1]};
      long long c = cross(db, dq);
      if (c > 0 || (c == 0 && norm2(dq) > norm2(db))) best = q;
    }
    if (!have) break;
    chain.push_back({Int(best[0]), Int(best[1])});
    u = best;
  }
  return chain;
}

std::set<std::pair<long, long>> vertex_set(const SailPolyline& p) {
  std::set<std::pair<long, long>> s;
  for (const auto& v : p.vertices) s.insert({v[0].get_si(), v[1].get_si()});
  return s;
}

Real abs_form_value(const MDForm& f, long x, long y) {
  Complex val = f.eval({Real(long(x)), Real(long(y))});
  REQUIRE(val.im.is_zero());
  return val.re.abs();
}

// Vertices that cannot be box artifacts: flagged endpoints dropped, then a
// max-coordinate window applied.
std::vector<Vec2> trusted(const SailPolyline& p, const Int& window) {
  std::vector<Vec2> out;
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    if (i == 0 && p.truncated_start) continue;
    if (i + 1 == p.vertices.size() && p.truncated_end) continue;
    if (std::max(int_abs(p.vertices[i][0]), int_abs(p.vertices[i][1])) > window) continue;
    out.push_back(p.vertices[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("worked sails in rational cones") {
  Cone2 quad = make_cone({Real(1), Real(0)}, {Real(0), Real(1)});
  SailPolyline s = sail(quad, 10);
  REQUIRE(s.vertices.size() == 2);
  CHECK(s.vertices[0] == Vec2{1, 0});
  CHECK(s.vertices[1] == Vec2{0, 1});
  CHECK(s.ray_start);
  CHECK(s.ray_end);
  CHECK(!s.truncated_start);
  CHECK(!s.truncated_end);

  Cone2 thin = make_cone({Real(1), Real(2)}, {Real(2), Real(3)});
  SailPolyline t = sail(thin, 10);
  CHECK(vertex_set(t) == std::set<std::pair<long, long>>{{1, 2}, {2, 3}});
  CHECK(t.ray_start);
  CHECK(t.ray_end);
}

TEST_CASE("sail errors") {
  CHECK_THROWS_WITH_AS(make_cone({Real(1), Real(2)}, {Real(2), Real(4)}),
                       "degenerate cone", Error);
  Cone2 quad = make_cone({Real(1), Real(0)}, {Real(0), Real(1)});
  CHECK_THROWS_WITH_AS(sail(quad, 0), "box must be positive", Error);
  CHECK_THROWS_WITH_AS(k_sail(quad, 0, 5), "sail level must be positive", Error);
  CHECK_THROWS_WITH_AS(k_sail(quad, 20, 3), "box exhausted", Error);
}

TEST_CASE("Fibonacci cone sail") {
  // rays along y = theta x and y = -1/theta x, the eigenlines of [[0,1],[1,1]]
  QuadraticSurd th = golden();
  Cone2 cone = make_cone({Real(1), Real(th)}, {Real(1), Real(QuadraticSurd(1, -1, 2, 5))});
  SailPolyline s = sail(cone, 100);
  auto vs = vertex_set(s);
  CHECK(vs.count({1, 1}));
  CHECK(vs.count({2, 3}));
  CHECK(vs.count({5, 8}));
  CHECK(s.truncated_start);
  CHECK(s.truncated_end);

  // every trusted vertex attains the minimum 1/sqrt5 of |x^2+xy-y^2|/sqrt5
  MDForm f = md_form(group_from_slopes(Real(th), Real(QuadraticSurd(1, -1, 2, 5))));
  Real alpha = Real(QuadraticSurd(0, 1, 5, 5));  // 1/sqrt5
  for (const auto& v : trusted(s, 100)) {
    Real m = abs_form_value(f, v[0].get_si(), v[1].get_si());
    CHECK(Real::cmp(m, alpha) == 0);
  }
}

TEST_CASE("sail equals brute-force hull on random rational cones") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<long> comp(-15, 15);
  std::uniform_int_distribution<long> small_box(4, 40);
  int done = 0;
  while (done < 50) {
    long ax = comp(rng), ay = comp(rng), bx = comp(rng), by = comp(rng);
    if ((ax == 0 && ay == 0) || (bx == 0 && by == 0)) continue;
    if ((long long)ax * by - (long long)ay * bx == 0) continue;
    long box = (done % 10 == 0) ? 200 : small_box(rng);
    Cone2 cone = make_cone({Real(ax), Real(ay)}, {Real(bx), Real(by)});
    SailPolyline s = sail(cone, box);
    std::vector<Vec2> expect = oracle_chain(ax, ay, bx, by, box);
    CHECK(s.vertices == expect);
    ++done;
  }
}

TEST_CASE("k-sail homothety") {
  std::vector<Cone2> cones;
  cones.push_back(make_cone({Real(1), Real(0)}, {Real(0), Real(1)}));
  cones.push_back(make_cone({Real(1), Real(2)}, {Real(2), Real(3)}));
  cones.push_back(make_cone({Real(-1), Real(3)}, {Real(-2), Real(-5)}));
  QuadraticSurd th = golden();
  cones.push_back(make_cone({Real(1), Real(th)}, {Real(1), Real(QuadraticSurd(1, -1, 2, 5))}));

  Int box = 120;
  for (const auto& cone : cones) {
    SailPolyline s1 = sail(cone, box);
    for (int k = 1; k <= 5; ++k) {
      SailPolyline sk = k_sail(cone, k, box);
      CHECK(sk.level == k);
      auto set_k = vertex_set(sk);
      // forward: k * (trusted 1-sail vertex) is a k-sail vertex
      for (const auto& v : trusted(s1, box / (2 * k))) {
        CHECK(set_k.count({Int(k * v[0]).get_si(), Int(k * v[1]).get_si()}));
      }
      // backward: trusted k-sail vertices are k * (1-sail vertex)
      auto set_1 = vertex_set(s1);
      for (const auto& w : trusted(sk, box / 2)) {
        CHECK(w[0] % k == 0);
        CHECK(w[1] % k == 0);
        CHECK(set_1.count({Int(w[0] / k).get_si(), Int(w[1] / k).get_si()}));
      }
    }
  }

  // the worked first-quadrant level-2 chain: segment (2,0)-(0,2), (1,1) only
  // an edge point
  SailPolyline two = k_sail(cones[0], 2, 10);
  REQUIRE(two.vertices.size() == 2);
  CHECK(two.vertices[0] == Vec2{2, 0});
  CHECK(two.vertices[1] == Vec2{0, 2});
}

TEST_CASE("geometric continued fraction of the antisail group") {
  MCRSGroup a = group_from_lines({{Complex(Real(1)), Complex(Real(2))},
                                  {Complex(Real(2)), Complex(Real(3))}});
  auto sails = geometric_cf(a, 1, 12);
  std::set<std::pair<long, long>> all;
  for (const auto& s : sails) {
    auto vs = vertex_set(s);
    all.insert(vs.begin(), vs.end());
  }
  CHECK(all == std::set<std::pair<long, long>>{{1, 2}, {2, 3}, {-1, -2}, {-2, -3}});
  CHECK_THROWS_AS(geometric_cf(a, 1, 0), Error);
}

TEST_CASE("Fibonacci geometric continued fraction and Markoff minimum") {
  MCRSGroup a = group_from_matrix(IMat{{1, 1}, {1, 0}});
  Real alpha = markoff_minimum(a);
  CHECK(Real::cmp(alpha, Real(QuadraticSurd(0, 1, 5, 5))) == 0);  // 1/sqrt5

  MDForm f = md_form(a);
  for (int k = 1; k <= 3; ++k) {
    auto sails = geometric_cf(a, k, 200);
    int vertices_seen = 0;
    for (const auto& s : sails) {
      CHECK(s.level == k);
      CHECK(s.periodic_shift.has_value());
      for (const auto& v : s.vertices) {
        Real m = abs_form_value(f, v[0].get_si(), v[1].get_si());
        CHECK(Real::cmp(m, Real(long(k)) * alpha) >= 0);
        ++vertices_seen;
      }
    }
    CHECK(vertices_seen > 0);
  }
}

TEST_CASE("source operator shifts the sail") {
  // one cone of the Fibonacci eigenlines y = (theta-1)x and y = -theta x
  QuadraticSurd slope1 = QuadraticSurd(-1, 1, 2, 5);  // theta - 1
  QuadraticSurd slope2 = QuadraticSurd(-1, -1, 2, 5);  // -theta
  Cone2 cone = make_cone({Real(1), Real(slope1)}, {Real(-1), Real(-slope2)});
  Int box = 150;
  SailPolyline s = sail(cone, box);
  REQUIRE(s.vertices.size() >= 4);
  IMat g = IMat{{1, 1}, {1, 0}} * IMat{{1, 1}, {1, 0}};
  auto vs = vertex_set(s);
  int moved = 0;
  for (size_t i = 1; i + 1 < s.vertices.size(); ++i) {
    const Vec2& v = s.vertices[i];
    Vec2 w{g.at(0, 0) * v[0] + g.at(0, 1) * v[1], g.at(1, 0) * v[0] + g.at(1, 1) * v[1]};
    if (std::max(int_abs(w[0]), int_abs(w[1])) > box) continue;
    CHECK(vs.count({w[0].get_si(), w[1].get_si()}));
    ++moved;
  }
  CHECK(moved > 0);
}

TEST_CASE("sail membership levels") {
  MCRSGroup fib = group_from_matrix(IMat{{1, 1}, {1, 0}});
  CHECK(sail_membership_level(fib, {1, 1}) == 1);
  CHECK(sail_membership_level(fib, {2, 2}) == 2);
  CHECK(sail_membership_level(fib, {3, 3}) == 3);
  CHECK_THROWS_WITH_AS(sail_membership_level(fib, {0, 0}),
                       "zero vector has no sail level", Error);

  MCRSGroup anti = group_from_lines({{Complex(Real(1)), Complex(Real(2))},
                                     {Complex(Real(2)), Complex(Real(3))}});
  int level = sail_membership_level(anti, {1, 0});
  CHECK(level == 5);

  // Lemma cap: level <= |Phi(1,0)| / alpha with alpha the smallest nonzero
  // integer value of Phi = (3x-2y)(2x-y)
  long alpha = 0;
  for (long x = -6; x <= 6; ++x)
    for (long y = -6; y <= 6; ++y) {
      long v = std::abs((3 * x - 2 * y) * (2 * x - y));
      if (v != 0 && (alpha == 0 || v < alpha)) alpha = v;
    }
  long phi = std::abs((3 * 1 - 0) * (2 * 1 - 0));
  CHECK(level * alpha <= phi);

  // points on a rational eigenline belong to the level-1 rays
  CHECK(sail_membership_level(anti, {2, 4}) == 1);
}

TEST_CASE("Markoff minimum preconditions") {
  MCRSGroup anti = group_from_lines({{Complex(Real(1)), Complex(Real(2))},
                                     {Complex(Real(2)), Complex(Real(3))}});
  CHECK_THROWS_WITH_AS(markoff_minimum(anti), "Markoff minimum needs irrational eigenlines",
                       Error);
  QuadraticSurd th = golden();
  MCRSGroup slopes = group_from_slopes(Real(th), Real(QuadraticSurd(1, -1, 2, 5)));
  CHECK_THROWS_WITH_AS(markoff_minimum(slopes),
                       "Markoff minimum needs an integer source operator", Error);
}
