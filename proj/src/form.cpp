#include "mcrs/form.hpp"

#include <array>
#include <map>

#include "mcrs/error.hpp"

namespace mcrs {

const std::vector<std::string>& MDForm::monomials(int n) {
  static const std::vector<std::string> m2{"x^2", "xy", "y^2"};
  static const std::vector<std::string> m3{"x^3",  "x^2y", "x^2z", "xy^2", "xyz",
                                           "xz^2", "y^3",  "y^2z", "yz^2", "z^3"};
  if (n == 2) return m2;
  if (n == 3) return m3;
  fail(errc::domain, "forms exist for n in {2, 3} only");
}

// exponent tuples in the fixed lexicographic order
static const std::vector<std::array<int, 3>>& exponents(int n) {
  static const std::vector<std::array<int, 3>> e2{{2, 0, 0}, {1, 1, 0}, {0, 2, 0}};
  static const std::vector<std::array<int, 3>> e3{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0},
                                                  {1, 1, 1}, {1, 0, 2}, {0, 3, 0}, {0, 2, 1},
                                                  {0, 1, 2}, {0, 0, 3}};
  if (n == 2) return e2;
  if (n == 3) return e3;
  fail(errc::domain, "forms exist for n in {2, 3} only");
}

Complex MDForm::eval(const std::vector<Real>& v) const {
  const auto& exps = exponents(n);
  Complex total;
  for (size_t k = 0; k < coeff.size(); ++k) {
    Real mono(1);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < exps[k][i]; ++e) mono = mono * v[i];
    total = total + coeff[k] * Complex(mono);
  }
  return total;
}

static int decidable_sign(const Real& x) {
  if (x.is_exact()) return x.sign();
  try {
    return x.sign(1L << 12);
  } catch (const Error&) {
    return 0;  // undecided: skip for canonicalization purposes
  }
}

void MDForm::canonicalize_sign() {
  for (const auto& c : coeff) {
    int s = decidable_sign(c.re);
    if (s == 0) s = decidable_sign(c.im);
    if (s > 0) return;
    if (s < 0) {
      for (auto& z : coeff) z = -z;
      return;
    }
  }
}

std::string MDForm::to_string() const {
  const auto& names = monomials(n);
  std::string s;
  for (size_t k = 0; k < coeff.size(); ++k) {
    bool re0 = coeff[k].re.is_exact() && coeff[k].re.is_zero();
    bool im0 = coeff[k].im.is_exact() && coeff[k].im.is_zero();
    if (re0 && im0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeff[k].to_string() + ")*" + names[k];
  }
  return s.empty() ? "0" : s;
}

MDForm md_form(const MCRSGroup& a) {
  int n = a.n;
  if (n != 2 && n != 3) fail(errc::domain, "forms exist for n in {2, 3} only");

  // L_i annihilates every line but l_i
  std::vector<std::vector<Complex>> L;
  if (n == 2) {
    auto annih = [](const EigenLine& l) {
      return std::vector<Complex>{l.dir[1], -l.dir[0]};
    };
    L = {annih(a.lines[1]), annih(a.lines[0])};
  } else {
    auto cross = [](const EigenLine& p, const EigenLine& q) {
      const auto &u = p.dir, &v = q.dir;
      return std::vector<Complex>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                  u[0] * v[1] - u[1] * v[0]};
    };
    L = {cross(a.lines[1], a.lines[2]), cross(a.lines[0], a.lines[2]),
         cross(a.lines[0], a.lines[1])};
  }

  Complex delta;
  if (n == 2) {
    delta = L[0][0] * L[1][1] - L[0][1] * L[1][0];
  } else {
    delta = L[0][0] * (L[1][1] * L[2][2] - L[1][2] * L[2][1]) -
            L[0][1] * (L[1][0] * L[2][2] - L[1][2] * L[2][0]) +
            L[0][2] * (L[1][0] * L[2][1] - L[1][1] * L[2][0]);
  }

  // expand the product of the linear forms
  std::map<std::array<int, 3>, Complex> terms;
  if (n == 2) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        std::array<int, 3> e{0, 0, 0};
        ++e[i];
        ++e[j];
        auto [it, fresh] = terms.try_emplace(e, L[0][i] * L[1][j]);
        if (!fresh) it->second = it->second + L[0][i] * L[1][j];
      }
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          std::array<int, 3> e{0, 0, 0};
          ++e[i];
          ++e[j];
          ++e[k];
          Complex t = L[0][i] * L[1][j] * L[2][k];
          auto [it, fresh] = terms.try_emplace(e, t);
          if (!fresh) it->second = it->second + t;
        }
  }

  MDForm f;
  f.n = n;
  for (const auto& e : exponents(n)) {
    auto it = terms.find(e);
    f.coeff.push_back(it == terms.end() ? Complex() : it->second / delta);
  }
  f.canonicalize_sign();
  return f;
}

MDForm md_form_simul3(const Real& a, const Real& b, const Real& c) {
  if (a.is_exact() && a.is_zero())
    fail(errc::domain, "vertical direction unsupported in A[a,b,c] chart");
  auto im = [](Real v) { return Complex(Real(0), std::move(v)); };
  Real a2 = a * a;
  MDForm f;
  f.n = 3;
  f.coeff = {im(-(b * b + c * c) / (Real(2) * a2)),  // x^3
             im(b / a),                              // x^2 y
             im(c / a),                              // x^2 z
             im(Real(Rational(-1, 2))),              // x y^2
             Complex(),                              // x y z
             im(Real(Rational(-1, 2))),              // x z^2
             Complex(),  Complex(), Complex(), Complex()};
  f.canonicalize_sign();
  return f;
}

DiscrepancyValue discrepancy(const MDForm& f1, const MDForm& f2) {
  if (f1.n != f2.n || f1.coeff.size() != f2.coeff.size())
    fail(errc::domain, "discrepancy of forms of different shapes");
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
  if (Real::cmp(diff2, sum2) <= 0) return {diff2.sqrt(), Branch::difference};
  return {sum2.sqrt(), Branch::sum};
}

DiscrepancyValue discrepancy(const MCRSGroup& a1, const MCRSGroup& a2) {
  return discrepancy(md_form(a1), md_form(a2));
}

}  // namespace mcrs
