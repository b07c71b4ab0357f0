#ifndef MCRS_LINALG_HPP
#define MCRS_LINALG_HPP

#include <string>
#include <vector>

#include "mcrs/error.hpp"
#include "mcrs/rational.hpp"

namespace mcrs {

// Dense n x n integer matrix, row-major.
struct IMat {
  int n = 0;
  std::vector<Int> a;

  IMat() = default;
  explicit IMat(int dim) : n(dim), a(dim * dim, Int(0)) {}
  IMat(std::initializer_list<std::initializer_list<long>> rows) {
    n = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n) fail(errc::domain, "matrix is not square");
      for (long v : r) a.push_back(Int(v));
    }
  }

  Int& at(int i, int j) { return a[i * n + j]; }
  const Int& at(int i, int j) const { return a[i * n + j]; }

  static IMat identity(int dim) {
    IMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  friend bool operator==(const IMat& x, const IMat& y) { return x.n == y.n && x.a == y.a; }
  std::string to_string() const;
};

inline IMat operator*(const IMat& x, const IMat& y) {
  if (x.n != y.n) fail(errc::domain, "matrix size mismatch");
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k)
      for (int j = 0; j < x.n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
  return r;
}

inline IMat mat_pow(IMat m, unsigned long e) {
  IMat r = IMat::identity(m.n);
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

inline Int mat_det(const IMat& m) {
  if (m.n == 1) return m.at(0, 0);
  if (m.n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  if (m.n == 3)
    return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
           m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
           m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
  fail(errc::domain, "determinant only for n <= 3");
}

// Characteristic polynomial det(xI - M), coefficients low to high (monic).
inline std::vector<Int> char_poly(const IMat& m) {
  if (m.n == 2) {
    Int tr = m.at(0, 0) + m.at(1, 1);
    return {mat_det(m), -tr, Int(1)};
  }
  if (m.n == 3) {
    Int tr = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
    Int c2 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) +
             m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
             m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
    return {-mat_det(m), c2, -tr, Int(1)};
  }
  fail(errc::domain, "characteristic polynomial only for n in {2, 3}");
}

inline std::string IMat::to_string() const {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n; ++j) s += (j ? "," : "") + at(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

}  // namespace mcrs

#endif
