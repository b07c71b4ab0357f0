#ifndef MCRS_GROUP_HPP
#define MCRS_GROUP_HPP

#include <optional>
#include <vector>

#include "mcrs/gaussian.hpp"
#include "mcrs/linalg.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

// One eigenspace direction, stored up to complex scale with the first
// nonzero component normalized to 1. A line is rational when it contains a
// Gaussian integer vector; that primitive vector is cached.
struct EigenLine {
  std::vector<Complex> dir;
  bool rational = false;
  std::vector<GaussianInt> primitive;  // filled iff rational

  bool is_real() const;
  std::string to_string() const;
};

EigenLine make_line(std::vector<Complex> dir);

enum class Spectrum { hyperbolic, complex_pair, mixed };

// A maximal commutative regular subgroup, represented by its n eigenlines.
struct MCRSGroup {
  int n = 0;
  std::vector<EigenLine> lines;
  std::optional<IMat> source;  // integer operator whose eigenlines these are
  Spectrum spectrum = Spectrum::hyperbolic;

  bool rational() const {
    for (const auto& l : lines)
      if (!l.rational) return false;
    return true;
  }
};

// Group of the eigenlines of a regular integer matrix (n = 2 or 3). All 2D
// spectra and 3D real spectra stay in exact tiers; the imaginary part of a 3D
// complex pair is a certified interval real over the exact cubic field.
MCRSGroup group_from_matrix(const IMat& m);

// Group with explicitly given lines (pairwise independent).
MCRSGroup group_from_lines(std::vector<std::vector<Complex>> dirs);

// The 2D group with eigenlines of slopes alpha1, alpha2: directions
// (1, alpha1), (1, alpha2).
MCRSGroup group_from_slopes(const Real& a1, const Real& a2);

// A[alpha]: lines x = 0 and y = alpha x.
MCRSGroup group_A_alpha(const Real& alpha);

// The 3D family spanned by (a,b,c), (0,1,I), (0,1,-I); a != 0.
MCRSGroup group_simul3(const Real& a, const Real& b, const Real& c);

// nu(A): max over lines of the norm max_i |a_i + I b_i| of the primitive
// Gaussian vector; exact (possibly irrational) real.
Real size_value(const MCRSGroup& a);
// Decides size_value(a) <= N exactly via squared norms.
bool size_fits(const MCRSGroup& a, const Int& N);

}  // namespace mcrs

#endif
