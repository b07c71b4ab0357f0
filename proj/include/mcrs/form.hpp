#ifndef MCRS_FORM_HPP
#define MCRS_FORM_HPP

#include <string>
#include <vector>

#include "mcrs/group.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

// Homogeneous degree-n form in n variables (n = 2 or 3), coefficients in
// lexicographic monomial order: n=2 -> x^2, xy, y^2; n=3 -> x^3, x^2 y,
// x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3. Defined up to a global
// sign; canonicalized so the first decidably nonzero coefficient points
// positive (real part, then imaginary part).
struct MDForm {
  int n = 0;
  std::vector<Complex> coeff;

  static const std::vector<std::string>& monomials(int n);
  Complex eval(const std::vector<Real>& v) const;
  void canonicalize_sign();
  std::string to_string() const;
};

// (prod_k L_k)/Delta for the annihilating linear forms of the group's lines.
MDForm md_form(const MCRSGroup& a);

// Closed-form variant for the 3D family spanned by (a,b,c),(0,1,I),(0,1,-I):
// I(-(b^2+c^2)/(2a^2) x^3 + (b/a) x^2 y + (c/a) x^2 z - xy^2/2 - xz^2/2).
// Must agree with md_form on the same lines.
MDForm md_form_simul3(const Real& a, const Real& b, const Real& c);

enum class Branch { sum, difference };

struct DiscrepancyValue {
  Real value;          // >= 0
  Branch branch = Branch::difference;
};

// rho: the smaller of the two branch maxima max_k |c1_k ± c2_k| over complex
// coefficient moduli (the forms are compared up to their sign ambiguity).
DiscrepancyValue discrepancy(const MDForm& f1, const MDForm& f2);
DiscrepancyValue discrepancy(const MCRSGroup& a1, const MCRSGroup& a2);

}  // namespace mcrs

#endif
