#include "mcrs/real.hpp"

#include "mcrs/error.hpp"

namespace mcrs {

Real::Real(QuadraticSurd x) {
  if (x.is_rational())
    v_ = x.to_rational();
  else
    v_ = std::move(x);
}

Real::Real(NFElem x) {
  if (x.is_rational())
    v_ = x.to_rational();
  else
    v_ = std::move(x);
}

const Rational& Real::as_rational() const {
  if (!is_rational()) fail(errc::domain, "real is not rational");
  return std::get<Rational>(v_);
}

const QuadraticSurd& Real::as_surd() const {
  if (!is_surd()) fail(errc::domain, "real is not a quadratic surd");
  return std::get<QuadraticSurd>(v_);
}

const NFElem& Real::as_field_elem() const {
  if (!is_field_elem()) fail(errc::domain, "real is not a number field element");
  return std::get<NFElem>(v_);
}

BallReal Real::to_ball() const {
  return std::visit(
      [](const auto& x) -> BallReal {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BallReal>)
          return x;
        else
          return BallReal(x);
      },
      v_);
}

namespace {

// Apply op in the finest common exact tier, else on computable reals.
template <class Op, class BOp>
Real combine(const Real& a, const Real& b, Op op, BOp bop,
             const std::variant<Rational, QuadraticSurd, NFElem, BallReal>& va,
             const std::variant<Rational, QuadraticSurd, NFElem, BallReal>& vb) {
  if (const auto* ra = std::get_if<Rational>(&va)) {
    if (const auto* rb = std::get_if<Rational>(&vb)) return Real(op(*ra, *rb));
    if (const auto* sb = std::get_if<QuadraticSurd>(&vb))
      return Real(op(QuadraticSurd(*ra), *sb));
    if (const auto* nb = std::get_if<NFElem>(&vb))
      return Real(op(NFElem::from_rational(nb->field(), *ra), *nb));
  }
  if (const auto* sa = std::get_if<QuadraticSurd>(&va)) {
    if (const auto* rb = std::get_if<Rational>(&vb)) return Real(op(*sa, QuadraticSurd(*rb)));
    if (const auto* sb = std::get_if<QuadraticSurd>(&vb)) {
      if (sa->d() == sb->d()) return Real(op(*sa, *sb));
      return Real(bop(BallReal(*sa), BallReal(*sb)));
    }
  }
  if (const auto* na = std::get_if<NFElem>(&va)) {
    if (const auto* rb = std::get_if<Rational>(&vb))
      return Real(op(*na, NFElem::from_rational(na->field(), *rb)));
    if (const auto* nb = std::get_if<NFElem>(&vb)) {
      if (na->field() == nb->field()) return Real(op(*na, *nb));
      return Real(bop(BallReal(*na), BallReal(*nb)));
    }
  }
  return Real(bop(Real(a).to_ball(), Real(b).to_ball()));
}

}  // namespace

#define MCRS_REAL_BINOP(sym)                                                       \
  Real operator sym(const Real& a, const Real& b) {                               \
    auto op = [](const auto& x, const auto& y) { return x sym y; };               \
    auto bop = [](const BallReal& x, const BallReal& y) { return x sym y; };      \
    return combine(a, b, op, bop, a.v_, b.v_);                                    \
  }

MCRS_REAL_BINOP(+)
MCRS_REAL_BINOP(-)
MCRS_REAL_BINOP(*)
#undef MCRS_REAL_BINOP

Real operator/(const Real& a, const Real& b) {
  if (b.is_exact() && b.is_zero()) fail(errc::domain, "real division by zero");
  auto op = [](const auto& x, const auto& y) { return x / y; };
  auto bop = [](const BallReal& x, const BallReal& y) { return x / y; };
  return combine(a, b, op, bop, a.v_, b.v_);
}

Real operator-(const Real& a) {
  return std::visit([](const auto& x) { return Real(-x); }, a.v_);
}

Real Real::sqrt() const {
  if (const auto* r = std::get_if<Rational>(&v_)) {
    if (*r < 0) fail(errc::domain, "sqrt of a negative real");
    return Real(QuadraticSurd::sqrt_of(*r));
  }
  return Real(to_ball().sqrt());
}

Real Real::abs() const {
  if (const auto* b = std::get_if<BallReal>(&v_)) return Real(b->abs());
  return sign() < 0 ? -*this : *this;
}

int Real::sign(long max_bits) const {
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>)
          return sgn(x);
        else if constexpr (std::is_same_v<T, BallReal>)
          return x.sign(max_bits);
        else
          return x.sign();
      },
      v_);
}

int Real::cmp(const Real& a, const Real& b, long max_bits) { return (a - b).sign(max_bits); }

bool Real::is_zero() const {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>)
          return x == 0;
        else if constexpr (std::is_same_v<T, BallReal>)
          return x.sign() == 0;  // throws: intervals cannot certify zero
        else
          return x.is_zero();
      },
      v_);
}

Int Real::floor(long max_bits) const {
  return std::visit(
      [&](const auto& x) -> Int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>)
          return rat_floor(x);
        else if constexpr (std::is_same_v<T, QuadraticSurd>)
          return x.floor();
        else if constexpr (std::is_same_v<T, BallReal>)
          return x.floor(max_bits);
        else {
          // exact field element: bisect with exact comparisons seeded by an
          // interval estimate
          DyadicInterval v = x.enclose(16);
          Int k = rat_floor(v.lo.to_rational());
          while (NFElem::cmp(x, NFElem::from_rational(x.field(), Rational(k + 1))) >= 0) ++k;
          while (NFElem::cmp(x, NFElem::from_rational(x.field(), Rational(k))) < 0) --k;
          return k;
        }
      },
      v_);
}

double Real::to_double() const {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>)
          return x.get_d();
        else
          return x.to_double();
      },
      v_);
}

std::string Real::to_string() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>)
          return rat_to_string(x);
        else
          return x.to_string();
      },
      v_);
}

Real min(const Real& a, const Real& b) { return Real::cmp(a, b) <= 0 ? a : b; }
Real max(const Real& a, const Real& b) { return Real::cmp(a, b) >= 0 ? a : b; }

std::string Complex::to_string() const {
  return re.to_string() + " + (" + im.to_string() + ")*i";
}

}  // namespace mcrs
