#include "mcrs/ball.hpp"

#include <sstream>

#include "mcrs/error.hpp"

namespace mcrs {
namespace detail {

struct BallNode {
  virtual ~BallNode() = default;

  // Enclosure of width <= 2^-bits, memoized: refinement only ever tightens.
  DyadicInterval enclose(long bits) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (have_ && cached_.width() <= Dyadic::pow2(-bits)) return cached_;
    DyadicInterval v = compute(bits);
    if (Dyadic::pow2(-bits) < v.width())
      fail(errc::precision, "real refinement did not reach requested width");
    if (have_) {  // intersect with what we already know
      if (v.lo < cached_.lo) v.lo = cached_.lo;
      if (cached_.hi < v.hi) v.hi = cached_.hi;
    }
    cached_ = v;
    have_ = true;
    return v;
  }

protected:
  virtual DyadicInterval compute(long bits) const = 0;

private:
  mutable std::mutex mu_;
  mutable DyadicInterval cached_;
  mutable bool have_ = false;
};

using NodePtr = std::shared_ptr<const BallNode>;

struct RatNode final : BallNode {
  Rational x;
  explicit RatNode(Rational v) : x(std::move(v)) {}
  DyadicInterval compute(long bits) const override { return DyadicInterval::enclose(x, bits); }
};

struct SurdNode final : BallNode {
  QuadraticSurd x;
  explicit SurdNode(QuadraticSurd v) : x(std::move(v)) {}
  DyadicInterval compute(long bits) const override { return x.enclose(bits); }
};

struct NFNode final : BallNode {
  NFElem x;
  explicit NFNode(NFElem v) : x(std::move(v)) {}
  DyadicInterval compute(long bits) const override { return x.enclose(bits); }
};

struct BinNode : BallNode {
  NodePtr a, b;
  BinNode(NodePtr l, NodePtr r) : a(std::move(l)), b(std::move(r)) {}
};

struct AddNode final : BinNode {
  using BinNode::BinNode;
  DyadicInterval compute(long bits) const override {
    return (a->enclose(bits + 3) + b->enclose(bits + 3)).rounded_out(bits + 2);
  }
};

struct SubNode final : BinNode {
  using BinNode::BinNode;
  DyadicInterval compute(long bits) const override {
    return (a->enclose(bits + 3) - b->enclose(bits + 3)).rounded_out(bits + 2);
  }
};

struct MulNode final : BinNode {
  using BinNode::BinNode;
  DyadicInterval compute(long bits) const override {
    for (long work = bits + 4;; work *= 2) {
      DyadicInterval v = a->enclose(work) * b->enclose(work);
      if (v.width() <= Dyadic::pow2(-bits - 2)) return v.rounded_out(bits + 2);
      if (work > (1L << 24)) fail(errc::precision, "product refinement stalled");
    }
  }
};

struct DivNode final : BinNode {
  using BinNode::BinNode;
  DyadicInterval compute(long bits) const override {
    for (long work = bits + 4;; work *= 2) {
      DyadicInterval den = b->enclose(work);
      if (den.contains_zero()) {
        if (work > (1L << 20)) fail(errc::precision, "division by a real indistinguishable from zero");
        continue;
      }
      DyadicInterval v = a->enclose(work) * den.inverse(work);
      if (v.width() <= Dyadic::pow2(-bits - 2)) return v.rounded_out(bits + 2);
      if (work > (1L << 24)) fail(errc::precision, "quotient refinement stalled");
    }
  }
};

struct NegNode final : BallNode {
  NodePtr a;
  explicit NegNode(NodePtr v) : a(std::move(v)) {}
  DyadicInterval compute(long bits) const override { return -a->enclose(bits); }
};

struct AbsNode final : BallNode {
  NodePtr a;
  explicit AbsNode(NodePtr v) : a(std::move(v)) {}
  DyadicInterval compute(long bits) const override { return a->enclose(bits).abs(); }
};

struct SqrtNode final : BallNode {
  NodePtr a;
  explicit SqrtNode(NodePtr v) : a(std::move(v)) {}
  DyadicInterval compute(long bits) const override {
    for (long work = bits + 4;; work *= 2) {
      DyadicInterval x = a->enclose(work);
      if (x.hi.sign() < 0) fail(errc::domain, "sqrt of a negative real");
      if (x.lo.sign() < 0) {
        // argument provably in [lo, hi] with lo slightly negative: clamp; the
        // true value is nonnegative or refinement would have failed above
        x.lo = Dyadic();
        if (x.hi.sign() == 0) return DyadicInterval();
      }
      DyadicInterval v = x.sqrt(work);
      if (v.width() <= Dyadic::pow2(-bits - 2)) return v.rounded_out(bits + 2);
      if (work > (1L << 24)) fail(errc::precision, "sqrt refinement stalled");
    }
  }
};

}  // namespace detail

using detail::NodePtr;

BallReal::BallReal() : node_(std::make_shared<detail::RatNode>(Rational(0))) {}
BallReal::BallReal(const Rational& x) : node_(std::make_shared<detail::RatNode>(x)) {}
BallReal::BallReal(const QuadraticSurd& x) : node_(std::make_shared<detail::SurdNode>(x)) {}
BallReal::BallReal(const NFElem& x) : node_(std::make_shared<detail::NFNode>(x)) {}

BallReal operator-(const BallReal& a) {
  return BallReal(std::make_shared<detail::NegNode>(a.node_));
}
BallReal operator+(const BallReal& a, const BallReal& b) {
  return BallReal(std::make_shared<detail::AddNode>(a.node_, b.node_));
}
BallReal operator-(const BallReal& a, const BallReal& b) {
  return BallReal(std::make_shared<detail::SubNode>(a.node_, b.node_));
}
BallReal operator*(const BallReal& a, const BallReal& b) {
  return BallReal(std::make_shared<detail::MulNode>(a.node_, b.node_));
}
BallReal operator/(const BallReal& a, const BallReal& b) {
  return BallReal(std::make_shared<detail::DivNode>(a.node_, b.node_));
}
BallReal BallReal::sqrt() const { return BallReal(std::make_shared<detail::SqrtNode>(node_)); }
BallReal BallReal::abs() const { return BallReal(std::make_shared<detail::AbsNode>(node_)); }

DyadicInterval BallReal::enclose(long bits) const { return node_->enclose(bits); }

int BallReal::sign(long max_bits) const {
  for (long bits = 16; bits <= max_bits; bits *= 2) {
    if (int s = node_->enclose(bits).sign(); s != 0) return s;
  }
  DyadicInterval last = node_->enclose(max_bits);
  if (int s = last.sign(); s != 0) return s;
  fail(errc::precision, "sign of computable real undecided at requested precision");
}

int BallReal::cmp(const BallReal& a, const BallReal& b, long max_bits) {
  return (a - b).sign(max_bits);
}

Int BallReal::floor(long max_bits) const {
  for (long bits = 16; bits <= max_bits; bits *= 2) {
    DyadicInterval v = node_->enclose(bits);
    Int fl = rat_floor(v.lo.to_rational());
    Int fh = rat_floor(v.hi.to_rational());
    if (fl == fh) return fl;
  }
  fail(errc::precision, "floor of computable real undecided (value may be an integer)");
}

double BallReal::to_double() const { return enclose(60).midpoint().to_double(); }

std::string BallReal::to_string() const {
  DyadicInterval v = enclose(80);
  std::ostringstream os;
  os.precision(17);
  os << v.midpoint().to_double() << " (+/- 2^-80)";
  return os.str();
}

}  // namespace mcrs
