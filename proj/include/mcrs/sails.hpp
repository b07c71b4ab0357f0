#ifndef MCRS_SAILS_HPP
#define MCRS_SAILS_HPP

#include <array>
#include <optional>
#include <vector>

#include "mcrs/group.hpp"
#include "mcrs/linalg.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

using Vec2 = std::array<Int, 2>;

// Planar simplicial cone: the positive span of two independent rays with
// exact components, oriented so that ray2 is counterclockwise from ray1.
struct Cone2 {
  std::array<Real, 2> ray1, ray2;
};

Cone2 make_cone(std::array<Real, 2> ray1, std::array<Real, 2> ray2);

// One layer of the lattice "onion" of a cone: the origin-facing boundary
// chain of the convex hull of the cone's nonzero integer points (level 1),
// or of what remains after peeling the previous layers. Vertices are strict
// hull vertices ordered from the ray1 side to the ray2 side. An endpoint
// either sits on a boundary ray that contains integer points (the chain
// continues along the ray itself) or may be an artifact of the bounding box
// used for the computation.
struct SailPolyline {
  std::vector<Vec2> vertices;
  int level = 1;
  std::optional<IMat> periodic_shift;  // maps the vertex sequence to itself
  bool ray_start = false, ray_end = false;
  bool truncated_start = false, truncated_end = false;
};

// Boundary of the convex hull of the cone's nonzero integer points,
// restricted to max(|x|, |y|) <= box.
SailPolyline sail(const Cone2& cone, const Int& box);

// Iterated peeling: remove the lattice points of the bounded chain of every
// previous level (never the points lying further out on an integer ray) and
// take the hull boundary of what remains. Level k is homothetic to level 1
// with coefficient k.
SailPolyline k_sail(const Cone2& cone, int k, const Int& box);

// The k-sails of the four cones cut out by the eigenlines of a hyperbolic
// planar group, in counterclockwise order. For groups of an integer operator
// with irrational eigenlines each polyline is reduced to one period of the
// shift action and carries the shift matrix.
std::array<SailPolyline, 4> geometric_cf(const MCRSGroup& a, int k, const Int& box);

// Smallest k such that v lies on the level-k chain of the cone containing it
// (as a vertex, an edge point, or a point of an integer boundary ray).
int sail_membership_level(const MCRSGroup& a, const Vec2& v);

// min |Phi_a| over one period of the level-1 chains; every lattice value of
// Phi_a is an integer multiple of it. Requires an integer source operator
// with irrational eigenlines.
Real markoff_minimum(const MCRSGroup& a);

}  // namespace mcrs

#endif
