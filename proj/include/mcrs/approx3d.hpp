#ifndef MCRS_APPROX3D_HPP
#define MCRS_APPROX3D_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcrs/form.hpp"
#include "mcrs/linalg.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

// Simultaneous approximation of a direction (a,b,c) in R^3, a != 0, by
// integer directions, through the commutative group family spanned by
// (a,b,c), (0,1,i), (0,1,-i).  The group discrepancy reduces to the chart
// quantities b/a, c/a and (b^2+c^2)/(2a^2).

struct SimulTarget {
  Real a, b, c;  // a != 0
};

// The dominant real eigendirection of a regular integer 3x3 operator,
// normalized to first coordinate 1 (exact; components live in the cubic
// field of the eigenvalue).
SimulTarget simul_eigen_target(const IMat& m);

struct SimulCandidate {
  Int a, b, c;  // a != 0, gcd(a,b,c) = 1, canonical sign a > 0

  Int size() const { return std::max(int_abs(a), std::max(int_abs(b), int_abs(c))); }
  friend bool operator==(const SimulCandidate& x, const SimulCandidate& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
  friend bool operator<(const SimulCandidate& x, const SimulCandidate& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
  std::string to_string() const;
};

// Group discrepancy between the target's family member and the candidate's;
// min over the two sign branches of the coefficient sup-norm.  Exact when the
// target components are exact.
DiscrepancyValue discrepancy3(const SimulTarget& t, const SimulCandidate& c);

// One element of the best-approximation sequence: the candidate, its exact
// discrepancy, and whether it attains the running minimum at its own size
// (i.e. is a best approximation for the bound equal to its size).
struct SimulSeqEntry {
  SimulCandidate v;
  Real rho;
  Branch branch = Branch::difference;
  Int size;
  bool member = false;
};

// Every candidate that is a best approximation at some bound <= N, found by a
// certified window scan over the first coordinate (windows derive from the
// running minimum, so no better candidate can be missed).  Sorted by size,
// then lexicographically.
std::vector<SimulSeqEntry> best_simul_sequence(const SimulTarget& t, const Int& N);

struct SimulResult {
  std::vector<SimulCandidate> minimizers;  // all ties, sorted
  DiscrepancyValue rho;
  Int N;
};

// Global discrepancy minimum over primitive candidates of size <= N.
SimulResult best_simul(const SimulTarget& t, const Int& N);

// Orbit of a seed vector under commuting integer generators over finite
// inclusive exponent ranges (one range per generator; negative exponents
// require |det| = 1).
struct OrbitFamily {
  std::vector<IMat> generators;
  std::array<Int, 3> seed;
  std::vector<std::pair<long, long>> ranges;
};

// All distinct primitive sign-canonical orbit vectors of size <= N, sorted.
std::vector<SimulCandidate> orbit_candidates(const OrbitFamily& f, const Int& N);

// Per-row certification of a claimed best-approximation list.
struct TableRowVerdict {
  SimulCandidate claimed;
  std::string verdict;  // "confirmed" | "refuted" | "undecided-at-precision"
  std::optional<SimulCandidate> counterexample;  // strictly better, for refuted rows
};

struct TableReport {
  std::vector<TableRowVerdict> rows;
  std::vector<SimulCandidate> extra;  // best approximations <= N missing from the claim
  bool all_confirmed = false;         // every row confirmed and nothing extra
};

TableReport verify_table(const SimulTarget& t, const std::vector<SimulCandidate>& claimed,
                         const Int& N);

// Bundled reference data for the two example targets, filtered to size <= N.
// Cyclic-shift operator [[0,1,1],[0,0,1],[1,0,0]]: powers n = 4 and n >= 6
// applied to (1,0,0).
std::vector<SimulCandidate> reference_table_cyclic_shift(const Int& N);
// Three-dimensional Fibonacci operator E1 = [[1,1,1],[1,1,0],[1,0,0]] with
// its companion E2 = (E1 - Id)^-1 = [[0,1,0],[1,-1,1],[0,1,-1]]: the 40
// listed (m,n) exponent pairs applied to (1,0,0), plus the sporadic element
// (3,2,1) inserted third.
std::vector<SimulCandidate> reference_table_golden3d(const Int& N);

}  // namespace mcrs

#endif
