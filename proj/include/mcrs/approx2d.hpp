#ifndef MCRS_APPROX2D_HPP
#define MCRS_APPROX2D_HPP

#include <array>
#include <optional>
#include <vector>

#include "mcrs/form.hpp"
#include "mcrs/group.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

// Approximate a planar group by rational groups of size at most N.
struct ApproxQuery {
  MCRSGroup target;
  Int N{1};
};

// The certified bounds that justified pruning the candidate set. Absent when
// the search fell back to full enumeration (which needs no certificate).
struct PruningCertificate {
  Rational eps2;                // slope perturbation radius of the seed candidate
  Real rho_upper;               // certified upper bound on the optimal discrepancy
  std::array<Real, 2> delta;    // slope confinement radius per eigendirection
  std::array<Real, 2> phi_cap;  // admission cap on |Phi(p,q)|/q^2 per eigendirection
};

struct ApproxResult {
  std::vector<MCRSGroup> minimizers;  // every tie, sorted by defining vectors
  DiscrepancyValue rho;
  Int N{1};
  std::optional<PruningCertificate> certificate;
};

// One record per requested size: the optimal discrepancy and its N^2-scaling.
struct LagrangeRateReport {
  struct Row {
    Int N;
    Real rho;
    Real scaled;  // rho * N^2
  };
  std::vector<Row> rows;
  Real window_min{0}, window_max{0};  // min/max of `scaled` over rows with rho > 0
  bool degenerate = false;            // some rho_N is exactly zero
};

// Slope confinement radii for a hyperbolic target with eigenline slopes a1,
// a2: any rational group with lines y = s_i x within eps1 of the target in
// discrepancy has |s_i - a_i| below the returned radius (index 0 for a1).
// Requires eps1 < 1/|a1 - a2| ("epsilon too large") and a1, a2 nonzero.
std::array<Real, 2> delta_bound_from_eps(const Real& a1, const Real& a2, const Real& eps1);

// Discrepancy reached by perturbing both slopes by less than eps2: an upper
// bound on rho between the target and any group with |s_i - a_i| < eps2.
Real eps_bound_from_delta(const Real& a1, const Real& a2, const Real& eps2);

// Factor c such that |a_side - m/n| > c * |Phi(m,n)| / n^2 whenever
// |a_side - m/n| < eps3 (side is 1 or 2). Inverted, it caps |Phi|/n^2 for
// every slope admitted by a confinement radius of eps3.
Real phi_over_q2_bound(const Real& a1, const Real& a2, const Real& eps3, int side);

// Complex-pair analogues for a target with eigenlines y = (alpha +- I beta)x.
// Confinement radii for (alpha, beta) given a discrepancy bound eps1; requires
// eps1 < 1/(2(1+|beta|)) and a positive denominator ("epsilon too large").
std::array<Real, 2> conj_delta_bound_from_eps(const Real& alpha, const Real& beta,
                                              const Real& eps1);
// Discrepancy reached by perturbing alpha and beta by less than eps2.
Real conj_rho_bound_from_delta(const Real& alpha, const Real& beta, const Real& eps2);
// Factor c with |(alpha + I beta) - z| > c * |Phi(1, z)| whenever the left
// side is below eps3.
Real conj_phi_bound(const Real& beta, const Real& eps3);

// Best rational approximations of a hyperbolic planar target: certified
// pruning (slope confinement plus the |Phi|/q^2 cap) when the bounds apply,
// full enumeration otherwise; returns all minimizers with the exact optimum.
ApproxResult best_approx_hyperbolic(const ApproxQuery& q);

// Same contract for a target with a conjugate pair of eigenlines; candidates
// are conjugate pairs of Gaussian lines.
ApproxResult best_approx_complex(const ApproxQuery& q);

// Exhaustive reference search over every rational planar group of size <= N
// (pairs of real rational lines and conjugate Gaussian pairs). Refuses N
// beyond the cap.
ApproxResult brute_force_best(const ApproxQuery& q, const Int& cap = Int(60));

// Dispatch on the target's spectrum.
ApproxResult best_approx(const ApproxQuery& q);

// rho_N for each requested size, with the window of rho_N * N^2.
LagrangeRateReport lagrange_sweep(const MCRSGroup& target, const std::vector<Int>& sizes);

// Sail level of each defining vector of each minimizer, relative to the
// target's geometric continued fraction: one (k1, k2) per minimizer.
std::vector<std::array<int, 2>> sail_level_of_result(const MCRSGroup& target,
                                                     const ApproxResult& result);

}  // namespace mcrs

#endif
