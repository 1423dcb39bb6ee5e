#pragma once

#include <array>

#include "fine/moments.hpp"

namespace fine {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x, double eps = 0.0) const {
    return x >= lo - eps && x <= hi + eps;
  }
};

// Feasible ranges for the free correlators given C13, C14, C23, C24:
// e for the four-spin correlator, then (with e fixed at e.mid()) sum for
// C12 + C34 and diff for C12 - C34.
struct FeasibleIntervals {
  Interval e;
  Interval sum;
  Interval diff;
};

// Throws InfeasibleError (carrying |G1|+|G2|+|G3|+|G4| - 4) when the e
// interval is empty, i.e. when the CHSH inequalities fail.
FeasibleIntervals feasible_intervals(double c13, double c14, double c23,
                                     double c24);

// The sum/diff intervals for an arbitrary choice of the four-spin
// correlator e (not just the midpoint).
std::pair<Interval, Interval> sum_diff_intervals(
    const std::array<double, 4>& g, double e);

// Builds a joint distribution matching the four cross correlators with all
// averages and triple correlators equal to zero. Every free correlator is
// chosen at the midpoint of its feasible interval, so the output is
// deterministic and maximally interior. Entries in [-1e-12, 0) are clamped
// to 0 and the table renormalized.
JointDist4 construct_joint_chsh(double c13, double c14, double c23,
                                double c24);

// Same entry point starting from tables. Average spins must vanish within
// kEpsUser; otherwise throws UnsupportedError (use the LP oracle there).
JointDist4 construct_from_marginals(const PairMarginals& pm);

// Distribution over the 8 three-spin configurations, lexicographic with
// +1 first (index 0 = (+,+,+), ..., 7 = (-,-,-)).
struct BellJoint {
  std::array<double, 8> p{};
  void validate(double eps_neg = kEpsNeg) const;
};

// Moments of a three-spin distribution; pair order 12, 13, 23.
struct BellMoments {
  std::array<double, 3> single{};
  std::array<double, 3> pair{};
  double triple = 0.0;
};

BellMoments bell_moments(const BellJoint& d);

PairTable marginalize_bell(const BellJoint& d, int vi, int vj);

// Three-variable construction: the only free parameter is the triple
// correlator, chosen at the midpoint of its feasible interval. Throws
// InfeasibleError when that interval is empty (Bell inequalities or
// marginal positivity violated).
BellJoint construct_joint_bell(double b1, double b2, double b3, double c12,
                               double c13, double c23);

}  // namespace fine
