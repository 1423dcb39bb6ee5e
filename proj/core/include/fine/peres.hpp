#pragma once

#include <array>
#include <cstdint>

#include "fine/moments.hpp"
#include "fine/vec3.hpp"

namespace fine {

// Measurement directions of the classical angular-momentum model: a1, a2
// for one particle, a3, a4 for the other (which carries momentum -J).
struct VectorQuad {
  Vec3 a1, a2, a3, a4;
};

// Target angles between cross-side direction pairs, each in [0, pi].
struct AngleSet {
  double t13 = 0.0, t23 = 0.0, t24 = 0.0, t14 = 0.0;
};

// Correlation/angle duality of the model: C = -1 + 2 theta / pi for a
// cross-side pair. Exact mutual inverses.
double corr_from_angle(double theta);
double angle_from_corr(double c);

AngleSet angles_from_corrs(double c13, double c14, double c23, double c24);

// All six pairwise angles of a quad.
struct PairAngles {
  double t12 = 0.0, t13 = 0.0, t14 = 0.0, t23 = 0.0, t24 = 0.0, t34 = 0.0;
};

PairAngles angles_of(const VectorQuad& q);

// Fits four unit vectors to the target angles by the fold construction:
// a1 and a3 are placed in the plane, the triangle carrying a2 is folded
// about the a3 edge (monotone bisection on the fold parameter) until the
// free angle between a1 and a2 allows the final triangle carrying a4 to
// close about the a2 edge, which is then solved directly. Succeeds for
// every target passing the angle-form CHSH report, and reproduces t13,
// t23, t24 exactly and t14 within 1e-9.
//
// Throws InfeasibleError when the angle-form CHSH report fails and
// NumericError if bisection cannot reach its tolerance (which does not
// occur on feasible inputs).
VectorQuad fit_vectors(const AngleSet& target);

// The angle between a1 and a2 along the fold path at parameter t in [0,1],
// from the planar maximum at t = 0 to the folded-flat minimum at t = 1.
// Exposed for reachability diagnostics.
double fold_gamma(const AngleSet& target, double t);

// Monte Carlo estimate of the model joint distribution with per-entry
// binomial standard errors. Sampling is fully determined by the seed.
struct McJoint {
  std::array<double, kNumConfigs> p{};
  std::array<double, kNumConfigs> se{};
  std::uint64_t n = 0;

  JointDist4 dist() const { return JointDist4{p}; }
};

// Samples J uniformly on the unit sphere and records the sign pattern
// (sgn(a1.J), sgn(a2.J), -sgn(a3.J), -sgn(a4.J)); the second particle
// carries the opposite momentum, hence the minus signs.
McJoint joint_from_vectors_mc(const VectorQuad& q, std::uint64_t n,
                              std::uint64_t seed);

// Pooled estimate of two independent runs, weighted by sample count.
McJoint merge(const McJoint& a, const McJoint& b);

// The analytically known moments of the model: average spins and triple
// correlators vanish (J -> -J symmetry), cross-side correlators are
// -1 + 2 theta / pi and same-side ones 1 - 2 theta / pi. The four-spin
// correlator has no closed form here; estimate it via Monte Carlo.
struct PeresMoments {
  double c12 = 0.0, c13 = 0.0, c14 = 0.0, c23 = 0.0, c24 = 0.0, c34 = 0.0;
};

PeresMoments moments_from_vectors(const VectorQuad& q);

}  // namespace fine
