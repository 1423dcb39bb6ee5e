#include "fine/construct.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fine/inequalities.hpp"

namespace fine {

namespace {

// Clamp entries in [-1e-12, 0) to zero and renormalize. Entries below the
// clamp window are a contract violation and are left for validate() to
// reject.
template <std::size_t N>
void clamp_and_renormalize(std::array<double, N>& p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < 0.0 && x >= -kEpsNeg) x = 0.0;
    total += x;
  }
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
}

}  // namespace

FeasibleIntervals feasible_intervals(double c13, double c14, double c23,
                                     double c24) {
  const auto g = g_values(c13, c14, c23, c24);
  const double ag1 = std::abs(g[0]), ag2 = std::abs(g[1]);
  const double ag3 = std::abs(g[2]), ag4 = std::abs(g[3]);

  FeasibleIntervals f;
  f.e = {0.5 * (ag1 + ag2) - 1.0, 1.0 - 0.5 * (ag3 + ag4)};
  if (f.e.lo > f.e.hi + kEpsNeg) {
    const double violation = ag1 + ag2 + ag3 + ag4 - 4.0;
    throw InfeasibleError(
        "no four-spin correlator exists: |G1|+|G2|+|G3|+|G4| exceeds 4 by " +
            std::to_string(violation),
        violation);
  }
  const auto [sum, diff] = sum_diff_intervals(g, f.e.mid());
  f.sum = sum;
  f.diff = diff;
  return f;
}

std::pair<Interval, Interval> sum_diff_intervals(const std::array<double, 4>& g,
                                                 double e) {
  Interval sum{-1.0 + std::abs(g[0]) - e, 1.0 - std::abs(g[1]) + e};
  Interval diff{-1.0 + std::abs(g[2]) + e, 1.0 - std::abs(g[3]) - e};
  return {sum, diff};
}

JointDist4 construct_joint_chsh(double c13, double c14, double c23,
                                double c24) {
  const FeasibleIntervals f = feasible_intervals(c13, c14, c23, c24);
  const double e = f.e.mid();
  const double sum = f.sum.mid();
  const double diff = f.diff.mid();
  const double c12 = 0.5 * (sum + diff);
  const double c34 = 0.5 * (sum - diff);

  MomentVector m;
  m.c(Pair::p12) = c12;
  m.c(Pair::p13) = c13;
  m.c(Pair::p14) = c14;
  m.c(Pair::p23) = c23;
  m.c(Pair::p24) = c24;
  m.c(Pair::p34) = c34;
  m.quad = e;

  QuasiJoint q = moments_to_joint(m);
  clamp_and_renormalize(q.p);
  return JointDist4::validated(q.p);
}

JointDist4 construct_from_marginals(const PairMarginals& pm) {
  const FixedMoments f = fixed_moments_from_marginals(pm);
  for (int i = 0; i < 4; ++i) {
    if (std::abs(f.single[i]) > kEpsUser) {
      throw UnsupportedError(
          "algebraic construction requires zero average spins, but <s" +
          std::to_string(i + 1) + "> = " + std::to_string(f.single[i]) +
          "; use the LP oracle for this input");
    }
  }
  return construct_joint_chsh(f.c13, f.c14, f.c23, f.c24);
}

void BellJoint::validate(double eps_neg) const {
  double total = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (!(p[i] >= -eps_neg)) {
      throw ValidationError("three-spin distribution entry " +
                            std::to_string(i) +
                            " is negative: " + std::to_string(p[i]));
    }
    total += p[i];
  }
  if (std::abs(total - 1.0) > kEpsNorm) {
    throw ValidationError("three-spin distribution sums to " +
                          std::to_string(total) + ", expected 1");
  }
}

namespace {

inline int bell_sign(int idx, int var) {  // var in 1..3
  return (idx >> (3 - var)) & 1 ? -1 : 1;
}

}  // namespace

BellMoments bell_moments(const BellJoint& d) {
  BellMoments m;
  static constexpr int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int idx = 0; idx < 8; ++idx) {
    const double w = d.p[idx];
    for (int i = 0; i < 3; ++i) m.single[i] += bell_sign(idx, i + 1) * w;
    for (int k = 0; k < 3; ++k) {
      m.pair[k] += bell_sign(idx, pairs[k][0]) * bell_sign(idx, pairs[k][1]) * w;
    }
    m.triple += bell_sign(idx, 1) * bell_sign(idx, 2) * bell_sign(idx, 3) * w;
  }
  return m;
}

PairTable marginalize_bell(const BellJoint& d, int vi, int vj) {
  PairTable t;
  for (int idx = 0; idx < 8; ++idx) {
    t.at(bell_sign(idx, vi), bell_sign(idx, vj)) += d.p[idx];
  }
  return t;
}

BellJoint construct_joint_bell(double b1, double b2, double b3, double c12,
                               double c13, double c23) {
  // p(s) = (A(s) + D s1 s2 s3)/8 with A(s) = 1 + sum B_i s_i + sum C_ij s_i s_j.
  // Non-negativity bounds D from above on configs with s1 s2 s3 = -1 and
  // from below on configs with s1 s2 s3 = +1.
  double a[8];
  double d_hi = std::numeric_limits<double>::infinity();
  double d_lo = -std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < 8; ++idx) {
    const int s1 = bell_sign(idx, 1), s2 = bell_sign(idx, 2),
              s3 = bell_sign(idx, 3);
    a[idx] = 1.0 + b1 * s1 + b2 * s2 + b3 * s3 + c12 * s1 * s2 +
             c13 * s1 * s3 + c23 * s2 * s3;
    if (s1 * s2 * s3 < 0) {
      d_hi = std::min(d_hi, a[idx]);
    } else {
      d_lo = std::max(d_lo, -a[idx]);
    }
  }
  if (d_lo > d_hi + kEpsNeg) {
    throw InfeasibleError(
        "no triple correlator exists for these moments (interval [" +
            std::to_string(d_lo) + ", " + std::to_string(d_hi) + "] empty)",
        d_lo - d_hi);
  }
  const double dmid = 0.5 * (d_lo + d_hi);

  BellJoint out;
  for (int idx = 0; idx < 8; ++idx) {
    const int s1 = bell_sign(idx, 1), s2 = bell_sign(idx, 2),
              s3 = bell_sign(idx, 3);
    out.p[idx] = (a[idx] + dmid * s1 * s2 * s3) / 8.0;
  }
  clamp_and_renormalize(out.p);
  out.validate();
  return out;
}

}  // namespace fine
