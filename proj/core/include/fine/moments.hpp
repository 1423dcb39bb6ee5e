#pragma once

#include <array>

#include "fine/errors.hpp"

namespace fine {

// Global tolerances. Internal arithmetic is held to 1e-12, user-supplied
// data to the looser 1e-10, inequality checks pass one-sided at 1e-10.
inline constexpr double kEpsNeg = 1e-12;
inline constexpr double kEpsNorm = 1e-12;
inline constexpr double kEpsUser = 1e-10;
inline constexpr double kEpsPass = 1e-10;

inline constexpr int kNumConfigs = 16;

// One sign assignment (s1,s2,s3,s4), each si in {+1,-1}.
//
// The sixteen configurations are enumerated lexicographically with +1
// ordered before -1: index 0 = (+,+,+,+), 1 = (+,+,+,-), ...,
// 15 = (-,-,-,-). This order is fixed and used by every table and file
// format in the project.
struct SpinConfig {
  int s1 = 1, s2 = 1, s3 = 1, s4 = 1;

  static SpinConfig from_index(int idx) {
    return SpinConfig{(idx & 8) ? -1 : 1, (idx & 4) ? -1 : 1,
                      (idx & 2) ? -1 : 1, (idx & 1) ? -1 : 1};
  }
  int index() const {
    return (s1 < 0 ? 8 : 0) | (s2 < 0 ? 4 : 0) | (s3 < 0 ? 2 : 0) |
           (s4 < 0 ? 1 : 0);
  }
  // var in 1..4
  int sign(int var) const {
    switch (var) {
      case 1: return s1;
      case 2: return s2;
      case 3: return s3;
      default: return s4;
    }
  }
};

// Probability distribution over the 16 sign configurations.
// Entries follow the fixed lexicographic order of SpinConfig.
struct JointDist4 {
  std::array<double, kNumConfigs> p{};

  double operator[](int idx) const { return p[idx]; }
  double at(const SpinConfig& s) const { return p[s.index()]; }

  // Throws ValidationError unless entries >= -eps_neg and the total is 1
  // within kEpsNorm.
  void validate(double eps_neg = kEpsNeg) const;
  static JointDist4 validated(const std::array<double, kNumConfigs>& table,
                              double eps_neg = kEpsNeg);
};

// A normalized signed table of the moment-representation form. Entries may
// be negative; min_entry records how negative.
struct QuasiJoint {
  std::array<double, kNumConfigs> p{};
  double min_entry = 0.0;

  bool nonnegative(double eps_neg = kEpsNeg) const {
    return min_entry >= -eps_neg;
  }
  // Throws ValidationError if any entry < -eps_neg.
  JointDist4 as_dist(double eps_neg = kEpsNeg) const;
};

// Pair order used for the six two-spin correlators.
enum class Pair { p12 = 0, p13, p14, p23, p24, p34 };

inline constexpr std::array<Pair, 6> kAllPairs = {Pair::p12, Pair::p13,
                                                  Pair::p14, Pair::p23,
                                                  Pair::p24, Pair::p34};
// First/second variable (1-based) of each Pair.
inline constexpr std::array<int, 6> kPairFirst = {1, 1, 1, 2, 2, 3};
inline constexpr std::array<int, 6> kPairSecond = {2, 3, 4, 3, 4, 4};
// Triple order: (123), (124), (134), (234).
inline constexpr int kTripleVars[4][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};

const char* pair_name(Pair p);  // "12", "13", ...

// The full correlator set of a four-spin distribution:
// single[i-1] = <s_i>, pair[k] = <s_i s_j> in the order 12,13,14,23,24,34,
// triple[k] = <s_i s_j s_k> in the order 123,124,134,234, quad = <s1 s2 s3 s4>.
struct MomentVector {
  std::array<double, 4> single{};
  std::array<double, 6> pair{};
  std::array<double, 4> triple{};
  double quad = 0.0;

  double& c(Pair p) { return pair[static_cast<int>(p)]; }
  double c(Pair p) const { return pair[static_cast<int>(p)]; }
};

// A 2x2 sign-indexed probability table. Row = first spin, column = second
// spin, with +1 indexed before -1.
struct PairTable {
  std::array<std::array<double, 2>, 2> v{};

  static int slot(int sign) { return sign > 0 ? 0 : 1; }
  double& at(int si, int sj) { return v[slot(si)][slot(sj)]; }
  double at(int si, int sj) const { return v[slot(si)][slot(sj)]; }

  double sum() const;
  double correlator() const;    // sum of si*sj*p
  double first_average() const;  // sum of si*p
  double second_average() const; // sum of sj*p

  // Throws ValidationError unless non-negative within eps and normalized.
  void validate(double eps = kEpsNorm) const;
};

// The four given cross-side tables p(s1,s3), p(s1,s4), p(s2,s3), p(s2,s4).
struct PairMarginals {
  PairTable m13, m14, m23, m24;

  // Table validity plus the single-spin consistency identities
  // (the two ways of computing each <s_i> must agree within eps_user).
  void validate(double eps_user = kEpsUser) const;
};

// Average spins and the four fixed correlators extracted from marginals.
struct FixedMoments {
  std::array<double, 4> single{};
  double c13 = 0.0, c14 = 0.0, c23 = 0.0, c24 = 0.0;
};

MomentVector joint_to_moments(const JointDist4& d);

// Evaluates the moment representation over the 16 configurations:
//   p(s) = (1 + sum_i single_i s_i + sum_{i<j} pair_ij s_i s_j
//             + sum_{i<j<k} triple_ijk s_i s_j s_k + quad s1 s2 s3 s4) / 16.
// The result always sums to 1; entries may be negative.
QuasiJoint moments_to_joint(const MomentVector& m);

PairTable marginalize_pair(const JointDist4& d, Pair pair);

FixedMoments fixed_moments_from_marginals(const PairMarginals& pm);

// Builds the four tables (1 + B_i s_i + B_j s_j + C_ij s_i s_j)/4 and
// validates them.
PairMarginals make_pair_marginals(const std::array<double, 4>& single,
                                  double c13, double c14, double c23,
                                  double c24);

// Single pair table from its three moments.
PairTable make_pair_table(double bi, double bj, double cij);

}  // namespace fine
