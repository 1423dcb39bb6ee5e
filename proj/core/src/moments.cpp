#include "fine/moments.hpp"

#include <cmath>
#include <string>

namespace fine {

namespace {

std::string table_str(const PairTable& t) {
  return "[[" + std::to_string(t.v[0][0]) + ", " + std::to_string(t.v[0][1]) +
         "], [" + std::to_string(t.v[1][0]) + ", " + std::to_string(t.v[1][1]) +
         "]]";
}

}  // namespace

void JointDist4::validate(double eps_neg) const {
  double total = 0.0;
  for (int i = 0; i < kNumConfigs; ++i) {
    if (!(p[i] >= -eps_neg)) {
      throw ValidationError("joint distribution entry " + std::to_string(i) +
                            " is negative: " + std::to_string(p[i]));
    }
    total += p[i];
  }
  if (std::abs(total - 1.0) > kEpsNorm) {
    throw ValidationError("joint distribution sums to " +
                          std::to_string(total) + ", expected 1");
  }
}

JointDist4 JointDist4::validated(const std::array<double, kNumConfigs>& table,
                                 double eps_neg) {
  JointDist4 d{table};
  d.validate(eps_neg);
  return d;
}

JointDist4 QuasiJoint::as_dist(double eps_neg) const {
  if (!nonnegative(eps_neg)) {
    throw ValidationError("quasi-distribution has min entry " +
                          std::to_string(min_entry));
  }
  JointDist4 d{p};
  d.validate(eps_neg);
  return d;
}

const char* pair_name(Pair p) {
  static const char* names[6] = {"12", "13", "14", "23", "24", "34"};
  return names[static_cast<int>(p)];
}

double PairTable::sum() const {
  return v[0][0] + v[0][1] + v[1][0] + v[1][1];
}

double PairTable::correlator() const {
  return v[0][0] - v[0][1] - v[1][0] + v[1][1];
}

double PairTable::first_average() const {
  return v[0][0] + v[0][1] - v[1][0] - v[1][1];
}

double PairTable::second_average() const {
  return v[0][0] - v[0][1] + v[1][0] - v[1][1];
}

void PairTable::validate(double eps) const {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (!(v[r][c] >= -eps)) {
        throw ValidationError("pair table entry (" + std::to_string(r) + "," +
                              std::to_string(c) +
                              ") is negative: " + std::to_string(v[r][c]));
      }
    }
  }
  if (std::abs(sum() - 1.0) > eps) {
    throw ValidationError("pair table " + table_str(*this) + " sums to " +
                          std::to_string(sum()) + ", expected 1");
  }
}

void PairMarginals::validate(double eps_user) const {
  m13.validate(eps_user);
  m14.validate(eps_user);
  m23.validate(eps_user);
  m24.validate(eps_user);

  struct Check {
    const char* what;
    double a, b;
  };
  const Check checks[] = {
      {"<s1> from p(s1,s3) vs p(s1,s4)", m13.first_average(), m14.first_average()},
      {"<s2> from p(s2,s3) vs p(s2,s4)", m23.first_average(), m24.first_average()},
      {"<s3> from p(s1,s3) vs p(s2,s3)", m13.second_average(), m23.second_average()},
      {"<s4> from p(s1,s4) vs p(s2,s4)", m14.second_average(), m24.second_average()},
  };
  for (const auto& c : checks) {
    if (std::abs(c.a - c.b) > eps_user) {
      throw ConsistencyError(std::string("inconsistent single-spin marginals: ") +
                             c.what + " differ by " +
                             std::to_string(std::abs(c.a - c.b)));
    }
  }
}

MomentVector joint_to_moments(const JointDist4& d) {
  d.validate();
  MomentVector m;
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    const SpinConfig s = SpinConfig::from_index(idx);
    const double w = d.p[idx];
    for (int i = 0; i < 4; ++i) m.single[i] += s.sign(i + 1) * w;
    for (int k = 0; k < 6; ++k) {
      m.pair[k] += s.sign(kPairFirst[k]) * s.sign(kPairSecond[k]) * w;
    }
    for (int k = 0; k < 4; ++k) {
      m.triple[k] += s.sign(kTripleVars[k][0]) * s.sign(kTripleVars[k][1]) *
                     s.sign(kTripleVars[k][2]) * w;
    }
    m.quad += s.s1 * s.s2 * s.s3 * s.s4 * w;
  }
  return m;
}

QuasiJoint moments_to_joint(const MomentVector& m) {
  QuasiJoint q;
  q.min_entry = 1.0;
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    const SpinConfig s = SpinConfig::from_index(idx);
    double acc = 1.0;
    for (int i = 0; i < 4; ++i) acc += m.single[i] * s.sign(i + 1);
    for (int k = 0; k < 6; ++k) {
      acc += m.pair[k] * s.sign(kPairFirst[k]) * s.sign(kPairSecond[k]);
    }
    for (int k = 0; k < 4; ++k) {
      acc += m.triple[k] * s.sign(kTripleVars[k][0]) *
             s.sign(kTripleVars[k][1]) * s.sign(kTripleVars[k][2]);
    }
    acc += m.quad * s.s1 * s.s2 * s.s3 * s.s4;
    q.p[idx] = acc / 16.0;
    if (q.p[idx] < q.min_entry) q.min_entry = q.p[idx];
  }
  return q;
}

PairTable marginalize_pair(const JointDist4& d, Pair pair) {
  d.validate();
  const int vi = kPairFirst[static_cast<int>(pair)];
  const int vj = kPairSecond[static_cast<int>(pair)];
  PairTable t;
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    const SpinConfig s = SpinConfig::from_index(idx);
    t.at(s.sign(vi), s.sign(vj)) += d.p[idx];
  }
  return t;
}

FixedMoments fixed_moments_from_marginals(const PairMarginals& pm) {
  pm.validate();
  FixedMoments f;
  // Each average is computable from two tables; validate() has already
  // checked agreement, so use the mean of both routes.
  f.single[0] = 0.5 * (pm.m13.first_average() + pm.m14.first_average());
  f.single[1] = 0.5 * (pm.m23.first_average() + pm.m24.first_average());
  f.single[2] = 0.5 * (pm.m13.second_average() + pm.m23.second_average());
  f.single[3] = 0.5 * (pm.m14.second_average() + pm.m24.second_average());
  f.c13 = pm.m13.correlator();
  f.c14 = pm.m14.correlator();
  f.c23 = pm.m23.correlator();
  f.c24 = pm.m24.correlator();
  return f;
}

PairTable make_pair_table(double bi, double bj, double cij) {
  PairTable t;
  for (int si : {1, -1}) {
    for (int sj : {1, -1}) {
      t.at(si, sj) = (1.0 + bi * si + bj * sj + cij * si * sj) / 4.0;
    }
  }
  return t;
}

PairMarginals make_pair_marginals(const std::array<double, 4>& single,
                                  double c13, double c14, double c23,
                                  double c24) {
  PairMarginals pm;
  pm.m13 = make_pair_table(single[0], single[2], c13);
  pm.m14 = make_pair_table(single[0], single[3], c14);
  pm.m23 = make_pair_table(single[1], single[2], c23);
  pm.m24 = make_pair_table(single[1], single[3], c24);
  pm.validate();
  return pm;
}

}  // namespace fine
