#include "fine/maxent.hpp"

#include <cmath>

#include "doctest.h"
#include "fine/construct.hpp"
#include "fine/inequalities.hpp"
#include "support.hpp"

using namespace fine;
using fine::test::Rng;

TEST_CASE("zero targets solve immediately with zero multipliers") {
  const MaxEntSolution s = solve_maxent(0, 0, 0, 0);
  CHECK(s.converged);
  CHECK(s.iterations <= 1);
  for (double l : s.lambda) CHECK(l == doctest::Approx(0.0));
  const JointDist4 d = maxent_joint(s.lambda);
  for (double x : d.p) CHECK(x == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("moderate equal targets converge and round trip") {
  const MaxEntSolution s = solve_maxent(0.2, 0.2, 0.2, 0.2);
  REQUIRE(s.converged);
  CHECK(s.residual <= 1e-10);
  const MomentVector m = joint_to_moments(maxent_joint(s.lambda));
  CHECK(std::abs(m.c(Pair::p13) - 0.2) < 1e-10);
  CHECK(std::abs(m.c(Pair::p14) - 0.2) < 1e-10);
  CHECK(std::abs(m.c(Pair::p23) - 0.2) < 1e-10);
  CHECK(std::abs(m.c(Pair::p24) - 0.2) < 1e-10);
}

TEST_CASE("single multiplier gives a tanh moment curve") {
  for (double t : {-2.0, -0.5, 0.3, 1.7}) {
    const JointDist4 d = maxent_joint({t, 0, 0, 0});
    const MomentVector m = joint_to_moments(d);
    CHECK(m.c(Pair::p13) == doctest::Approx(std::tanh(t)).epsilon(1e-12));
    CHECK(std::abs(m.c(Pair::p14)) < 1e-12);
    CHECK(std::abs(m.c(Pair::p23)) < 1e-12);
    CHECK(std::abs(m.c(Pair::p24)) < 1e-12);
  }
}

TEST_CASE("log normalization matches the ansatz") {
  const MaxEntSolution s = solve_maxent(0.4, -0.3, 0.25, 0.15);
  REQUIRE(s.converged);
  const JointDist4 d = maxent_joint(s.lambda);
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    const SpinConfig cfg = SpinConfig::from_index(idx);
    const double expo = s.lambda[0] * cfg.s1 * cfg.s3 +
                        s.lambda[1] * cfg.s1 * cfg.s4 +
                        s.lambda[2] * cfg.s2 * cfg.s3 +
                        s.lambda[3] * cfg.s2 * cfg.s4;
    CHECK(d.p[idx] == doctest::Approx(std::exp(s.log_norm + expo)).epsilon(1e-12));
  }
}

TEST_CASE("large multipliers stay normalized and positive") {
  const JointDist4 d = maxent_joint({10, 10, 10, 10});
  double total = 0.0;
  for (double x : d.p) {
    CHECK(x > 0.0);
    total += x;
  }
  CHECK(std::abs(total - 1.0) < 1e-14);
}

TEST_CASE("non-finite multipliers are rejected") {
  CHECK_THROWS_AS(maxent_joint({1.0, 0.0, 0.0,
                                std::numeric_limits<double>::infinity()}),
                  DomainError);
}

TEST_CASE("targets on or outside the unit box are a domain error") {
  CHECK_THROWS_AS(solve_maxent(1.0, 0, 0, 0), DomainError);
  CHECK_THROWS_AS(solve_maxent(0, -1.0, 0, 0), DomainError);
  CHECK_THROWS_AS(solve_maxent(0, 0, 1.2, 0), DomainError);
}

TEST_CASE("jacobian of the moment map is the statistics covariance") {
  // Central finite differences of the public moment map against the
  // covariance computed directly from the distribution.
  Rng rng(0xF001);
  for (int it = 0; it < 20; ++it) {
    std::array<double, 4> lam;
    for (double& l : lam) l = rng.uniform(-1.0, 1.0);

    const JointDist4 d = maxent_joint(lam);
    double cov[4][4] = {};
    double mu[4] = {};
    for (int idx = 0; idx < kNumConfigs; ++idx) {
      const SpinConfig s = SpinConfig::from_index(idx);
      const double stat[4] = {double(s.s1 * s.s3), double(s.s1 * s.s4),
                              double(s.s2 * s.s3), double(s.s2 * s.s4)};
      for (int r = 0; r < 4; ++r) mu[r] += stat[r] * d.p[idx];
    }
    for (int idx = 0; idx < kNumConfigs; ++idx) {
      const SpinConfig s = SpinConfig::from_index(idx);
      const double stat[4] = {double(s.s1 * s.s3), double(s.s1 * s.s4),
                              double(s.s2 * s.s3), double(s.s2 * s.s4)};
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          cov[r][c] += (stat[r] - mu[r]) * (stat[c] - mu[c]) * d.p[idx];
        }
      }
    }

    const double h = 1e-6;
    for (int c = 0; c < 4; ++c) {
      auto lp = lam, lm = lam;
      lp[c] += h;
      lm[c] -= h;
      const auto up = maxent_moments(lp);
      const auto um = maxent_moments(lm);
      for (int r = 0; r < 4; ++r) {
        const double fd = (up[r] - um[r]) / (2.0 * h);
        CHECK(std::abs(fd - cov[r][c]) < 1e-6);
        CHECK(std::abs(cov[r][c] - cov[c][r]) < 1e-15);  // symmetry
      }
    }
  }
}

TEST_CASE("convergence implies agreement with the algebraic construction") {
  const double c13 = 0.3, c14 = 0.1, c23 = -0.2, c24 = 0.4;
  const MaxEntSolution s = solve_maxent(c13, c14, c23, c24);
  REQUIRE(s.converged);
  const JointDist4 me = maxent_joint(s.lambda);
  const JointDist4 alg = construct_joint_chsh(c13, c14, c23, c24);
  // Same pair marginals on the four fixed pairs...
  for (Pair p : {Pair::p13, Pair::p14, Pair::p23, Pair::p24}) {
    const PairTable a = marginalize_pair(me, p);
    const PairTable b = marginalize_pair(alg, p);
    for (int si : {1, -1}) {
      for (int sj : {1, -1}) {
        CHECK(std::abs(a.at(si, sj) - b.at(si, sj)) < 1e-8);
      }
    }
  }
  // ...but generally different distributions.
  double dist = 0.0;
  for (int i = 0; i < kNumConfigs; ++i) {
    dist = std::max(dist, std::abs(me.p[i] - alg.p[i]));
  }
  CHECK(dist > 1e-3);
}

// The exponential-family moment map covers the strict interior of the
// region carved out by the CHSH report, so the solver keeps converging
// arbitrarily close to the boundary, with the multipliers growing as the
// boundary is approached. At all-equal targets the solution is known in
// closed form through C = sinh(4 l) / (cosh(4 l) + 3).
TEST_CASE("near-boundary equal targets still converge") {
  const double target = 0.999;
  const MaxEntSolution s = solve_maxent(target, target, target, target);
  CHECK(s.converged);
  CHECK(s.residual <= 1e-10);
  // sinh(4 l)/(cosh(4 l) + 3) = 0.999 has the root l = 2.1746424705...
  for (double l : s.lambda) CHECK(l == doctest::Approx(2.1746424705).epsilon(1e-9));

  const MaxEntSolution tighter = solve_maxent(0.999999, 0.999999, 0.999999,
                                              0.999999);
  CHECK(tighter.converged);
}

TEST_CASE("violating targets cannot converge and report their residual") {
  const MaxEntSolution s = solve_maxent(0.9, 0.9, 0.9, -0.9);
  CHECK_FALSE(s.converged);
  CHECK(s.residual > 1e-3);
  CHECK_FALSE(chsh_report(0.9, 0.9, 0.9, -0.9).pass);
}

TEST_CASE("converged solutions land inside the chsh region") {
  Rng rng(0xF002);
  for (int it = 0; it < 200; ++it) {
    auto c = rng.chsh_satisfying();
    // Keep targets strictly inside the unit box.
    for (double& x : c) x *= 0.999999;
    const MaxEntSolution s = solve_maxent(c[0], c[1], c[2], c[3]);
    REQUIRE(s.converged);
    const JointDist4 d = maxent_joint(s.lambda);
    const MomentVector m = joint_to_moments(d);
    CHECK(std::abs(m.c(Pair::p13) - c[0]) <= 1e-9);
    CHECK(std::abs(m.c(Pair::p14) - c[1]) <= 1e-9);
    CHECK(std::abs(m.c(Pair::p23) - c[2]) <= 1e-9);
    CHECK(std::abs(m.c(Pair::p24) - c[3]) <= 1e-9);
  }
}
