#include "fine/lp_oracle.hpp"

#include <cmath>

#include "doctest.h"
#include "fine/inequalities.hpp"
#include "support.hpp"

using namespace fine;
using fine::test::Rng;

namespace {

double marginal_residual(const JointDist4& w, const PairMarginals& pm) {
  double worst = 0.0;
  const struct {
    Pair p;
    const PairTable* t;
  } blocks[] = {{Pair::p13, &pm.m13},
                {Pair::p14, &pm.m14},
                {Pair::p23, &pm.m23},
                {Pair::p24, &pm.m24}};
  for (const auto& b : blocks) {
    const PairTable got = marginalize_pair(w, b.p);
    for (int si : {1, -1}) {
      for (int sj : {1, -1}) {
        worst = std::max(worst, std::abs(got.at(si, sj) - b.t->at(si, sj)));
      }
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("uniform marginals are feasible with a valid witness") {
  const PairMarginals pm = make_pair_marginals({0, 0, 0, 0}, 0, 0, 0, 0);
  const LpResult r = lp_feasible(pm);
  REQUIRE(r.feasible);
  CHECK(r.infeasibility <= 1e-9);
  REQUIRE(r.witness.has_value());
  r.witness->validate();
  CHECK(marginal_residual(*r.witness, pm) <= 1e-9);
}

TEST_CASE("the maximally nonlocal point is infeasible") {
  const PairMarginals pm = make_pair_marginals({0, 0, 0, 0}, 1, 1, 1, -1);
  const LpResult r = lp_feasible(pm);
  CHECK_FALSE(r.feasible);
  CHECK(r.infeasibility > 1e-9);
  CHECK_FALSE(chsh_report(1, 1, 1, -1).pass);
}

TEST_CASE("marginals of any distribution are feasible, including nonzero averages") {
  Rng rng(0xD001);
  for (int it = 0; it < 400; ++it) {
    const JointDist4 src = rng.random_joint();
    PairMarginals pm;
    pm.m13 = marginalize_pair(src, Pair::p13);
    pm.m14 = marginalize_pair(src, Pair::p14);
    pm.m23 = marginalize_pair(src, Pair::p23);
    pm.m24 = marginalize_pair(src, Pair::p24);
    const LpResult r = lp_feasible(pm);
    REQUIRE(r.feasible);
    CHECK(marginal_residual(*r.witness, pm) <= 1e-9);
  }
}

TEST_CASE("oracle verdict matches the chsh report for zero averages") {
  Rng rng(0xD002);
  for (int it = 0; it < 2000; ++it) {
    const auto c = rng.correlators_in_cube();
    const PairMarginals pm =
        make_pair_marginals({0, 0, 0, 0}, c[0], c[1], c[2], c[3]);
    const bool chsh = chsh_report(c[0], c[1], c[2], c[3]).pass;
    CHECK(lp_feasible(pm).feasible == chsh);
  }
}

TEST_CASE("the oracle is deterministic") {
  const PairMarginals pm =
      make_pair_marginals({0, 0, 0, 0}, 0.3, -0.2, 0.7, 0.1);
  const LpResult a = lp_feasible(pm);
  const LpResult b = lp_feasible(pm);
  REQUIRE(a.feasible);
  REQUIRE(b.feasible);
  for (int i = 0; i < kNumConfigs; ++i) {
    CHECK(a.witness->p[i] == b.witness->p[i]);
  }
}

TEST_CASE("inconsistent tables are rejected before solving") {
  PairMarginals pm;
  pm.m13 = make_pair_table(0.4, 0.0, 0.0);
  pm.m14 = make_pair_table(0.0, 0.0, 0.0);
  pm.m23 = make_pair_table(0.0, 0.0, 0.0);
  pm.m24 = make_pair_table(0.0, 0.0, 0.0);
  CHECK_THROWS_AS(lp_feasible(pm), ConsistencyError);
}

TEST_CASE("three-variable oracle") {
  SUBCASE("uniform is feasible") {
    const PairTable u = make_pair_table(0, 0, 0);
    const LpBellResult r = lp_feasible_bell(u, u, u);
    REQUIRE(r.feasible);
    r.witness->validate();
  }
  SUBCASE("mutual anticorrelation is infeasible") {
    const PairTable t = make_pair_table(0, 0, -1);
    const LpBellResult r = lp_feasible_bell(t, t, t);
    CHECK_FALSE(r.feasible);
    CHECK(r.infeasibility > 1e-9);
  }
  SUBCASE("witness round trip through the construction") {
    Rng rng(0xD003);
    for (int it = 0; it < 200; ++it) {
      const BellJoint src = rng.random_bell_joint();
      const BellMoments m = bell_moments(src);
      const BellJoint d = construct_joint_bell(m.single[0], m.single[1],
                                               m.single[2], m.pair[0],
                                               m.pair[1], m.pair[2]);
      const LpBellResult r =
          lp_feasible_bell(marginalize_bell(d, 1, 2), marginalize_bell(d, 1, 3),
                           marginalize_bell(d, 2, 3));
      REQUIRE(r.feasible);
      const BellMoments got = bell_moments(*r.witness);
      CHECK(std::abs(got.pair[0] - m.pair[0]) <= 1e-9);
      CHECK(std::abs(got.single[0] - m.single[0]) <= 1e-9);
    }
  }
}
