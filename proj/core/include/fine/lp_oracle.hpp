#pragma once

#include <optional>

#include "fine/construct.hpp"
#include "fine/moments.hpp"

namespace fine {

// Ground-truth feasibility of the marginal-matching problem, decided by a
// self-contained phase-1 simplex over the probability simplex. Shares no
// code with the algebraic construction.
struct LpResult {
  bool feasible = false;
  std::optional<JointDist4> witness;
  // Residual phase-1 objective: ~0 when feasible, the irreducible
  // constraint violation otherwise.
  double infeasibility = 0.0;
};

LpResult lp_feasible(const PairMarginals& pm);

struct LpBellResult {
  bool feasible = false;
  std::optional<BellJoint> witness;
  double infeasibility = 0.0;
};

// Three-variable problem: tables over the pairs (1,2), (1,3), (2,3).
LpBellResult lp_feasible_bell(const PairTable& m12, const PairTable& m13,
                              const PairTable& m23);

}  // namespace fine
