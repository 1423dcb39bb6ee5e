#pragma once

#include <array>

#include "fine/moments.hpp"

namespace fine {

// Result of fitting the exponential-family ansatz
//   p(s) = N exp(l1 s1 s3 + l2 s1 s4 + l3 s2 s3 + l4 s2 s4)
// to four target cross correlators. residual is the max-norm moment
// mismatch at the returned multipliers; non-convergence is reported, not
// thrown.
struct MaxEntSolution {
  std::array<double, 4> lambda{};
  double log_norm = 0.0;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Damped Newton on the moment-matching map. Targets must lie strictly in
// (-1, 1) or a DomainError is thrown. A singular Jacobian or exhausted
// step halving ends the iteration with converged = false.
MaxEntSolution solve_maxent(double c13, double c14, double c23, double c24,
                            int max_iter = 200, double tol = 1e-10);

// The ansatz distribution for given multipliers; always strictly positive
// and normalized. Exponents are shifted by their maximum before
// exponentiation, so large multipliers cannot overflow.
JointDist4 maxent_joint(const std::array<double, 4>& lambda);

// Cross correlators (13, 14, 23, 24) of the ansatz distribution.
std::array<double, 4> maxent_moments(const std::array<double, 4>& lambda);

}  // namespace fine
