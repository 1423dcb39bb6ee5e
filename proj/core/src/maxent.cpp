#include "fine/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fine {

namespace {

// Sufficient statistics (s1 s3, s1 s4, s2 s3, s2 s4) per configuration.
std::array<std::array<double, 4>, kNumConfigs> statistics() {
  std::array<std::array<double, 4>, kNumConfigs> m{};
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    const SpinConfig s = SpinConfig::from_index(idx);
    m[idx] = {double(s.s1 * s.s3), double(s.s1 * s.s4), double(s.s2 * s.s3),
              double(s.s2 * s.s4)};
  }
  return m;
}

const auto kStats = statistics();

struct Family {
  std::array<double, kNumConfigs> p{};
  double log_norm = 0.0;
};

Family family(const std::array<double, 4>& lambda) {
  Family f;
  std::array<double, kNumConfigs> expo{};
  double emax = -std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    double e = 0.0;
    for (int k = 0; k < 4; ++k) e += lambda[k] * kStats[idx][k];
    expo[idx] = e;
    emax = std::max(emax, e);
  }
  double z = 0.0;
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    f.p[idx] = std::exp(expo[idx] - emax);
    z += f.p[idx];
  }
  for (double& x : f.p) x /= z;
  f.log_norm = -(emax + std::log(z));
  return f;
}

std::array<double, 4> moments_of(const Family& f) {
  std::array<double, 4> mu{};
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    for (int k = 0; k < 4; ++k) mu[k] += kStats[idx][k] * f.p[idx];
  }
  return mu;
}

// Covariance matrix of the statistics under f: the Jacobian of the
// moment-matching map.
std::array<std::array<double, 4>, 4> jacobian(const Family& f,
                                              const std::array<double, 4>& mu) {
  std::array<std::array<double, 4>, 4> j{};
  for (int idx = 0; idx < kNumConfigs; ++idx) {
    for (int r = 0; r < 4; ++r) {
      for (int c = r; c < 4; ++c) {
        j[r][c] += kStats[idx][r] * kStats[idx][c] * f.p[idx];
      }
    }
  }
  for (int r = 0; r < 4; ++r) {
    for (int c = r; c < 4; ++c) {
      j[r][c] -= mu[r] * mu[c];
      j[c][r] = j[r][c];
    }
  }
  return j;
}

// Gaussian elimination with partial pivoting; returns false when the
// matrix is numerically singular.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b,
            std::array<double, 4>& x) {
  int perm[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int best = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[perm[r]][col]) > std::abs(a[perm[best]][col])) best = r;
    }
    std::swap(perm[col], perm[best]);
    const double piv = a[perm[col]][col];
    if (std::abs(piv) < 1e-300) return false;
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[perm[r]][col] / piv;
      for (int c = col; c < 4; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
      b[perm[r]] -= f * b[perm[col]];
    }
  }
  for (int col = 3; col >= 0; --col) {
    double acc = b[perm[col]];
    for (int c = col + 1; c < 4; ++c) acc -= a[perm[col]][c] * x[c];
    x[col] = acc / a[perm[col]][col];
  }
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]) &&
         std::isfinite(x[3]);
}

double max_residual(const std::array<double, 4>& mu,
                    const std::array<double, 4>& target) {
  double r = 0.0;
  for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(mu[k] - target[k]));
  return r;
}

}  // namespace

JointDist4 maxent_joint(const std::array<double, 4>& lambda) {
  for (double l : lambda) {
    if (!std::isfinite(l)) {
      throw DomainError("multipliers must be finite");
    }
  }
  JointDist4 d{family(lambda).p};
  d.validate(0.0);
  return d;
}

std::array<double, 4> maxent_moments(const std::array<double, 4>& lambda) {
  return moments_of(family(lambda));
}

MaxEntSolution solve_maxent(double c13, double c14, double c23, double c24,
                            int max_iter, double tol) {
  const std::array<double, 4> target = {c13, c14, c23, c24};
  for (double c : target) {
    if (!(std::abs(c) < 1.0)) {
      throw DomainError("maxent targets must lie strictly inside (-1, 1), got " +
                        std::to_string(c));
    }
  }

  MaxEntSolution sol;
  for (int k = 0; k < 4; ++k) sol.lambda[k] = 0.5 * std::atanh(target[k]);

  Family f = family(sol.lambda);
  std::array<double, 4> mu = moments_of(f);
  sol.residual = max_residual(mu, target);

  while (sol.iterations < max_iter && sol.residual > tol) {
    const auto j = jacobian(f, mu);
    std::array<double, 4> rhs;
    for (int k = 0; k < 4; ++k) rhs[k] = target[k] - mu[k];
    std::array<double, 4> step{};
    if (!solve4(j, rhs, step)) break;  // singular: report what we reached

    // Step halving: accept the first damped step that reduces the residual.
    bool improved = false;
    double scale = 1.0;
    for (int h = 0; h < 60; ++h) {
      std::array<double, 4> cand;
      for (int k = 0; k < 4; ++k) cand[k] = sol.lambda[k] + scale * step[k];
      const Family cf = family(cand);
      const auto cmu = moments_of(cf);
      const double cres = max_residual(cmu, target);
      if (cres < sol.residual) {
        sol.lambda = cand;
        f = cf;
        mu = cmu;
        sol.residual = cres;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    ++sol.iterations;
    if (!improved) break;
  }

  sol.log_norm = f.log_norm;
  sol.converged = sol.residual <= tol;
  return sol;
}

}  // namespace fine
