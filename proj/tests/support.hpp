#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "fine/construct.hpp"
#include "fine/inequalities.hpp"
#include "fine/moments.hpp"

namespace fine::test {

// Deterministic random helper; every test fixes its own seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((gen_() >> 11) * 0x1.0p-53);
  }

  double exponential() { return -std::log(1.0 - (gen_() >> 11) * 0x1.0p-53); }

  std::uint64_t raw() { return gen_(); }

  // Normalized positive table over all 16 configurations.
  JointDist4 random_joint() {
    JointDist4 d;
    double total = 0.0;
    for (double& x : d.p) {
      x = exponential();
      total += x;
    }
    for (double& x : d.p) x /= total;
    return d;
  }

  BellJoint random_bell_joint() {
    BellJoint d;
    double total = 0.0;
    for (double& x : d.p) {
      x = exponential();
      total += x;
    }
    for (double& x : d.p) x /= total;
    return d;
  }

  std::array<double, 4> correlators_in_cube() {
    return {uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0),
            uniform(-1.0, 1.0)};
  }

  // Rejection sample a correlator vector passing the CHSH report.
  std::array<double, 4> chsh_satisfying() {
    for (;;) {
      const auto c = correlators_in_cube();
      if (chsh_report(c[0], c[1], c[2], c[3]).pass) return c;
    }
  }

  std::array<double, 4> chsh_violating() {
    for (;;) {
      const auto c = correlators_in_cube();
      if (!chsh_report(c[0], c[1], c[2], c[3]).pass) return c;
    }
  }

private:
  std::mt19937_64 gen_;
};

// Brute-force moment computation by direct summation over sign tuples,
// written independently of the library's configuration indexing.
struct BruteMoments {
  double b[4];
  double c12, c13, c14, c23, c24, c34;
  double d123, d124, d134, d234;
  double e;
};

inline BruteMoments brute_moments(const JointDist4& dist) {
  BruteMoments m{};
  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      for (int s3 : {+1, -1}) {
        for (int s4 : {+1, -1}) {
          const SpinConfig cfg{s1, s2, s3, s4};
          const double p = dist.at(cfg);
          m.b[0] += s1 * p;
          m.b[1] += s2 * p;
          m.b[2] += s3 * p;
          m.b[3] += s4 * p;
          m.c12 += s1 * s2 * p;
          m.c13 += s1 * s3 * p;
          m.c14 += s1 * s4 * p;
          m.c23 += s2 * s3 * p;
          m.c24 += s2 * s4 * p;
          m.c34 += s3 * s4 * p;
          m.d123 += s1 * s2 * s3 * p;
          m.d124 += s1 * s2 * s4 * p;
          m.d134 += s1 * s3 * s4 * p;
          m.d234 += s2 * s3 * s4 * p;
          m.e += s1 * s2 * s3 * s4 * p;
        }
      }
    }
  }
  return m;
}

inline double max_abs_diff(const std::array<double, 16>& a,
                           const std::array<double, 16>& b) {
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace fine::test
