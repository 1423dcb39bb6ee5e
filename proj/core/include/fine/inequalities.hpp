#pragma once

#include <array>

#include "fine/moments.hpp"

namespace fine {

// The four CHSH sign combinations, each bounded by [-2, 2]:
//   combo[0] =  C13 + C14 + C23 - C24
//   combo[1] =  C13 + C14 - C23 + C24
//   combo[2] =  C13 - C14 + C23 + C24
//   combo[3] = -C13 + C14 + C23 + C24
// flags[2k] / flags[2k+1] are the lower / upper bound of combo[k].
// g holds the even-sign combinations
//   G1 = C13+C14+C23+C24, G2 = C13-C14-C23+C24,
//   G3 = C13-C14+C23-C24, G4 = C13+C14-C23-C24,
// and single_value = |G1|+|G2|+|G3|+|G4|, which is <= 4 exactly when all
// eight CHSH inequalities hold and every |C| <= 1.
struct ChshReport {
  std::array<double, 4> combo{};
  std::array<bool, 8> flags{};
  std::array<double, 4> g{};
  double single_value = 0.0;
  bool pass = false;
};

ChshReport chsh_report(double c13, double c14, double c23, double c24);

std::array<double, 4> g_values(double c13, double c14, double c23, double c24);

double single_inequality(double c13, double c14, double c23, double c24);

// Three-variable case: sums[k] <= 1 for
//   C12 + C13 - C23, C12 - C13 + C23, -C12 + C13 + C23, -C12 - C13 - C23.
struct BellReport {
  std::array<double, 4> sums{};
  std::array<bool, 4> flags{};
  bool pass = false;
};

BellReport bell_report(double c12, double c13, double c23);

// Angle form of the CHSH inequalities. Each signed sum must lie in [0, 2pi]:
//   sums[0] =  t13 + t23 + t24 - t14
//   sums[1] =  t13 + t23 - t24 + t14
//   sums[2] =  t13 - t23 + t24 + t14
//   sums[3] = -t13 + t23 + t24 + t14
struct AngleChshReport {
  std::array<double, 4> sums{};
  std::array<bool, 4> flags{};
  bool pass = false;
};

AngleChshReport angle_chsh_report(double t13, double t23, double t24,
                                  double t14);

// Non-negativity of the 2x2 marginal (1 + B_i s + B_j s' + C_ij s s')/4,
// one value per sign pair in the order (+,+), (+,-), (-,+), (-,-).
struct PositivityReport {
  std::array<double, 4> values{};
  std::array<bool, 4> flags{};
  bool pass = false;
};

PositivityReport marginal_positivity_report(double bi, double bj, double cij);

}  // namespace fine
