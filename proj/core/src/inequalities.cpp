#include "fine/inequalities.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fine {

namespace {

void check_correlator_domain(double c, const char* name) {
  if (!(std::abs(c) <= 1.0 + kEpsNorm)) {
    throw DomainError(std::string(name) + " = " + std::to_string(c) +
                      " lies outside [-1, 1]");
  }
}

}  // namespace

std::array<double, 4> g_values(double c13, double c14, double c23,
                               double c24) {
  return {c13 + c14 + c23 + c24, c13 - c14 - c23 + c24,
          c13 - c14 + c23 - c24, c13 + c14 - c23 - c24};
}

ChshReport chsh_report(double c13, double c14, double c23, double c24) {
  check_correlator_domain(c13, "C13");
  check_correlator_domain(c14, "C14");
  check_correlator_domain(c23, "C23");
  check_correlator_domain(c24, "C24");

  ChshReport r;
  r.combo = {c13 + c14 + c23 - c24, c13 + c14 - c23 + c24,
             c13 - c14 + c23 + c24, -c13 + c14 + c23 + c24};
  r.pass = true;
  for (int k = 0; k < 4; ++k) {
    r.flags[2 * k] = r.combo[k] >= -2.0 - kEpsPass;
    r.flags[2 * k + 1] = r.combo[k] <= 2.0 + kEpsPass;
    r.pass = r.pass && r.flags[2 * k] && r.flags[2 * k + 1];
  }
  r.g = g_values(c13, c14, c23, c24);
  r.single_value = std::abs(r.g[0]) + std::abs(r.g[1]) + std::abs(r.g[2]) +
                   std::abs(r.g[3]);
  return r;
}

double single_inequality(double c13, double c14, double c23, double c24) {
  check_correlator_domain(c13, "C13");
  check_correlator_domain(c14, "C14");
  check_correlator_domain(c23, "C23");
  check_correlator_domain(c24, "C24");
  const auto g = g_values(c13, c14, c23, c24);
  return std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]) + std::abs(g[3]);
}

BellReport bell_report(double c12, double c13, double c23) {
  check_correlator_domain(c12, "C12");
  check_correlator_domain(c13, "C13");
  check_correlator_domain(c23, "C23");

  BellReport r;
  r.sums = {c12 + c13 - c23, c12 - c13 + c23, -c12 + c13 + c23,
            -c12 - c13 - c23};
  r.pass = true;
  for (int k = 0; k < 4; ++k) {
    r.flags[k] = r.sums[k] <= 1.0 + kEpsPass;
    r.pass = r.pass && r.flags[k];
  }
  return r;
}

AngleChshReport angle_chsh_report(double t13, double t23, double t24,
                                  double t14) {
  constexpr double pi = std::numbers::pi;
  for (double t : {t13, t23, t24, t14}) {
    if (!(t >= -kEpsPass && t <= pi + kEpsPass)) {
      throw DomainError("angle " + std::to_string(t) +
                        " lies outside [0, pi]");
    }
  }
  AngleChshReport r;
  r.sums = {t13 + t23 + t24 - t14, t13 + t23 - t24 + t14,
            t13 - t23 + t24 + t14, -t13 + t23 + t24 + t14};
  r.pass = true;
  for (int k = 0; k < 4; ++k) {
    r.flags[k] = r.sums[k] >= -kEpsPass && r.sums[k] <= 2.0 * pi + kEpsPass;
    r.pass = r.pass && r.flags[k];
  }
  return r;
}

PositivityReport marginal_positivity_report(double bi, double bj, double cij) {
  PositivityReport r;
  int k = 0;
  r.pass = true;
  for (int si : {1, -1}) {
    for (int sj : {1, -1}) {
      r.values[k] = 1.0 + bi * si + bj * sj + cij * si * sj;
      r.flags[k] = r.values[k] >= -kEpsPass;
      r.pass = r.pass && r.flags[k];
      ++k;
    }
  }
  return r;
}

}  // namespace fine
