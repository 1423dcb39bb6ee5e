#include "fine/peres.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fine/inequalities.hpp"

namespace fine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFoldTol = 1e-12;  // on the normalized fold parameter
constexpr int kFoldMaxIter = 200;

// arccos(cos x) for x in [0, 2pi]: the actual angle of a planar azimuth sum.
double wrap_angle(double x) { return std::min(x, 2.0 * kPi - x); }

void check_angle_domain(double t) {
  if (!(t >= -kEpsPass && t <= kPi + kEpsPass)) {
    throw DomainError("angle " + std::to_string(t) + " lies outside [0, pi]");
  }
}

}  // namespace

double corr_from_angle(double theta) {
  check_angle_domain(theta);
  return -1.0 + 2.0 * theta / kPi;
}

double angle_from_corr(double c) {
  if (!(std::abs(c) <= 1.0 + kEpsNorm)) {
    throw DomainError("correlator " + std::to_string(c) +
                      " lies outside [-1, 1]");
  }
  return kPi * (1.0 + c) / 2.0;
}

AngleSet angles_from_corrs(double c13, double c14, double c23, double c24) {
  return {angle_from_corr(c13), angle_from_corr(c23), angle_from_corr(c24),
          angle_from_corr(c14)};
}

PairAngles angles_of(const VectorQuad& q) {
  PairAngles a;
  a.t12 = angle_between(q.a1, q.a2);
  a.t13 = angle_between(q.a1, q.a3);
  a.t14 = angle_between(q.a1, q.a4);
  a.t23 = angle_between(q.a2, q.a3);
  a.t24 = angle_between(q.a2, q.a4);
  a.t34 = angle_between(q.a3, q.a4);
  return a;
}

double fold_gamma(const AngleSet& target, double t) {
  // cos gamma(t) = cos t13 cos t23 - sin t13 sin t23 cos(t pi); monotone
  // from the planar chain value at t = 0 to |t13 - t23| at t = 1.
  const double c = std::cos(target.t13) * std::cos(target.t23) -
                   std::sin(target.t13) * std::sin(target.t23) *
                       std::cos(t * kPi);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

VectorQuad fit_vectors(const AngleSet& target) {
  const auto report =
      angle_chsh_report(target.t13, target.t23, target.t24, target.t14);
  if (!report.pass) {
    double worst = 0.0;
    for (double s : report.sums) {
      worst = std::max(worst, std::max(-s, s - 2.0 * kPi));
    }
    throw InfeasibleError(
        "target angles violate the angle-form CHSH inequalities by " +
            std::to_string(worst),
        worst);
  }

  // The free angle gamma between a1 and a2 must close two spherical
  // triangles at once: (a1, a3, a2) with sides t13, t23 and (a1, a4, a2)
  // with sides t14, t24. Each admits gamma in the interval
  // [|x - y|, min(x + y, 2pi - x - y)]; the eight bounds of the
  // intersection are exactly the angle-form CHSH inequalities, so a
  // feasible target always leaves a common gamma.
  const double lo = std::max(std::abs(target.t13 - target.t23),
                             std::abs(target.t14 - target.t24));
  const double hi = std::min(wrap_angle(target.t13 + target.t23),
                             wrap_angle(target.t14 + target.t24));
  if (lo > hi + 1e-9) {
    throw NumericError("fold intervals failed to intersect (width " +
                       std::to_string(hi - lo) + ")");
  }
  const double gamma = 0.5 * (lo + hi);

  VectorQuad q;
  q.a1 = {1.0, 0.0, 0.0};
  q.a3 = {std::cos(target.t13), std::sin(target.t13), 0.0};

  // Fold the a2 triangle about the a3 edge until gamma is reached.
  // fold_gamma is monotone non-increasing in t: bisect.
  const Vec3 w{-std::sin(target.t13), std::cos(target.t13), 0.0};
  const auto a2_at = [&](double t) {
    const double c = std::cos(t * kPi), s = std::sin(t * kPi);
    return std::cos(target.t23) * q.a3 +
           std::sin(target.t23) * (c * w + s * Vec3{0.0, 0.0, 1.0});
  };
  double tlo = 0.0, thi = 1.0;
  for (int it = 0; it < kFoldMaxIter && thi - tlo > kFoldTol; ++it) {
    const double tm = 0.5 * (tlo + thi);
    if (fold_gamma(target, tm) < gamma) {
      thi = tm;
    } else {
      tlo = tm;
    }
  }
  const double tfold = 0.5 * (tlo + thi);
  if (std::abs(fold_gamma(target, tfold) - gamma) > 1e-8) {
    throw NumericError("fold bisection did not reach its target angle");
  }
  q.a2 = a2_at(tfold);

  // Close the a4 triangle about the a2 edge directly: a4 lies on the cone
  // of half-angle t24 about a2, at the azimuth that realizes t14 with a1.
  const double cg = std::clamp(q.a1.dot(q.a2), -1.0, 1.0);
  const double ga = std::acos(cg);
  Vec3 e1 = q.a1 - cg * q.a2;
  const double e1n = e1.norm();
  if (e1n > 1e-12) {
    e1 = e1 * (1.0 / e1n);
  } else {
    e1 = {0.0, 0.0, 1.0};  // a2 parallel to a1; any transverse direction
  }
  const Vec3 e2 = q.a2.cross(e1);
  const double den = std::sin(target.t24) * std::sin(ga);
  double psi = 0.0;
  if (std::abs(den) > 1e-12) {
    const double cpsi =
        (std::cos(target.t14) - std::cos(target.t24) * cg) / den;
    psi = std::acos(std::clamp(cpsi, -1.0, 1.0));
  }
  q.a4 = std::cos(target.t24) * q.a2 +
         std::sin(target.t24) * (std::cos(psi) * e1 + std::sin(psi) * e2);
  return q;
}

McJoint joint_from_vectors_mc(const VectorQuad& q, std::uint64_t n,
                              std::uint64_t seed) {
  if (n == 0) {
    throw DomainError("sample count must be positive");
  }
  std::mt19937_64 rng(seed);
  // Explicit 53-bit mapping keeps the stream independent of the standard
  // library's distribution implementations.
  const auto uniform01 = [&rng]() {
    return (rng() >> 11) * 0x1.0p-53;
  };

  std::array<std::uint64_t, kNumConfigs> counts{};
  for (std::uint64_t i = 0; i < n; ++i) {
    const double cz = 2.0 * uniform01() - 1.0;
    const double phi = 2.0 * kPi * uniform01();
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const Vec3 j{sz * std::cos(phi), sz * std::sin(phi), cz};
    int idx = 0;
    if (q.a1.dot(j) < 0.0) idx |= 8;
    if (q.a2.dot(j) < 0.0) idx |= 4;
    if (q.a3.dot(j) >= 0.0) idx |= 2;  // opposite momentum on particle B
    if (q.a4.dot(j) >= 0.0) idx |= 1;
    ++counts[idx];
  }

  McJoint out;
  out.n = n;
  const double dn = static_cast<double>(n);
  for (int k = 0; k < kNumConfigs; ++k) {
    const double ph = counts[k] / dn;
    out.p[k] = ph;
    out.se[k] = std::sqrt(ph * (1.0 - ph) / dn);
  }
  return out;
}

McJoint merge(const McJoint& a, const McJoint& b) {
  McJoint out;
  out.n = a.n + b.n;
  const double dn = static_cast<double>(out.n);
  for (int k = 0; k < kNumConfigs; ++k) {
    out.p[k] = (a.p[k] * a.n + b.p[k] * b.n) / dn;
    out.se[k] = std::sqrt(out.p[k] * (1.0 - out.p[k]) / dn);
  }
  return out;
}

PeresMoments moments_from_vectors(const VectorQuad& q) {
  const PairAngles t = angles_of(q);
  PeresMoments m;
  m.c13 = corr_from_angle(t.t13);
  m.c14 = corr_from_angle(t.t14);
  m.c23 = corr_from_angle(t.t23);
  m.c24 = corr_from_angle(t.t24);
  // Same-side pairs carry no sign flip, so the correlator sign inverts.
  m.c12 = 1.0 - 2.0 * t.t12 / kPi;
  m.c34 = 1.0 - 2.0 * t.t34 / kPi;
  return m;
}

}  // namespace fine
