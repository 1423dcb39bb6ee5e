#include "fine/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fine {

namespace {

constexpr double kEpsState = 1e-12;
constexpr double kEpsPsd = 1e-10;

Vec3 axis_vec(int k) {
  switch (k) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

Mat2 identity2() {
  Mat2 m;
  m.at(0, 0) = 1.0;
  m.at(1, 1) = 1.0;
  return m;
}

// U = cos(phi/2) 1 - i sin(phi/2) n.sigma rotates Bloch vectors by phi
// about n (verified by the Bloch-rotation unit test).
Mat2 su2(const Vec3& axis, double phi) {
  const Vec3 n = axis.normalized();
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  Mat2 u = identity2();
  const Mat2 ns = dot_sigma(n);
  for (int k = 0; k < 4; ++k) {
    u.m[k] = c * u.m[k] - cplx(0.0, s) * ns.m[k];
  }
  return u;
}

// Rotation taking the direction of b onto the unit vector n. Zero b gives
// the identity; antipodal pairs rotate by pi about the first coordinate
// axis orthogonal to both.
Mat2 rotation_onto(const Vec3& b, const Vec3& n) {
  const double nb = b.norm();
  if (nb < 1e-14) return identity2();
  const Vec3 bh = b * (1.0 / nb);
  const double c = std::clamp(bh.dot(n), -1.0, 1.0);
  if (c > 1.0 - 1e-14) return identity2();
  if (c < -1.0 + 1e-14) {
    for (int k = 0; k < 3; ++k) {
      Vec3 e = axis_vec(k);
      e = e - bh * e.dot(bh);
      if (e.norm() > 0.1) return su2(e.normalized(), std::acos(-1.0));
    }
  }
  const Vec3 axis = bh.cross(n).normalized();
  return su2(axis, std::acos(c));
}

// Unit normal of span(a1, a2); for (near-)parallel directions any normal
// direction will do, so fall back to a coordinate axis transverse to a1.
Vec3 plane_normal(const Vec3& a1, const Vec3& a2) {
  const Vec3 cr = a1.cross(a2);
  if (cr.norm() > 1e-9) return cr.normalized();
  for (int k = 0; k < 3; ++k) {
    Vec3 e = axis_vec(k);
    e = e - a1 * e.dot(a1);
    if (e.norm() > 0.1) return e.normalized();
  }
  return {0.0, 0.0, 1.0};
}

void check_unit(const Vec3& a, const char* name) {
  if (std::abs(a.norm() - 1.0) > kEpsState) {
    throw ValidationError(std::string(name) + " is not a unit vector (norm " +
                          std::to_string(a.norm()) + ")");
  }
}

}  // namespace

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Mat4 adjoint(const Mat4& a) {
  Mat4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out.at(r, c) = std::conj(a.at(c, r));
  }
  return out;
}

cplx trace(const Mat4& a) {
  return a.at(0, 0) + a.at(1, 1) + a.at(2, 2) + a.at(3, 3);
}

Mat4 kronecker(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int ra = 0; ra < 2; ++ra) {
    for (int ca = 0; ca < 2; ++ca) {
      for (int rb = 0; rb < 2; ++rb) {
        for (int cb = 0; cb < 2; ++cb) {
          out.at(2 * ra + rb, 2 * ca + cb) = a.at(ra, ca) * b.at(rb, cb);
        }
      }
    }
  }
  return out;
}

Mat2 pauli(int k) {
  Mat2 m;
  switch (k) {
    case 0:
      m.at(0, 1) = 1.0;
      m.at(1, 0) = 1.0;
      break;
    case 1:
      m.at(0, 1) = cplx(0.0, -1.0);
      m.at(1, 0) = cplx(0.0, 1.0);
      break;
    default:
      m.at(0, 0) = 1.0;
      m.at(1, 1) = -1.0;
      break;
  }
  return m;
}

Mat2 dot_sigma(const Vec3& a) {
  Mat2 m;
  m.at(0, 0) = a.z;
  m.at(0, 1) = cplx(a.x, -a.y);
  m.at(1, 0) = cplx(a.x, a.y);
  m.at(1, 1) = -a.z;
  return m;
}

std::array<double, 4> eigenvalues_hermitian(const Mat4& input) {
  Mat4 a = input;
  // Cyclic complex Jacobi: rotate away each off-diagonal entry in turn
  // until the off-diagonal mass is negligible.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) off += std::norm(a.at(p, q));
    }
    if (off < 1e-28) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const cplx apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J_pp = c, J_pq = -s*phase, J_qp = s*conj(phase), J_qq = c;
        // apply a <- J^dagger a J.
        for (int k = 0; k < 4; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a.at(k, p);
          const cplx akq = a.at(k, q);
          a.at(k, p) = c * akp + s * std::conj(phase) * akq;
          a.at(k, q) = -s * phase * akp + c * akq;
          a.at(p, k) = std::conj(a.at(k, p));
          a.at(q, k) = std::conj(a.at(k, q));
        }
        const double newp = c * c * app + 2.0 * c * s * r + s * s * aqq;
        const double newq = s * s * app - 2.0 * c * s * r + c * c * aqq;
        a.at(p, p) = newp;
        a.at(q, q) = newq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
      }
    }
  }
  std::array<double, 4> ev = {a.at(0, 0).real(), a.at(1, 1).real(),
                              a.at(2, 2).real(), a.at(3, 3).real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

void TwoQubitState::validate() const {
  double herm = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      herm = std::max(herm, std::abs(rho.at(r, c) - std::conj(rho.at(c, r))));
    }
  }
  if (herm > kEpsState) {
    throw ValidationError("density matrix is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const cplx tr = trace(rho);
  if (std::abs(tr - cplx(1.0)) > kEpsState) {
    throw ValidationError("density matrix trace is " +
                          std::to_string(tr.real()) + ", expected 1");
  }
  const auto ev = eigenvalues_hermitian(rho);
  if (ev[0] < -kEpsPsd) {
    throw ValidationError("density matrix has negative eigenvalue " +
                          std::to_string(ev[0]));
  }
}

TwoQubitState TwoQubitState::validated(const Mat4& rho) {
  TwoQubitState s{rho};
  s.validate();
  return s;
}

TwoQubitState singlet() {
  // (|01> - |10>)/sqrt(2) in the basis |00>, |01>, |10>, |11>.
  Mat4 rho;
  rho.at(1, 1) = 0.5;
  rho.at(2, 2) = 0.5;
  rho.at(1, 2) = -0.5;
  rho.at(2, 1) = -0.5;
  return TwoQubitState{rho};
}

TwoQubitState maximally_mixed() {
  Mat4 rho;
  for (int k = 0; k < 4; ++k) rho.at(k, k) = 0.25;
  return TwoQubitState{rho};
}

void MeasurementSetup::validate() const {
  check_unit(a1, "a1");
  check_unit(a2, "a2");
  check_unit(a3, "a3");
  check_unit(a4, "a4");
}

Vec3 bloch_a(const TwoQubitState& state) {
  Vec3 b;
  const Mat2 id = identity2();
  b.x = trace(multiply(state.rho, kronecker(pauli(0), id))).real();
  b.y = trace(multiply(state.rho, kronecker(pauli(1), id))).real();
  b.z = trace(multiply(state.rho, kronecker(pauli(2), id))).real();
  return b;
}

Vec3 bloch_b(const TwoQubitState& state) {
  Vec3 b;
  const Mat2 id = identity2();
  b.x = trace(multiply(state.rho, kronecker(id, pauli(0)))).real();
  b.y = trace(multiply(state.rho, kronecker(id, pauli(1)))).real();
  b.z = trace(multiply(state.rho, kronecker(id, pauli(2)))).real();
  return b;
}

PairTable pair_probs(const TwoQubitState& state, const Vec3& a_dir,
                     const Vec3& b_dir) {
  state.validate();
  check_unit(a_dir, "aA");
  check_unit(b_dir, "aB");

  const Mat2 sa = dot_sigma(a_dir);
  const Mat2 sb = dot_sigma(b_dir);
  PairTable t;
  for (int sA : {1, -1}) {
    for (int sB : {1, -1}) {
      Mat2 pa = identity2();
      Mat2 pb = identity2();
      for (int k = 0; k < 4; ++k) {
        pa.m[k] = 0.5 * (pa.m[k] + double(sA) * sa.m[k]);
        pb.m[k] = 0.5 * (pb.m[k] + double(sB) * sb.m[k]);
      }
      const cplx val = trace(multiply(state.rho, kronecker(pa, pb)));
      if (std::abs(val.imag()) > kEpsState) {
        throw ValidationError("projector probability has imaginary part " +
                              std::to_string(val.imag()));
      }
      t.at(sA, sB) = val.real();
    }
  }
  t.validate(kEpsNorm);  // internal arithmetic, not user data
  return t;
}

PairMarginals eprb_marginals(const TwoQubitState& state,
                             const MeasurementSetup& setup) {
  setup.validate();
  PairMarginals pm;
  pm.m13 = pair_probs(state, setup.a1, setup.a3);
  pm.m14 = pair_probs(state, setup.a1, setup.a4);
  pm.m23 = pair_probs(state, setup.a2, setup.a3);
  pm.m24 = pair_probs(state, setup.a2, setup.a4);
  pm.validate();
  return pm;
}

TwoQubitState zero_mean_rotation(const TwoQubitState& state,
                                 const MeasurementSetup& setup) {
  state.validate();
  setup.validate();

  const Mat2 ua = rotation_onto(bloch_a(state), plane_normal(setup.a1, setup.a2));
  const Mat2 ub = rotation_onto(bloch_b(state), plane_normal(setup.a3, setup.a4));
  const Mat4 u = kronecker(ua, ub);
  const Mat4 rotated = multiply(u, multiply(state.rho, adjoint(u)));
  return TwoQubitState{rotated};
}

}  // namespace fine
