#pragma once

#include <array>
#include <complex>

#include "fine/moments.hpp"
#include "fine/vec3.hpp"

namespace fine {

using cplx = std::complex<double>;

// Row-major complex matrices; all the linear algebra this module needs is
// dense 4x4 (and 2x2) arithmetic, written here rather than pulled in.
struct Mat2 {
  std::array<cplx, 4> m{};
  cplx at(int r, int c) const { return m[2 * r + c]; }
  cplx& at(int r, int c) { return m[2 * r + c]; }
};

struct Mat4 {
  std::array<cplx, 16> m{};
  cplx at(int r, int c) const { return m[4 * r + c]; }
  cplx& at(int r, int c) { return m[4 * r + c]; }
};

Mat4 multiply(const Mat4& a, const Mat4& b);
Mat4 adjoint(const Mat4& a);
cplx trace(const Mat4& a);
Mat4 kronecker(const Mat2& a, const Mat2& b);

// Pauli matrices and a.sigma.
Mat2 pauli(int k);  // k = 0,1,2 for x,y,z
Mat2 dot_sigma(const Vec3& a);

// Eigenvalues of a Hermitian 4x4 matrix, ascending, by cyclic Jacobi
// rotations.
std::array<double, 4> eigenvalues_hermitian(const Mat4& a);

// Two-qubit density operator. validate() checks Hermiticity and unit trace
// within 1e-12 and positive semidefiniteness within 1e-10.
struct TwoQubitState {
  Mat4 rho;

  void validate() const;
  static TwoQubitState validated(const Mat4& rho);
};

TwoQubitState singlet();
TwoQubitState maximally_mixed();

// Measurement directions: a1, a2 on particle A, a3, a4 on particle B.
struct MeasurementSetup {
  Vec3 a1, a2, a3, a4;

  void validate() const;
};

// Local Bloch vectors b_k = tr(rho (sigma_k x 1)) / tr(rho (1 x sigma_k)).
Vec3 bloch_a(const TwoQubitState& state);
Vec3 bloch_b(const TwoQubitState& state);

// Joint outcome probabilities for one projective spin measurement per
// particle, table(sA, sB) = tr(rho P_sA^aA x P_sB^aB) with
// P_s^a = (1 + s a.sigma)/2.
PairTable pair_probs(const TwoQubitState& state, const Vec3& a_dir,
                     const Vec3& b_dir);

// The four cross-side tables p(s1,s3), p(s1,s4), p(s2,s3), p(s2,s4).
PairMarginals eprb_marginals(const TwoQubitState& state,
                             const MeasurementSetup& setup);

// Applies local rotations taking each particle's Bloch vector onto the
// normal of its measurement plane, so all four average spins along the
// setup directions vanish. Local unitaries leave the spectrum unchanged.
TwoQubitState zero_mean_rotation(const TwoQubitState& state,
                                 const MeasurementSetup& setup);

}  // namespace fine
