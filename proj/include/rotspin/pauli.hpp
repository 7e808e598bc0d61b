#pragma once

#include <array>
#include <cmath>

#include "rotspin/vec3.hpp"

namespace rotspin {

// A 2x2 spin matrix in the Pauli basis: M = c0*1 + cv . sigma.
// All spin-space algebra happens on these coefficients; the identity
// (a.sigma)(b.sigma) = (a.b)1 + i(a x b).sigma closes the product.
struct PauliCoeff {
  cplx c0{};
  CVec3 cv{};

  PauliCoeff() = default;
  PauliCoeff(cplx s, CVec3 v) : c0(s), cv(v) {}
  static PauliCoeff identity(cplx s = 1.0) { return {s, {}}; }
  static PauliCoeff sigma(const Vec3& v) { return {0.0, CVec3(v)}; }

  PauliCoeff operator+(const PauliCoeff& o) const { return {c0 + o.c0, cv + o.cv}; }
  PauliCoeff operator-(const PauliCoeff& o) const { return {c0 - o.c0, cv - o.cv}; }
  PauliCoeff operator-() const { return {-c0, -cv}; }
  PauliCoeff operator*(cplx s) const { return {c0 * s, cv * s}; }
  PauliCoeff& operator+=(const PauliCoeff& o) { c0 += o.c0; cv += o.cv; return *this; }
  PauliCoeff& operator-=(const PauliCoeff& o) { c0 -= o.c0; cv -= o.cv; return *this; }
};

inline PauliCoeff operator*(cplx s, const PauliCoeff& p) { return p * s; }
inline PauliCoeff operator*(double s, const PauliCoeff& p) { return p * cplx(s); }

// Vector whose components are spin matrices (velocities, curvatures, ...).
using MatrixVector3 = std::array<PauliCoeff, 3>;

inline PauliCoeff pauli_mul(const PauliCoeff& a, const PauliCoeff& b) {
  const cplx i(0.0, 1.0);
  return {a.c0 * b.c0 + dot(a.cv, b.cv),
          a.c0 * b.cv + b.c0 * a.cv + i * cross(a.cv, b.cv)};
}

// [A, B] = 2i (a x b) . sigma; the scalar parts always drop out.
inline PauliCoeff pauli_commutator(const PauliCoeff& a, const PauliCoeff& b) {
  const cplx two_i(0.0, 2.0);
  return {0.0, two_i * cross(a.cv, b.cv)};
}

// Tr[AB] = 2(a0 b0 + a . b).
inline cplx pauli_trace_prod(const PauliCoeff& a, const PauliCoeff& b) {
  return 2.0 * (a.c0 * b.c0 + dot(a.cv, b.cv));
}

inline cplx pauli_trace(const PauliCoeff& a) { return 2.0 * a.c0; }

// Eigenvalue of M on the sigma.n eigenstate with projection zeta = +/-1.
inline cplx scalarize(const PauliCoeff& a, double zeta, const Vec3& n_hat) {
  return a.c0 + zeta * dot(a.cv, n_hat);
}

// Hermitian means real c0 and real cv in this basis.
inline double hermiticity_defect(const PauliCoeff& a) {
  return std::max(std::abs(a.c0.imag()), max_abs(imag_part(a.cv)));
}

inline double max_abs(const PauliCoeff& a) {
  return std::max(std::abs(a.c0), max_abs(a.cv));
}

inline double max_abs(const MatrixVector3& m) {
  return std::max({max_abs(m[0]), max_abs(m[1]), max_abs(m[2])});
}

inline MatrixVector3 operator+(const MatrixVector3& a, const MatrixVector3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline MatrixVector3 operator-(const MatrixVector3& a, const MatrixVector3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline MatrixVector3 operator*(const MatrixVector3& a, cplx s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

// Contractions between matrix-vectors and plain vectors.
inline PauliCoeff dot(const MatrixVector3& m, const Vec3& v) {
  return m[0] * cplx(v.x) + m[1] * cplx(v.y) + m[2] * cplx(v.z);
}
inline PauliCoeff dot(const Vec3& v, const MatrixVector3& m) { return dot(m, v); }

// Sum_i pauli_mul(a_i, b_i); matrix product, order preserved.
inline PauliCoeff dot_mul(const MatrixVector3& a, const MatrixVector3& b) {
  return pauli_mul(a[0], b[0]) + pauli_mul(a[1], b[1]) + pauli_mul(a[2], b[2]);
}

// The Pauli vector itself: component i is sigma_i.
inline MatrixVector3 sigma_vector() {
  return {PauliCoeff::sigma(axis_unit(0)), PauliCoeff::sigma(axis_unit(1)),
          PauliCoeff::sigma(axis_unit(2))};
}

inline MatrixVector3 cross(const Vec3& v, const MatrixVector3& m) {
  MatrixVector3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double e = levi_civita(i, j, k);
        if (e != 0.0) out[i] += e * v[j] * m[k];
      }
  return out;
}

inline MatrixVector3 cross(const MatrixVector3& m, const Vec3& v) {
  MatrixVector3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double e = levi_civita(i, j, k);
        if (e != 0.0) out[i] += e * v[k] * m[j];
      }
  return out;
}

}  // namespace rotspin
