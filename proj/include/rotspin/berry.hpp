#pragma once

#include <cmath>
#include <stdexcept>

#include "rotspin/model.hpp"
#include "rotspin/pauli.hpp"

namespace rotspin {

struct BerryData {
  MatrixVector3 A{};  // connection
  MatrixVector3 G{};  // curvature
  Vec3 at{};          // momentum it was evaluated at
};

// A = hbar (sigma x p) / (2E(E+m)); component i carries sigma-vector p x e_i.
inline MatrixVector3 berry_connection(const Vec3& p, double m, double hbar) {
  if (!(m > 0.0)) throw std::invalid_argument("berry_connection: m must be > 0");
  const double E = dispersion(p, m);
  const double pref = hbar / (2.0 * E * (E + m));
  MatrixVector3 A{};
  for (int i = 0; i < 3; ++i) A[i] = PauliCoeff::sigma(pref * cross(p, axis_unit(i)));
  return A;
}

// G = (hbar m / 2E^3)(sigma + p (sigma.p) / (m(m+E))).
inline MatrixVector3 berry_curvature(const Vec3& p, double m, double hbar) {
  if (!(m > 0.0)) throw std::invalid_argument("berry_curvature: m must be > 0");
  const double E = dispersion(p, m);
  const double pref = hbar * m / (2.0 * E * E * E);
  MatrixVector3 G{};
  for (int i = 0; i < 3; ++i)
    G[i] = PauliCoeff::sigma(pref * (axis_unit(i) + (p[i] / (m * (m + E))) * p));
  return G;
}

inline double berry_fd_default_step(const Vec3& p, double m) {
  return 1e-5 * std::max(norm(p), m);
}

// Curvature from its definition: G_ij = d_i A_j - d_j A_i + (i/hbar)[A_i, A_j],
// G_k = (1/2) eps_kij G_ij, with central differences for the derivatives.
inline MatrixVector3 curvature_fd_oracle(const Vec3& p, double m, double hbar,
                                         double h) {
  if (!(h > 0.0)) throw std::invalid_argument("curvature_fd_oracle: h must be > 0");
  std::array<MatrixVector3, 3> dA{};  // dA[i] = d A / d p_i
  for (int i = 0; i < 3; ++i) {
    Vec3 pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    const MatrixVector3 Ap = berry_connection(pp, m, hbar);
    const MatrixVector3 Am = berry_connection(pm, m, hbar);
    for (int j = 0; j < 3; ++j) dA[i][j] = (Ap[j] - Am[j]) * cplx(0.5 / h);
  }
  const MatrixVector3 A = berry_connection(p, m, hbar);
  const cplx i_over_hbar(0.0, 1.0 / hbar);
  MatrixVector3 G{};
  for (int k = 0; k < 3; ++k) {
    PauliCoeff acc{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double e = levi_civita(k, i, j);
        if (e == 0.0) continue;
        PauliCoeff Gij = dA[i][j] - dA[j][i] + i_over_hbar * pauli_commutator(A[i], A[j]);
        acc += (0.5 * e) * Gij;
      }
    G[k] = acc;
  }
  return G;
}

// H = E [1 - sign(q) G.(qB + E Omega)]; branch-diagonal energy operator.
inline PauliCoeff semiclassical_hamiltonian(const Vec3& p, const ParamSet& par) {
  if (!(par.m > 0.0))
    throw std::invalid_argument("semiclassical_hamiltonian: m must be > 0");
  const double E = dispersion(p, par.m);
  const MatrixVector3 G = berry_curvature(p, par.m, par.hbar);
  const PauliCoeff gx = dot(G, par.q * par.B + E * par.Omega);
  return PauliCoeff::identity(E) - (E * par.sign_q()) * gx;
}

inline BerryData berry_data(const Vec3& p, double m, double hbar) {
  return {berry_connection(p, m, hbar), berry_curvature(p, m, hbar), p};
}

}  // namespace rotspin
