#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "rotspin/berry.hpp"
#include "rotspin/model.hpp"
#include "rotspin/pauli.hpp"

namespace rotspin {

struct PhasePoint {
  Vec3 x{};
  Vec3 p{};
};

enum class VelocityMode { full, simplified };

// e = qE + (Omega x x) x (qB + E Omega); the rotating-frame Lorentz force
// plus the centrifugal force, with the energy playing the inertial mass.
inline Vec3 effective_force(const ParamSet& par, double E) {
  return effective_force_at(par, E);
}

// nu = (p/E)[1 + 2 sign(q) G.(qB + (E/2)Omega)] - (hbar/2E^3)(qB + g E Omega)(sigma.p).
// The coupling g of the last term is 2 by default, matching calB = qB + 2 E Omega.
inline MatrixVector3 canonical_velocity(const Vec3& p, const ParamSet& par,
                                        VelocityMode mode,
                                        double g_factor = 2.0) {
  if (!(par.m > 0.0)) throw std::invalid_argument("canonical_velocity: m must be > 0");
  const double E = dispersion(p, par.m);
  MatrixVector3 nu{};
  for (int i = 0; i < 3; ++i) nu[i] = PauliCoeff::identity(p[i] / E);
  if (mode == VelocityMode::simplified) return nu;

  const double s = par.sign_q();
  const MatrixVector3 G = berry_curvature(p, par.m, par.hbar);
  const PauliCoeff gb = dot(G, par.q * par.B + 0.5 * E * par.Omega);
  const Vec3 bg = par.q * par.B + g_factor * E * par.Omega;
  const double zeeman = par.hbar / (2.0 * E * E * E);
  for (int i = 0; i < 3; ++i) {
    nu[i] += (2.0 * s * p[i] / E) * gb;
    nu[i] -= PauliCoeff(0.0, CVec3(zeeman * bg[i] * p));
  }
  return nu;
}

namespace detail {
// Energy entering the kinematic formulas; the quantum-corrected variant
// replaces E by the branch eigenvalue of the semiclassical Hamiltonian.
inline double script_energy(const Vec3& p, const ParamSet& par, bool hbar_corrected) {
  const double E = dispersion(p, par.m);
  if (!hbar_corrected) return E;
  const PauliCoeff H = semiclassical_hamiltonian(p, par);
  Vec3 axis = effective_bfield(par, E);
  const double n = norm(axis);
  axis = n > 0.0 ? axis / n : Vec3{0.0, 0.0, 1.0};
  return scalarize(H, par.branch, axis).real();
}
}  // namespace detail

// omega_1/2 = 1 + s G.calB - nu.(x x Omega) - s (nu.G)(qB.(x x Omega)).
// The nu.G contraction is a genuine matrix product; it is evaluated before
// any spin projection, so the result carries the full operator ordering.
inline PauliCoeff pfaffian(const PhasePoint& xp, const ParamSet& par,
                           VelocityMode mode = VelocityMode::full,
                           bool hbar_corrected_energy = false) {
  const double sE = detail::script_energy(xp.p, par, hbar_corrected_energy);
  const double s = par.sign_q();
  const Vec3 u = cross(xp.x, par.Omega);
  const Vec3 calB = par.q * par.B + 2.0 * sE * par.Omega;
  const MatrixVector3 G = berry_curvature(xp.p, par.m, par.hbar);
  const MatrixVector3 nu = canonical_velocity(xp.p, par, mode);
  PauliCoeff w = PauliCoeff::identity(1.0);
  w += s * dot(G, calB);
  w -= dot(nu, u);
  w -= (s * dot(par.q * par.B, u)) * dot_mul(nu, G);
  return w;
}

// (xdot omega_1/2) = nu fac + s e x G + s (nu.G) calB fac + s (nu.G)[(x x Omega) x e],
// fac = 1 - (Omega x x)^2 / 2.
inline MatrixVector3 vel_weighted(const PhasePoint& xp, const ParamSet& par_in,
                                  VelocityMode mode = VelocityMode::full,
                                  bool hbar_corrected_energy = false) {
  ParamSet par = par_in;
  par.x = xp.x;  // the phase point owns the position
  const double sE = detail::script_energy(xp.p, par, hbar_corrected_energy);
  const double s = par.sign_q();
  const Vec3 oxx = cross(par.Omega, xp.x);
  const double fac = 1.0 - 0.5 * norm2(oxx);
  const Vec3 e = effective_force(par, sE);
  const Vec3 calB = par.q * par.B + 2.0 * sE * par.Omega;
  const MatrixVector3 G = berry_curvature(xp.p, par.m, par.hbar);
  const MatrixVector3 nu = canonical_velocity(xp.p, par, mode);
  const PauliCoeff nuG = dot_mul(nu, G);
  const Vec3 uxe = cross(cross(xp.x, par.Omega), e);
  MatrixVector3 out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = nu[i] * cplx(fac);
    out[i] += s * cross(e, G)[i];
    out[i] += (s * calB[i] * fac) * nuG;
    out[i] += (s * uxe[i]) * nuG;
  }
  return out;
}

// (omega_1/2 pdot) = e + nu x calB fac + s G (e.calB) - [(x x Omega) x e] x nu.
inline MatrixVector3 force_weighted(const PhasePoint& xp, const ParamSet& par_in,
                                    VelocityMode mode = VelocityMode::full,
                                    bool hbar_corrected_energy = false) {
  ParamSet par = par_in;
  par.x = xp.x;  // the phase point owns the position
  const double sE = detail::script_energy(xp.p, par, hbar_corrected_energy);
  const double s = par.sign_q();
  const Vec3 oxx = cross(par.Omega, xp.x);
  const double fac = 1.0 - 0.5 * norm2(oxx);
  const Vec3 e = effective_force(par, sE);
  const Vec3 calB = par.q * par.B + 2.0 * sE * par.Omega;
  const MatrixVector3 G = berry_curvature(xp.p, par.m, par.hbar);
  const MatrixVector3 nu = canonical_velocity(xp.p, par, mode);
  const Vec3 uxe = cross(cross(xp.x, par.Omega), e);
  const MatrixVector3 nu_x_calB = cross(nu, calB);
  const MatrixVector3 uxe_x_nu = cross(uxe, nu);
  MatrixVector3 out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = PauliCoeff::identity(e[i]);
    out[i] += nu_x_calB[i] * cplx(fac);
    out[i] += (s * dot(e, calB)) * G[i];
    out[i] -= uxe_x_nu[i];
  }
  return out;
}

struct KinematicFields {
  Vec3 e{};
  MatrixVector3 nu{};
  PauliCoeff pf{};
  MatrixVector3 xdot_w{};
  MatrixVector3 pdot_w{};
  bool fast_rotation_warning = false;
};

inline KinematicFields kinematic_fields(const PhasePoint& xp, const ParamSet& par,
                                        VelocityMode mode = VelocityMode::full) {
  ParamSet at = par;
  at.x = xp.x;
  KinematicFields kf;
  kf.e = effective_force(at, dispersion(xp.p, par.m));
  kf.nu = canonical_velocity(xp.p, at, mode);
  kf.pf = pfaffian(xp, at, mode);
  kf.xdot_w = vel_weighted(xp, at, mode);
  kf.pdot_w = force_weighted(xp, at, mode);
  kf.fast_rotation_warning = fast_rotation(at);
  return kf;
}

// Pfaffian of an even-dimensional skew-symmetric matrix by the Parlett-Reid
// tridiagonalization; O(n^3), exact up to roundoff.
template <std::size_t N>
inline double parlett_reid_pfaffian(std::array<std::array<double, N>, N> A) {
  static_assert(N % 2 == 0, "Pfaffian needs even dimension");
  double pf = 1.0;
  for (std::size_t k = 0; k + 1 < N; k += 2) {
    std::size_t piv = k + 1;
    for (std::size_t i = k + 2; i < N; ++i)
      if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < N; ++j) std::swap(A[k + 1][j], A[piv][j]);
      for (std::size_t j = 0; j < N; ++j) std::swap(A[j][k + 1], A[j][piv]);
      pf = -pf;
    }
    if (A[k + 1][k] == 0.0) return 0.0;
    pf *= A[k][k + 1];
    for (std::size_t i = k + 2; i < N; ++i) {
      const double f = A[i][k] / A[k + 1][k];
      for (std::size_t j = 0; j < N; ++j) A[i][j] -= f * A[k + 1][j];
      for (std::size_t j = 0; j < N; ++j) A[j][i] -= f * A[j][k + 1];
    }
  }
  return pf;
}

// Independent measure check: project every spin matrix on the sigma.n
// eigenvalue first, build the 6x6 symplectic matrix with scalar entries, and
// take its numerical Pfaffian.
inline double pfaffian_6x6_oracle(const PhasePoint& xp, const ParamSet& par,
                                  const Vec3& spin_axis,
                                  VelocityMode mode = VelocityMode::full) {
  if (std::abs(norm(spin_axis) - 1.0) > 1e-12)
    throw std::invalid_argument("pfaffian_6x6_oracle: spin_axis must be unit norm");
  const double E = dispersion(xp.p, par.m);
  const double s = par.sign_q();
  const double zeta = static_cast<double>(par.branch);
  const Vec3 u = cross(xp.x, par.Omega);
  const Vec3 calB = par.q * par.B + 2.0 * E * par.Omega;
  const MatrixVector3 Gm = berry_curvature(xp.p, par.m, par.hbar);
  const MatrixVector3 num = canonical_velocity(xp.p, par, mode);
  Vec3 G{}, nu{};
  for (int i = 0; i < 3; ++i) {
    G[i] = scalarize(Gm[i], zeta, spin_axis).real();
    nu[i] = scalarize(num[i], zeta, spin_axis).real();
  }
  std::array<std::array<double, 6>, 6> M{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double f = 0.0, g = 0.0;
      for (int k = 0; k < 3; ++k) {
        f += levi_civita(i, j, k) * calB[k];
        g += levi_civita(i, j, k) * G[k];
      }
      M[i][j] = f;
      M[3 + i][3 + j] = -s * g;
      M[i][3 + j] = -(i == j ? 1.0 : 0.0) + nu[j] * u[i];
      M[3 + i][j] = (i == j ? 1.0 : 0.0) - nu[i] * u[j];
    }
  double defect = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) defect = std::max(defect, std::abs(M[i][j] + M[j][i]));
  if (defect > 1e-12)
    throw std::logic_error("pfaffian_6x6_oracle: constructed matrix not antisymmetric");
  return parlett_reid_pfaffian(M);
}

}  // namespace rotspin
