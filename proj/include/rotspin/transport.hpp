#pragma once

#include <cmath>
#include <stdexcept>

#include "rotspin/berry.hpp"
#include "rotspin/kinematics.hpp"
#include "rotspin/model.hpp"
#include "rotspin/pauli.hpp"

namespace rotspin {

// Fermi-Dirac occupation; the branch sign flips the chemical potential for
// the antiparticle band.
inline double f0(double E, double mu, double T, int branch = +1) {
  const double arg = E - static_cast<double>(branch) * mu;
  if (T <= 0.0) return arg < 0.0 ? 1.0 : (arg > 0.0 ? 0.0 : 0.5);
  const double x = arg / T;
  if (x > 700.0) return 0.0;
  return 1.0 / (std::exp(x) + 1.0);
}

// df0/dE degenerates to -delta(E - mu) at T = 0; the tag keeps the two cases
// from being mixed up downstream.
struct DfDE {
  enum class Kind { smooth, surface_delta };
  Kind kind = Kind::smooth;
  double value = 0.0;  // smooth: the derivative; surface_delta: delta weight
};

inline DfDE df0_dE(double E, double mu, double T) {
  if (T <= 0.0) return {DfDE::Kind::surface_delta, -1.0};
  const double x = (E - mu) / (2.0 * T);
  if (std::abs(x) > 350.0) return {DfDE::Kind::smooth, 0.0};
  const double s = 1.0 / std::cosh(x);
  return {DfDE::Kind::smooth, -s * s / (4.0 * T)};
}

// Zeroth spin order of the linear response, solving
//   e_mu - calB x chi0 = (E/tau) chi0
// in closed form: chi0 = [g e_mu - g^2 calB x e_mu + g^3 calB (e_mu.calB)]/(1+d^2).
inline Vec3 chi0(double E, double tau, const Vec3& calB, const Vec3& e_mu) {
  if (!(tau > 0.0)) throw std::invalid_argument("chi0: tau must be > 0");
  if (!(E > 0.0)) throw std::invalid_argument("chi0: E must be > 0");
  const double g = tau / E;
  const double d2 = g * g * norm2(calB);
  const Vec3 v = g * e_mu - (g * g) * cross(calB, e_mu) +
                 (g * g * g * dot(e_mu, calB)) * calB;
  return v / (1.0 + d2);
}

// Same linear system solved by brute force: Cramer's rule on
// (E/tau) I + [calB x]. Shares no algebra with chi0.
inline Vec3 chi0_linear_oracle(double E, double tau, const Vec3& calB,
                               const Vec3& e_mu) {
  if (!(tau > 0.0)) throw std::invalid_argument("chi0_linear_oracle: tau must be > 0");
  if (!(E > 0.0)) throw std::invalid_argument("chi0_linear_oracle: E must be > 0");
  double A[3][3];
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      double c = 0.0;
      for (int j = 0; j < 3; ++j) c += levi_civita(i, j, k) * calB[j];
      A[i][k] = (i == k ? E / tau : 0.0) + c;
    }
  auto det3 = [](const double M[3][3]) {
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
           M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  };
  const double D = det3(A);
  if (D == 0.0) throw std::runtime_error("chi0_linear_oracle: singular system");
  Vec3 out{};
  for (int col = 0; col < 3; ++col) {
    double Ac[3][3];
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) Ac[i][k] = (k == col) ? e_mu[i] : A[i][k];
    out[col] = det3(Ac) / D;
  }
  return out;
}

// Residual of the defining equation for chi0; zero up to roundoff.
inline double chi0_residual(double E, double tau, const Vec3& calB,
                            const Vec3& e_mu, const Vec3& chi) {
  return max_abs((E / tau) * chi + cross(calB, chi) - e_mu);
}

// Spin-independent part C of the first spin order, solving
//   -(E/tau) chi0 - calB x C = (E/tau) C.
inline Vec3 bigC(const Vec3& chi0v, double g, const Vec3& calB, double d2) {
  const Vec3 v = -chi0v + g * cross(calB, chi0v) - (g * g * dot(calB, chi0v)) * calB;
  return v / (1.0 + d2);
}

inline double bigC_residual(const Vec3& chi0v, const Vec3& C, double E, double tau,
                            const Vec3& calB) {
  return max_abs((E / tau) * C + cross(calB, C) + (E / tau) * chi0v);
}

// Zeeman-sourced part K of the first spin order, solving
//   -g (m hbar / 2E^3)(calB x sigma)(e_mu.calB) - calB x K = (E/tau) K.
inline MatrixVector3 bigK(double E, double m, double hbar, double g,
                          const Vec3& calB, const Vec3& e_mu, double d2) {
  const MatrixVector3 Bxs = cross(calB, sigma_vector());
  const MatrixVector3 BxBxs = cross(calB, Bxs);
  const double pref = -(m * hbar / (2.0 * E * E * E)) * dot(e_mu, calB) / (1.0 + d2);
  MatrixVector3 K{};
  for (int i = 0; i < 3; ++i)
    K[i] = pref * (g * g * Bxs[i] - (g * g * g) * BxBxs[i]);
  return K;
}

inline double bigK_residual(const MatrixVector3& K, double E, double m, double hbar,
                            double tau, const Vec3& calB, const Vec3& e_mu) {
  const double g = tau / E;
  const MatrixVector3 Bxs = cross(calB, sigma_vector());
  const double src = g * (m * hbar / (2.0 * E * E * E)) * dot(e_mu, calB);
  MatrixVector3 r = cross(calB, K);
  for (int i = 0; i < 3; ++i) r[i] += (E / tau) * K[i] + src * Bxs[i];
  return max_abs(r);
}

// chi1 = g (e_mu.calB) G + (G.calB) C + K; df must be evaluated at this E.
inline MatrixVector3 chi1(const Vec3& p, double E, const ParamSet& par,
                          const DerivedFields& df) {
  const MatrixVector3 G = berry_curvature(p, par.m, par.hbar);
  const PauliCoeff GB = dot(G, df.calB);
  const Vec3 c0 = chi0(E, par.tau, df.calB, df.e_mu);
  const Vec3 C = bigC(c0, df.g, df.calB, df.d2);
  const MatrixVector3 K = bigK(E, par.m, par.hbar, df.g, df.calB, df.e_mu, df.d2);
  const double s = df.g * dot(df.e_mu, df.calB);
  MatrixVector3 out{};
  for (int i = 0; i < 3; ++i) out[i] = s * G[i] + C[i] * GB + K[i];
  return out;
}

// Residual of the first-order kinetic equation
//   -(p/E x calB).chi1 + (e_mu.calB)(G.p)/E = (1/tau) chi1.p + (1/tau)(G.calB)(chi0.p);
// vanishes identically for the closed-form chi1.
inline double chi1_residual(const Vec3& p, double E, const ParamSet& par,
                            const DerivedFields& df) {
  const MatrixVector3 G = berry_curvature(p, par.m, par.hbar);
  const Vec3 nu0 = p / E;
  const Vec3 c0 = chi0(E, par.tau, df.calB, df.e_mu);
  const MatrixVector3 c1 = chi1(p, E, par, df);
  PauliCoeff lhs = -dot(c1, cross(nu0, df.calB));
  lhs += (dot(df.e_mu, df.calB) / E) * dot(G, p);
  PauliCoeff rhs = (1.0 / par.tau) * dot(c1, p);
  rhs += (dot(c0, p) / par.tau) * dot(G, df.calB);
  return max_abs(lhs - rhs);
}

// Everything the distribution correction needs at one momentum.
struct ChiSolution {
  double E = 0.0;
  DerivedFields df{};
  Vec3 chi0{};
  Vec3 C{};
  MatrixVector3 K{};
  MatrixVector3 chi1{};
};

inline ChiSolution solve_chi(const PhasePoint& xp, const ParamSet& par,
                             const Vec3& grad_mu = {}) {
  ParamSet at = par;
  at.x = xp.x;
  ChiSolution s;
  s.E = dispersion(xp.p, par.m);
  s.df = derived_fields_at(at, s.E, grad_mu);
  s.chi0 = chi0(s.E, par.tau, s.df.calB, s.df.e_mu);
  s.C = bigC(s.chi0, s.df.g, s.df.calB, s.df.d2);
  s.K = bigK(s.E, par.m, par.hbar, s.df.g, s.df.calB, s.df.e_mu, s.df.d2);
  s.chi1 = chi1(xp.p, s.E, at, s.df);
  return s;
}

// Coefficient X in f1 = (df0/dE) X, assembled from the chi solution:
// X = -(chi0 + chi1).p + tau dmu/dt.
inline PauliCoeff f1_from_chi(const PhasePoint& xp, const ParamSet& par,
                              const ChiSolution& sol, double dmu_dt = 0.0) {
  PauliCoeff X = PauliCoeff::identity(-dot(sol.chi0, xp.p) + par.tau * dmu_dt);
  X -= dot(sol.chi1, xp.p);
  return X;
}

// Same coefficient written out as one explicit display, sharing no
// intermediate solves with the chi route; the two agree identically.
inline PauliCoeff f1(const PhasePoint& xp, const ParamSet& par,
                     const Vec3& grad_mu = {}, double dmu_dt = 0.0) {
  ParamSet at = par;
  at.x = xp.x;
  const double E = dispersion(xp.p, par.m);
  const DerivedFields df = derived_fields_at(at, E, grad_mu);
  const double g = df.g;
  const Vec3& Bc = df.calB;
  const Vec3& emu = df.e_mu;
  const double d2 = df.d2;
  const double BdotE = dot(Bc, emu);
  const MatrixVector3 G = berry_curvature(xp.p, par.m, par.hbar);
  const PauliCoeff GB = dot(G, Bc);
  const PauliCoeff Gp = dot(G, xp.p);
  const MatrixVector3 Bxs = cross(Bc, sigma_vector());
  const MatrixVector3 BxBxs = cross(Bc, Bxs);
  const double zeeman = par.m * par.hbar / (2.0 * E * E * E);

  const Vec3 v_plain = g * emu - (g * g) * cross(Bc, emu);
  MatrixVector3 V{};
  for (int i = 0; i < 3; ++i) {
    V[i] = PauliCoeff::identity(v_plain[i]);
    V[i] += (g * g * g * BdotE * Bc[i]) * (PauliCoeff::identity(1.0) - GB);
    V[i] -= (g * g * zeeman * BdotE) * (Bxs[i] - g * BxBxs[i]);
  }
  const PauliCoeff pV = dot(V, xp.p);

  const double S = g * (1.0 - d2) * dot(emu, xp.p) -
                   2.0 * g * g * dot(cross(Bc, emu), xp.p) +
                   2.0 * g * g * g * BdotE * dot(Bc, xp.p);

  PauliCoeff curly = (g * BdotE) * Gp;
  curly -= PauliCoeff::identity(par.tau * dmu_dt);
  curly += pV * cplx(1.0 / (1.0 + d2));
  curly -= (S / ((1.0 + d2) * (1.0 + d2))) * GB;
  return -curly;
}

// Occupation data at one phase-space point.
struct DistributionPoint {
  double f0 = 0.0;
  DfDE dfde{};
  PauliCoeff f1_coeff{};  // f1 = (df0/dE) f1_coeff
};

inline DistributionPoint distribution_at(const PhasePoint& xp, const ParamSet& par,
                                         const Vec3& grad_mu = {},
                                         double dmu_dt = 0.0) {
  const double E = dispersion(xp.p, par.m);
  DistributionPoint d;
  d.f0 = f0(E, par.mu, par.T, par.branch);
  d.dfde = df0_dE(E, par.mu, par.T);
  d.f1_coeff = f1_from_chi(xp, par, solve_chi(xp, par, grad_mu), dmu_dt);
  return d;
}

}  // namespace rotspin
