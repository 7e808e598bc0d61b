#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "rotspin/vec3.hpp"

namespace rotspin {

// Full parameter set of a run. Energies, momenta and fields are in natural
// units (hbar = c = 1) unless the caller wires in the units layer explicitly.
struct ParamSet {
  double m = 1.0;       // rest mass, > 0
  double q = 1.0;       // charge; densities layer requires q > 0
  double hbar = 1.0;    // kept symbolic for scaling tests
  double mu = 2.0;      // chemical potential; mu < m at T=0 means empty band
  double tau = 0.5;     // relaxation time, > 0
  double T = 0.0;       // temperature, >= 0
  Vec3 B{};             // magnetic field
  Vec3 Omega{};         // angular velocity of the rotating frame
  Vec3 Efield{};        // electric field in the inertial frame
  Vec3 x{};             // evaluation point
  double R = 0.0;       // circle radius for the planar geometry
  int branch = +1;      // spin projection branch used when scalarizing

  void validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("ParamSet: m must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("ParamSet: tau must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("ParamSet: hbar must be > 0");
    if (T < 0.0) throw std::invalid_argument("ParamSet: T must be >= 0");
    if (branch != 1 && branch != -1)
      throw std::invalid_argument("ParamSet: branch must be +1 or -1");
  }

  double sign_q() const { return q >= 0.0 ? 1.0 : -1.0; }
};

inline double dispersion(const Vec3& p, double m) {
  return std::sqrt(dot(p, p) + m * m);
}

inline double mu_from_kf(double kf, double m) {
  return std::sqrt(kf * kf + m * m);
}

// Fermi momentum at T=0; zero when the band is empty.
inline double fermi_momentum(const ParamSet& par) {
  if (par.mu <= par.m) return 0.0;
  return std::sqrt(par.mu * par.mu - par.m * par.m);
}

// calB = qB + 2 E Omega; the rotation doubles up with the energy.
inline Vec3 effective_bfield(const ParamSet& par, double E) {
  return par.q * par.B + 2.0 * E * par.Omega;
}

// Frame speed at the evaluation point; the kinematics is trustworthy only for
// |Omega x x| well below 1.
inline double rotation_speed(const ParamSet& par) {
  return norm(cross(par.Omega, par.x));
}
inline bool fast_rotation(const ParamSet& par) { return rotation_speed(par) > 0.1; }

// Quantities entering the transport chain at a fixed energy E.
struct DerivedFields {
  Vec3 calB{};   // qB + 2 E Omega
  double g = 0;  // tau / E
  double d2 = 0; // g^2 calB^2
  Vec3 e_mu{};   // driving force e - grad(mu) at this E
};

inline Vec3 effective_force_at(const ParamSet& par, double E) {
  return par.q * par.Efield +
         cross(cross(par.Omega, par.x), par.q * par.B + E * par.Omega);
}

// Same bundle off the Fermi surface; every occurrence of mu becomes E.
inline DerivedFields derived_fields_at(const ParamSet& par, double E,
                                       const Vec3& grad_mu = {}) {
  DerivedFields d;
  d.calB = effective_bfield(par, E);
  d.g = par.tau / E;
  d.d2 = d.g * d.g * norm2(d.calB);
  d.e_mu = effective_force_at(par, E) - grad_mu;
  return d;
}

inline DerivedFields derived_fields(const ParamSet& par, const Vec3& grad_mu = {}) {
  return derived_fields_at(par, par.mu, grad_mu);
}

inline void require_positive_charge(const ParamSet& par, const char* where) {
  if (!(par.q > 0.0))
    throw std::invalid_argument(std::string(where) +
                                ": closed forms assume q > 0 (particle branch)");
}

}  // namespace rotspin
