#pragma once

#include <array>

#include "rotspin/transport.hpp"

namespace rotspin {

enum class DistributionMode { equilibrium, linear_response, both };

// Descriptor of one momentum-space integral: which observable, which spin
// axis, which distribution pieces, and the driving gradients.
struct Integrand {
  enum class Kind { density, current };
  int dimension = 3;  // 2: planar momenta, 3: full sphere
  Kind kind = Kind::density;
  int spin_axis = 2;
  Vec3 grad_mu{};
  double dmu_dt = 0.0;
  DistributionMode mode = DistributionMode::both;
  bool dense_angular = false;  // oversampled angular grid for cross-checks
};

// Pointwise weights of the graded trace: the integrand is
// vol * f0 + surf * (df0/dE) after tracing against hbar sigma_a / 2 and
// dropping the sigma-cross-sigma term, which is one order higher in hbar.
struct IntegrandEval {
  std::array<double, 3> vol{};
  std::array<double, 3> surf{};
  int ncomp = 1;  // 1 for densities, 3 current directions otherwise
};

// The evaluation point in space is par.x; only the momentum varies under the
// integral. All weights use the measure and flow with the plain velocity
// p/E; the hbar corrections enter through the curvature terms written out.
inline IntegrandEval eval_integrand(const Integrand& ig, const ParamSet& par,
                                    const Vec3& p) {
  const PhasePoint xp{par.x, p};
  const double E = dispersion(p, par.m);
  const double s = par.sign_q();
  const Vec3 u = cross(par.x, par.Omega);
  const double fac = 1.0 - 0.5 * norm2(cross(par.Omega, par.x));
  const Vec3 e = effective_force_at(par, E);
  const Vec3 calB = effective_bfield(par, E);
  const MatrixVector3 G = berry_curvature(p, par.m, par.hbar);
  const Vec3 gB = real_part(dot(G, calB).cv);
  const Vec3 gpE = real_part(dot(G, p).cv) / E;

  const ChiSolution chi = solve_chi(xp, par, ig.grad_mu);
  Vec3 f1_sig{};
  for (int i = 0; i < 3; ++i) f1_sig -= real_part(chi.chi1[i].cv) * p[i];
  const double f1_s = -dot(chi.chi0, p) + par.tau * ig.dmu_dt;

  const int a = ig.spin_axis;
  IntegrandEval ev;
  if (ig.kind == Integrand::Kind::density) {
    const Vec3 w_sig = s * gB - (s * par.q * dot(par.B, u)) * gpE;
    const double w_s = 1.0 - dot(p, u) / E;
    ev.ncomp = 1;
    ev.vol[0] = par.hbar * w_sig[a];
    ev.surf[0] = par.hbar * (w_s * f1_sig[a] + w_sig[a] * f1_s);
  } else {
    ev.ncomp = 3;
    const MatrixVector3 exG = cross(e, G);
    const Vec3 uxe = cross(u, e);
    for (int i = 0; i < 3; ++i) {
      const Vec3 W_sig =
          s * real_part(exG[i].cv) + (s * calB[i] * fac + s * uxe[i]) * gpE;
      const double W_s = (p[i] / E) * fac;
      ev.vol[i] = par.hbar * W_sig[a];
      ev.surf[i] = par.hbar * (W_s * f1_sig[a] + W_sig[a] * f1_s);
    }
  }
  return ev;
}

}  // namespace rotspin
