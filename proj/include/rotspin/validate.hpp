#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rotspin/densities.hpp"
#include "rotspin/kinematics.hpp"
#include "rotspin/transport.hpp"
#include "rotspin/units.hpp"

namespace rotspin {

// One validation outcome: pass iff observed <= bound, except ratio-style
// checks which encode their window logic directly in `pass`.
struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double bound = 0.0;
  double seconds = 0.0;
  std::string detail;
};

namespace checks {

namespace detail {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uni(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng);
  }
  Vec3 vec(double a, double b) { return {uni(a, b), uni(a, b), uni(a, b)}; }
  Vec3 unit() {
    Vec3 v;
    do v = vec(-1.0, 1.0);
    while (norm(v) < 1e-2);
    return normalized(v);
  }
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// The two fixed parameter sets every closed-form/quadrature comparison runs
// on; the second scrambles every scale of the first.
inline ParamSet planar_config(int which) {
  ParamSet p;
  if (which == 0) {
    p.m = 1.0; p.mu = 1.9; p.tau = 0.45;
    p.B = {0, 0, 0.8}; p.Omega = {0, 0, 0.35};
  } else {
    p.m = 0.7; p.mu = 1.5; p.tau = 1.1;
    p.B = {0, 0, -0.6}; p.Omega = {0, 0, 0.25};
  }
  p.Efield = {0.27, -0.42, 0};
  p.x = {1.3, 0, 0};
  return p;
}

inline ParamSet spatial_config(int which) {
  ParamSet p;
  if (which == 0) {
    p.m = 1.0; p.mu = 2.1; p.tau = 0.5;
    p.B = {0, 0, 0.9}; p.Omega = {0, 0, 0.4};
  } else {
    p.m = 0.7; p.mu = 1.5; p.tau = 1.1;
    p.B = {0, 0, -0.6}; p.Omega = {0, 0, 0.25};
  }
  return p;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(const Vec3& got, const Vec3& want) {
  return max_abs(got - want) / std::max(max_abs(want), 1e-300);
}

}  // namespace detail

// chi0 closed form against the Cramer-rule solve of its defining linear
// system.
inline CheckResult check_chi0_oracle(int ntrials = 10000, double tol = 1e-12,
                                     std::uint64_t seed = 11) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    const double E = rng.uni(0.5, 3.0);
    const double tau = rng.uni(0.1, 2.0);
    const Vec3 calB = rng.vec(-2.0, 2.0);
    const Vec3 emu = rng.vec(-1.0, 1.0);
    const Vec3 a = chi0(E, tau, calB, emu);
    const Vec3 b = chi0_linear_oracle(E, tau, calB, emu);
    worst = std::max(worst, max_abs(a - b) / std::max(max_abs(b), 1e-300));
  }
  return {"chi0-vs-linear-solver", worst <= tol, worst, tol, 0.0,
          std::to_string(ntrials) + " random systems, worst rel " +
              detail::fmt(worst)};
}

// A deliberately corrupted drift sign must be caught by the oracle; guards
// the comparison itself against going vacuous.
inline CheckResult check_chi0_negative_control() {
  const double E = 1.7, tau = 0.6;
  const Vec3 calB{0.4, -0.9, 1.1}, emu{0.3, 0.2, -0.5};
  const Vec3 bad = chi0(E, tau, -1.0 * calB, emu);
  const Vec3 ref = chi0_linear_oracle(E, tau, calB, emu);
  const double diff = max_abs(bad - ref) / max_abs(ref);
  return {"chi0-negative-control", diff > 1e-6, diff, 1e-6, 0.0,
          "sign-flipped field must disagree: rel gap " + detail::fmt(diff)};
}

// Defining-equation residuals of the three response blocks, relative to the
// size of the equation's right-hand side.
inline CheckResult check_chi_residuals(int ntrials = 1000, double tol = 1e-10,
                                       std::uint64_t seed = 12) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    ParamSet par;
    par.m = rng.uni(0.5, 2.0);
    par.mu = par.m * rng.uni(1.05, 3.0);
    par.tau = rng.uni(0.1, 1.5);
    par.B = rng.vec(-1.0, 1.0);
    par.Omega = rng.vec(-0.5, 0.5);
    par.Efield = rng.vec(-0.5, 0.5);
    par.x = rng.vec(-1.0, 1.0);
    const Vec3 p = rng.vec(-2.0, 2.0);
    const Vec3 grad_mu = rng.vec(-0.3, 0.3);
    const double E = dispersion(p, par.m);
    const DerivedFields df = derived_fields_at(par, E, grad_mu);
    const Vec3 c0 = chi0(E, par.tau, df.calB, df.e_mu);
    const Vec3 C = bigC(c0, df.g, df.calB, df.d2);
    const MatrixVector3 K =
        bigK(E, par.m, par.hbar, df.g, df.calB, df.e_mu, df.d2);
    const MatrixVector3 c1 = chi1(p, E, par, df);
    const double sC = std::max((E / par.tau) * max_abs(c0), 1e-300);
    const double sK = std::max((E / par.tau) * max_abs(K) + max_abs(c0), 1e-300);
    const double s1 =
        std::max(max_abs(dot(c1, p)) / par.tau + max_abs(c0) * norm(p) / par.tau,
                 1e-300);
    worst = std::max(worst, bigC_residual(c0, C, E, par.tau, df.calB) / sC);
    worst = std::max(
        worst, bigK_residual(K, E, par.m, par.hbar, par.tau, df.calB, df.e_mu) / sK);
    worst = std::max(worst, chi1_residual(p, E, par, df) / s1);
  }
  return {"chi-defining-residuals", worst <= tol, worst, tol, 0.0,
          std::to_string(ntrials) + " random instances, worst rel " +
              detail::fmt(worst)};
}

// The explicit one-line distribution coefficient against the assembled
// chi0 + chi1 route; they are algebraically identical.
inline CheckResult check_f1_routes(int ntrials = 1000, double tol = 1e-12,
                                   std::uint64_t seed = 13) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    ParamSet par;
    par.m = rng.uni(0.5, 2.0);
    par.mu = par.m * rng.uni(1.05, 3.0);
    par.tau = rng.uni(0.1, 1.5);
    par.B = rng.vec(-1.0, 1.0);
    par.Omega = rng.vec(-0.5, 0.5);
    par.Efield = rng.vec(-0.5, 0.5);
    const PhasePoint xp{rng.vec(-1.0, 1.0), rng.vec(-2.0, 2.0)};
    const Vec3 grad_mu = rng.vec(-0.3, 0.3);
    const double dmu_dt = rng.uni(-0.5, 0.5);
    const PauliCoeff a = f1(xp, par, grad_mu, dmu_dt);
    const PauliCoeff b = f1_from_chi(xp, par, solve_chi(xp, par, grad_mu), dmu_dt);
    worst = std::max(worst, max_abs(a - b) / std::max(max_abs(b), 1e-300));
  }
  return {"distribution-two-routes", worst <= tol, worst, tol, 0.0,
          "one-line display vs solve route, worst rel " + detail::fmt(worst)};
}

// Exact projection identity of the curvature, G.phat = hbar sigma.phat/2E^2.
inline CheckResult check_curvature_identity(int ntrials = 1000, double tol = 1e-12,
                                            std::uint64_t seed = 14) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    const double m = rng.uni(0.5, 2.0);
    const double hbar = rng.uni(0.5, 1.5);
    Vec3 p;
    do p = rng.vec(-2.0, 2.0);
    while (norm(p) < 1e-3);
    const Vec3 ph = normalized(p);
    const double E = dispersion(p, m);
    const PauliCoeff lhs = dot(berry_curvature(p, m, hbar), ph);
    const PauliCoeff rhs = (hbar / (2.0 * E * E)) * PauliCoeff::sigma(ph);
    worst = std::max(worst, max_abs(lhs - rhs) / std::max(max_abs(rhs), 1e-300));
  }
  return {"curvature-identity", worst <= tol, worst, tol, 0.0,
          "G.phat vs hbar sigma.phat/2E^2, worst rel " + detail::fmt(worst)};
}

// Curvature formula vs the covariant-derivative finite-difference oracle:
// the error must shrink 4x when the step halves (second-order differences).
inline CheckResult check_curvature_fd(double lo = 3.4, double hi = 4.6,
                                      std::uint64_t seed = 15) {
  detail::Rng rng(seed);
  double worst_lo = 1e300, worst_hi = 0.0;
  std::ostringstream det;
  for (int t = 0; t < 8; ++t) {
    const double m = rng.uni(0.5, 2.0);
    const double hbar = rng.uni(0.5, 1.5);
    const Vec3 p = rng.vec(-1.5, 1.5);
    const double h = 1e-3 * std::max(norm(p), m);
    const MatrixVector3 exact = berry_curvature(p, m, hbar);
    const double e1 = max_abs(curvature_fd_oracle(p, m, hbar, h) - exact);
    const double e2 = max_abs(curvature_fd_oracle(p, m, hbar, 0.5 * h) - exact);
    const double ratio = e1 / std::max(e2, 1e-300);
    worst_lo = std::min(worst_lo, ratio);
    worst_hi = std::max(worst_hi, ratio);
  }
  const bool pass = worst_lo >= lo && worst_hi <= hi;
  det << "step-halving ratios in [" << detail::fmt(worst_lo) << ", "
      << detail::fmt(worst_hi) << "], want [" << lo << ", " << hi << "]";
  return {"curvature-fd-convergence", pass, worst_lo, lo, 0.0, det.str()};
}

namespace detail {

// Measure formula with every spin matrix projected onto its sigma.n
// eigenvalue before any product; matches the 6x6 Pfaffian identically.
inline double scalarized_measure(const PhasePoint& xp, const ParamSet& par,
                                 double zeta, const Vec3& n_hat) {
  const double E = dispersion(xp.p, par.m);
  const double s = par.sign_q();
  const Vec3 u = cross(xp.x, par.Omega);
  const Vec3 calB = par.q * par.B + 2.0 * E * par.Omega;
  const MatrixVector3 Gm = berry_curvature(xp.p, par.m, par.hbar);
  const MatrixVector3 num = canonical_velocity(xp.p, par, VelocityMode::full);
  Vec3 G{}, nu{};
  for (int i = 0; i < 3; ++i) {
    G[i] = scalarize(Gm[i], zeta, n_hat).real();
    nu[i] = scalarize(num[i], zeta, n_hat).real();
  }
  return 1.0 + s * dot(G, calB) - dot(nu, u) -
         s * dot(nu, G) * (par.q * dot(par.B, u));
}

inline ParamSet random_measure_config(Rng& rng) {
  ParamSet par;
  par.m = rng.uni(0.5, 2.0);
  par.mu = par.m * rng.uni(1.05, 3.0);
  par.tau = rng.uni(0.1, 1.5);
  par.B = rng.vec(-1.0, 1.0);
  par.Omega = rng.vec(-0.4, 0.4);
  par.Efield = rng.vec(-0.5, 0.5);
  par.x = rng.vec(-1.0, 1.0);
  par.hbar = rng.uni(0.6, 1.4);
  return par;
}

}  // namespace detail

// Project-first measure against the 6x6 numerical Pfaffian; exact match.
inline CheckResult check_measure_vs_6x6(int ntrials = 200, double tol = 1e-13,
                                        std::uint64_t seed = 16) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    ParamSet par = detail::random_measure_config(rng);
    const PhasePoint xp{par.x, rng.vec(-2.0, 2.0)};
    const Vec3 n_hat = rng.unit();
    for (int zeta : {1, -1}) {
      ParamSet pz = par;
      pz.branch = zeta;
      const double a = detail::scalarized_measure(xp, pz, zeta, n_hat);
      const double b = pfaffian_6x6_oracle(xp, pz, n_hat, VelocityMode::full);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
    }
  }
  return {"measure-vs-6x6", worst <= tol, worst, tol, 0.0,
          "project-first formula vs numerical Pfaffian, worst rel " +
              detail::fmt(worst)};
}

// Operator-ordered measure, projected after the products, differs from the
// project-first Pfaffian at second order in hbar only: halving hbar must
// shrink the gap by 4 for both spin projections.
inline CheckResult check_measure_ordering(int ntrials = 100, double lo = 3.6,
                                          double hi = 4.4,
                                          std::uint64_t seed = 17) {
  detail::Rng rng(seed);
  double worst_lo = 1e300, worst_hi = 0.0;
  int used = 0;
  for (int t = 0; t < ntrials; ++t) {
    ParamSet par = detail::random_measure_config(rng);
    const PhasePoint xp{par.x, rng.vec(-2.0, 2.0)};
    const Vec3 n_hat = rng.unit();
    for (int zeta : {1, -1}) {
      ParamSet p1 = par;
      p1.branch = zeta;
      ParamSet p2 = p1;
      p2.hbar = 0.5 * p1.hbar;
      const auto gap = [&](const ParamSet& pp) {
        const cplx prod =
            scalarize(pfaffian(xp, pp, VelocityMode::full), zeta, n_hat);
        const double orac = pfaffian_6x6_oracle(xp, pp, n_hat, VelocityMode::full);
        return std::abs(prod - cplx(orac));
      };
      const double d1 = gap(p1), d2 = gap(p2);
      if (d2 < 1e-17) continue;  // degenerate draw, no hbar^2 signal
      const double ratio = d1 / d2;
      worst_lo = std::min(worst_lo, ratio);
      worst_hi = std::max(worst_hi, ratio);
      ++used;
    }
  }
  const bool pass = used >= ntrials && worst_lo >= lo && worst_hi <= hi;
  std::ostringstream det;
  det << used << " projections, hbar-halving ratios in ["
      << detail::fmt(worst_lo) << ", " << detail::fmt(worst_hi) << "], want ["
      << lo << ", " << hi << "]";
  return {"measure-ordering-hbar2", pass, worst_lo, lo, 0.0, det.str()};
}

// Every closed-form observable against the quadrature of its defining
// integral at T = 0 (tol_t0) and with a smeared edge T = 1e-4 mu (tol_sm,
// skipped when tol_sm <= 0).
inline CheckResult check_closed_vs_quadrature(double tol_t0 = 1e-6,
                                              double tol_sm = -1.0) {
  double worst = 0.0;
  std::string worst_name = "none";
  const auto note = [&](const char* name, double err) {
    if (err > worst) {
      worst = err;
      worst_name = name;
    }
  };
  const bool smeared = tol_sm > 0.0;
  const double tol = smeared ? tol_sm : tol_t0;

  for (int cfg = 0; cfg < 2; ++cfg) {
    ParamSet p2 = detail::planar_config(cfg);
    const Vec3 gmu2{0.12, 0.21, 0};
    const double T2 = smeared ? 1e-4 * p2.mu : 0.0;

    Integrand ig;
    ig.dimension = 2;
    ig.kind = Integrand::Kind::density;
    ig.mode = DistributionMode::equilibrium;
    note("planar-density",
         detail::rel_err(quad_density(ig, p2, T2).value[0], spin_density_2d(p2)));

    ig.kind = Integrand::Kind::current;
    {
      const DensityQuad q = quad_density(ig, p2, T2);
      note("planar-current-eq",
           detail::rel_err(Vec3{q.value[0], q.value[1], q.value[2]},
                           spin_current_2d_eq(p2)));
    }
    ig.mode = DistributionMode::linear_response;
    ig.grad_mu = gmu2;
    {
      const DensityQuad q = quad_density(ig, p2, T2);
      note("planar-current-noneq",
           detail::rel_err(Vec3{q.value[0], q.value[1], q.value[2]},
                           spin_current_2d_noneq(p2, gmu2)));
    }

    ParamSet p3 = detail::spatial_config(cfg);
    p3.x = {0.8, -0.3, 0.2};
    const double T3 = smeared ? 1e-4 * p3.mu : 0.0;
    Integrand i3;
    i3.dimension = 3;
    i3.kind = Integrand::Kind::density;
    i3.mode = DistributionMode::equilibrium;
    i3.spin_axis = 2;
    note("spatial-density",
         detail::rel_err(quad_density(i3, p3, T3).value[0], spin_density_3d(p3, 2)));

    ParamSet p3e = p3;
    p3e.Efield = {0.2, -0.1, 0.15};
    i3.kind = Integrand::Kind::current;
    {
      const DensityQuad q = quad_density(i3, p3e, T3);
      note("spatial-current-eq",
           detail::rel_err(Vec3{q.value[0], q.value[1], q.value[2]},
                           spin_current_3d_eq(p3e, 2)));
    }

    ParamSet p3n = p3;
    p3n.x = {};
    p3n.Efield = {0, 0, 0.33};
    i3.mode = DistributionMode::linear_response;
    i3.grad_mu = {0, 0, -0.11};
    {
      const DensityQuad q = quad_density(i3, p3n, T3);
      note("spatial-current-par",
           detail::rel_err(Vec3{q.value[0], q.value[1], q.value[2]},
                           spin_current_3d_noneq_closed(p3n, {0, 0, -0.11})));
    }
    p3n.Efield = {0.31, -0.17, 0};
    i3.grad_mu = {0.06, 0.13, 0};
    {
      const DensityQuad q = quad_density(i3, p3n, T3);
      note("spatial-current-perp",
           detail::rel_err(Vec3{q.value[0], q.value[1], q.value[2]},
                           spin_current_3d_noneq_closed(p3n, {0.06, 0.13, 0})));
    }
  }
  const std::string name =
      smeared ? "closed-vs-quadrature-smeared" : "closed-vs-quadrature-T0";
  return {name, worst <= tol, worst, tol, 0.0,
          "7 observables x 2 configs, worst rel " + detail::fmt(worst) + " at " +
              worst_name};
}

// Fast (minimal exact) angular grid against the oversampled one.
inline CheckResult check_angular_grids(double tol = 1e-12) {
  double worst = 0.0;
  for (int cfg = 0; cfg < 2; ++cfg) {
    for (int dim : {2, 3}) {
      ParamSet p = dim == 2 ? detail::planar_config(cfg) : detail::spatial_config(cfg);
      if (dim == 3) {
        p.x = {0.8, -0.3, 0.2};
        p.Efield = {0.2, -0.1, 0.15};
      }
      Integrand ig;
      ig.dimension = dim;
      ig.kind = Integrand::Kind::current;
      ig.mode = DistributionMode::both;
      ig.grad_mu = {0.12, 0.21, 0};
      const DensityQuad a = quad_density(ig, p);
      ig.dense_angular = true;
      const DensityQuad b = quad_density(ig, p);
      double scale = 0.0, diff = 0.0;
      for (int c = 0; c < 3; ++c) {
        scale = std::max(scale, std::abs(b.value[c]));
        diff = std::max(diff, std::abs(a.value[c] - b.value[c]));
      }
      worst = std::max(worst, diff / std::max(scale, 1e-300));
    }
  }
  return {"angular-grid-agreement", worst <= tol, worst, tol, 0.0,
          "minimal vs oversampled angular rule, worst rel " + detail::fmt(worst)};
}

// Field-independence of the two Hall combinations.
inline CheckResult check_hall_identities(int ntrials = 1000, double tol = 1e-12,
                                         std::uint64_t seed = 18) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < ntrials; ++t) {
    ParamSet par;
    par.m = rng.uni(0.5, 2.0);
    par.mu = par.m * rng.uni(1.05, 3.0);
    par.tau = rng.uni(0.1, 1.5);
    par.B = {0, 0, rng.uni(-1.0, 1.0)};
    par.Omega = {0, 0, rng.uni(-0.5, 0.5)};
    const HallDecomposition h = hall_decompose_2d(par);
    if (!h.hall_zero) {
      const double lhs = (h.a1 * h.a1 + h.a2 * h.a2) / h.a2;
      worst = std::max(worst, detail::rel_err(lhs, h.sigma_sh1));
    }
    const Noneq3dCoeffs c = spin_current_3d_noneq_coeffs(par);
    if (c.b2 != 0.0) {
      const double lhs = (c.b1 * c.b1 + c.b2 * c.b2) / c.b2;
      worst = std::max(worst, detail::rel_err(lhs, sigma_perp_3d(par)));
    }
  }
  return {"hall-identities", worst <= tol, worst, tol, 0.0,
          std::to_string(ntrials) + " random fields, worst rel " +
              detail::fmt(worst)};
}

// Chemical-potential-rate response against its closed form in both
// dimensions.
inline CheckResult check_consistency(double tol = 1e-6) {
  double worst = 0.0;
  for (int cfg = 0; cfg < 2; ++cfg) {
    worst = std::max(worst, consistency_check(detail::planar_config(cfg), 2).rel_err);
    worst = std::max(worst, consistency_check(detail::spatial_config(cfg), 3).rel_err);
  }
  return {"consistency-response", worst <= tol, worst, tol, 0.0,
          "dmu/dt response vs closed form, worst rel " + detail::fmt(worst)};
}

// Divergence of the total planar current: bounded on the structured
// profile, refining 4x under step halving, exactly zero for flat or empty
// drives.
inline CheckResult check_continuity(double tol = 1e-4, double ratio_lo = 3.5,
                                    double ratio_hi = 4.5) {
  ParamSet p;
  p.m = 1.0;
  p.mu = 1.9;
  p.tau = 0.45;
  p.B = {0, 0, 0.8};
  p.Omega = {0, 0, 1e-4};
  SpatialGrid g;
  g.profile = SpatialGrid::Profile::harmonic_quintic;
  g.n = 41;
  const double r1 = continuity_residual(p, g);
  g.n = 81;
  const double r2 = continuity_residual(p, g);
  const double ratio = r1 / std::max(r2, 1e-300);

  ParamSet pu = p;
  pu.Omega = {};
  pu.Efield = {0.2, -0.1, 0};
  SpatialGrid gu;
  const double ru = continuity_residual(pu, gu);
  ParamSet pz = pu;
  pz.B = {};
  pz.Efield = {};
  const double rz = continuity_residual(pz, gu);

  const bool pass = r1 <= tol && ratio >= ratio_lo && ratio <= ratio_hi &&
                    ru <= 1e-6 && rz == 0.0;
  std::ostringstream det;
  det << "residual " << detail::fmt(r1) << " (bound " << detail::fmt(tol)
      << "), halving ratio " << detail::fmt(ratio) << ", flat "
      << detail::fmt(ru) << ", empty " << detail::fmt(rz);
  return {"continuity", pass, r1, tol, 0.0, det.str()};
}

// Massless and nonrelativistic limits of the Hall coefficient.
inline CheckResult check_limits() {
  const double pi = std::acos(-1.0);
  ParamSet pm;
  pm.m = 1.0;
  pm.mu = 1e3;
  const double target = -pm.q / (4.0 * pi);
  const double r_massless = detail::rel_err(sigma_sh(pm), target);
  const double tol_massless = 1e-3 * (1.0 + 1e-9);  // gap is exactly m/mu

  ParamSet pn;
  pn.m = 1.0;
  const double kf = 1e-2;
  pn.mu = mu_from_kf(kf, pn.m);
  const double n_tilde = kf * kf / (2.0 * pi * pn.hbar * pn.hbar);
  const double sigma_nr = -pn.q * pn.hbar * n_tilde / (4.0 * pn.m * pn.m);
  const double r_nonrel = detail::rel_err(sigma_sh(pn), sigma_nr);
  const double tol_nonrel = kf * kf / (pn.m * pn.m);  // expansion error scale

  const bool pass = r_massless <= tol_massless && r_nonrel <= tol_nonrel;
  std::ostringstream det;
  det << "massless gap " << detail::fmt(r_massless) << " (bound "
      << detail::fmt(tol_massless) << "), nonrelativistic gap "
      << detail::fmt(r_nonrel) << " (bound " << detail::fmt(tol_nonrel) << ")";
  return {"limit-checks", pass, r_massless, tol_massless, 0.0, det.str()};
}

// Planck-constant scaling of every closed form, checked at hbar = 0.7: the
// planar observables are hbar-free, the spatial ones carry 1/hbar, and the
// consistency coefficients carry 1/hbar (planar) and 1/hbar^2 (spatial).
inline CheckResult check_hbar_scaling(double tol = 1e-12) {
  double worst = 0.0;
  ParamSet p2 = detail::planar_config(0);
  ParamSet p2h = p2;
  p2h.hbar = 0.7;
  worst = std::max(worst, detail::rel_err(spin_density_2d(p2h), spin_density_2d(p2)));
  worst = std::max(worst,
                   detail::rel_err(spin_current_2d_eq(p2h), spin_current_2d_eq(p2)));
  worst = std::max(worst, detail::rel_err(spin_current_2d_noneq(p2h),
                                          spin_current_2d_noneq(p2)));
  worst = std::max(worst, detail::rel_err(consistency_check(p2h, 2).closed_form,
                                          consistency_check(p2, 2).closed_form / 0.7));

  ParamSet p3 = detail::spatial_config(0);
  p3.Efield = {0.2, -0.1, 0.15};
  ParamSet p3h = p3;
  p3h.hbar = 0.7;
  worst = std::max(worst,
                   detail::rel_err(spin_density_3d(p3h, 2), spin_density_3d(p3, 2) / 0.7));
  worst = std::max(worst, detail::rel_err(spin_current_3d_eq(p3h, 2),
                                          spin_current_3d_eq(p3, 2) / 0.7));
  worst = std::max(worst, detail::rel_err(spin_current_3d_noneq_closed(p3h),
                                          spin_current_3d_noneq_closed(p3) / 0.7));
  worst = std::max(worst, detail::rel_err(sigma_perp_3d(p3h), sigma_perp_3d(p3) / 0.7));
  worst = std::max(worst, detail::rel_err(consistency_check(p3h, 3).closed_form,
                                          consistency_check(p3, 3).closed_form / 0.49));

  // quadrature inherits the same scaling
  Integrand ig;
  ig.dimension = 3;
  ig.kind = Integrand::Kind::density;
  ig.mode = DistributionMode::equilibrium;
  const double q1 = quad_density(ig, p3).value[0];
  const double qh = quad_density(ig, p3h).value[0];
  const double quad_gap = detail::rel_err(qh, q1 / 0.7);
  const bool pass = worst <= tol && quad_gap <= 1e-9;
  std::ostringstream det;
  det << "closed forms worst rel " << detail::fmt(worst) << ", quadrature "
      << detail::fmt(quad_gap);
  return {"hbar-scaling", pass, worst, tol, 0.0, det.str()};
}

}  // namespace checks

// Runs validation; `full` adds the smeared quadrature comparison and the
// dense angular-grid agreement on top of the quick set.
inline std::vector<CheckResult> run_checks(bool full) {
  std::vector<CheckResult> out;
  const auto timed = [&](CheckResult r, std::chrono::steady_clock::time_point t0) {
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  };
  using clock = std::chrono::steady_clock;
#define ROTSPIN_RUN(expr)      \
  do {                         \
    const auto t0 = clock::now(); \
    timed((expr), t0);         \
  } while (0)
  ROTSPIN_RUN(checks::check_chi0_oracle());
  ROTSPIN_RUN(checks::check_chi0_negative_control());
  ROTSPIN_RUN(checks::check_chi_residuals());
  ROTSPIN_RUN(checks::check_f1_routes());
  ROTSPIN_RUN(checks::check_curvature_identity());
  ROTSPIN_RUN(checks::check_curvature_fd());
  ROTSPIN_RUN(checks::check_measure_vs_6x6());
  ROTSPIN_RUN(checks::check_measure_ordering());
  ROTSPIN_RUN(checks::check_closed_vs_quadrature());
  ROTSPIN_RUN(checks::check_hall_identities());
  ROTSPIN_RUN(checks::check_consistency());
  ROTSPIN_RUN(checks::check_continuity());
  ROTSPIN_RUN(checks::check_limits());
  ROTSPIN_RUN(checks::check_hbar_scaling());
  if (full) {
    ROTSPIN_RUN(checks::check_closed_vs_quadrature(1e-6, 1e-3));
    ROTSPIN_RUN(checks::check_angular_grids());
  }
#undef ROTSPIN_RUN
  return out;
}

}  // namespace rotspin
