#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rotspin/integrands.hpp"
#include "rotspin/quadrature.hpp"

namespace rotspin {

// Momentum-space integral of one observable; value[0..ncomp-1] carries the
// density or the current components.
struct DensityQuad {
  std::array<double, 3> value{};
  int ncomp = 1;
  double achieved_err = 0.0;
  bool converged = true;
  long nevals = 0;
};

namespace detail {

// Angular grids sized so that every polynomial the integrands produce in the
// momentum direction is integrated exactly; the dense variants oversample by
// several times for cross-checking that claim.
inline constexpr int nphi_2d_fast = 16, nphi_2d_dense = 64;
inline constexpr int ntheta_3d_fast = 4, nphi_3d_fast = 8;
inline constexpr int ntheta_3d_dense = 24, nphi_3d_dense = 48;

template <typename Fn>
inline void for_each_direction(int dimension, bool dense, Fn&& fn) {
  const double two_pi = 2.0 * std::acos(-1.0);
  if (dimension == 2) {
    const int n = dense ? nphi_2d_dense : nphi_2d_fast;
    for (int k = 0; k < n; ++k) {
      const double phi = two_pi * k / n;
      fn(Vec3{std::cos(phi), std::sin(phi), 0.0}, two_pi / n);
    }
    return;
  }
  const int nt = dense ? ntheta_3d_dense : ntheta_3d_fast;
  const int np = dense ? nphi_3d_dense : nphi_3d_fast;
  static thread_local GaussLegendre gl;
  if (static_cast<int>(gl.x.size()) != nt) gl = gauss_legendre(nt);
  for (int j = 0; j < nt; ++j) {
    const double c = gl.x[j];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int k = 0; k < np; ++k) {
      const double phi = two_pi * k / np;
      fn(Vec3{s * std::cos(phi), s * std::sin(phi), c}, gl.w[j] * two_pi / np);
    }
  }
}

inline IntegrandEval angular_integral(const Integrand& ig, const ParamSet& par,
                                      double r) {
  IntegrandEval acc;
  acc.ncomp = (ig.kind == Integrand::Kind::current) ? 3 : 1;
  for_each_direction(ig.dimension, ig.dense_angular, [&](const Vec3& dir, double w) {
    const IntegrandEval ev = eval_integrand(ig, par, r * dir);
    for (int c = 0; c < acc.ncomp; ++c) {
      acc.vol[c] += w * ev.vol[c];
      acc.surf[c] += w * ev.surf[c];
    }
  });
  return acc;
}

}  // namespace detail

// Integrates vol f0 + surf df0/dE over momentum space with the measure
// d^dp/(2 pi hbar)^d. At T = 0 the response part collapses onto the Fermi
// surface and is evaluated there exactly; only the Fermi-sea part needs a
// radial quadrature. T_smear < 0 means use params.T.
inline DensityQuad quad_density(const Integrand& ig, const ParamSet& par,
                                double T_smear = -1.0, double rel_tol = 1e-10) {
  par.validate();
  if (ig.dimension != 2 && ig.dimension != 3)
    throw std::invalid_argument("quad_density: dimension must be 2 or 3");
  if (ig.spin_axis < 0 || ig.spin_axis > 2)
    throw std::invalid_argument("quad_density: spin_axis must be 0, 1 or 2");
  const double T = T_smear >= 0.0 ? T_smear : par.T;
  const int d = ig.dimension;
  const double two_pi_hbar = 2.0 * std::acos(-1.0) * par.hbar;
  const double measure = 1.0 / std::pow(two_pi_hbar, d);
  const bool want_vol = ig.mode != DistributionMode::linear_response;
  const bool want_surf = ig.mode != DistributionMode::equilibrium;

  DensityQuad out;
  out.ncomp = (ig.kind == Integrand::Kind::current) ? 3 : 1;

  const auto radial_power = [d](double r) { return d == 2 ? r : r * r; };

  if (T <= 0.0) {
    const double pf = fermi_momentum(par);
    if (pf <= 0.0) return out;  // empty band
    if (want_vol) {
      auto f = [&](double r) {
        const IntegrandEval ev = detail::angular_integral(ig, par, r);
        std::array<double, 3> y{};
        for (int c = 0; c < out.ncomp; ++c) y[c] = radial_power(r) * ev.vol[c];
        return y;
      };
      const QuadResult q = integrate_gk(f, 0.0, pf, out.ncomp, rel_tol);
      for (int c = 0; c < out.ncomp; ++c) out.value[c] += q.value[c];
      out.achieved_err = std::max(out.achieved_err, q.achieved_err);
      out.converged = out.converged && q.converged;
      out.nevals += q.nevals;
    }
    if (want_surf) {
      // int p^{d-1} dp X delta(E - mu) = mu pf^{d-2} X(pf), with the overall
      // minus from df0/dE = -delta(E - mu).
      const double S = par.mu * (d == 2 ? 1.0 : pf);
      const IntegrandEval ev = detail::angular_integral(ig, par, pf);
      for (int c = 0; c < out.ncomp; ++c) out.value[c] -= S * ev.surf[c];
    }
    for (int c = 0; c < out.ncomp; ++c) out.value[c] *= measure;
    return out;
  }

  // Smeared occupation: cut the tails 40 T past the chemical potential and
  // split the response integral at the Fermi momentum where df0/dE peaks.
  const auto p_of_E = [&](double E) {
    return std::sqrt(std::max(0.0, E * E - par.m * par.m));
  };
  const double p_hi = p_of_E(par.mu + 40.0 * T);
  if (p_hi <= 0.0) return out;
  if (want_vol) {
    auto f = [&](double r) {
      const IntegrandEval ev = detail::angular_integral(ig, par, r);
      const double occ = f0(dispersion(Vec3{r, 0, 0}, par.m), par.mu, T, par.branch);
      std::array<double, 3> y{};
      for (int c = 0; c < out.ncomp; ++c) y[c] = radial_power(r) * occ * ev.vol[c];
      return y;
    };
    const QuadResult q = integrate_gk(f, 0.0, p_hi, out.ncomp, rel_tol);
    for (int c = 0; c < out.ncomp; ++c) out.value[c] += q.value[c];
    out.achieved_err = std::max(out.achieved_err, q.achieved_err);
    out.converged = out.converged && q.converged;
    out.nevals += q.nevals;
  }
  if (want_surf) {
    const double p_lo = p_of_E(std::max(par.m, par.mu - 40.0 * T));
    std::vector<double> cuts{p_lo, p_hi};
    const double pf = fermi_momentum(par);
    if (pf > p_lo && pf < p_hi) cuts.insert(cuts.begin() + 1, pf);
    auto f = [&](double r) {
      const IntegrandEval ev = detail::angular_integral(ig, par, r);
      const double dfde = df0_dE(dispersion(Vec3{r, 0, 0}, par.m), par.mu, T).value;
      std::array<double, 3> y{};
      for (int c = 0; c < out.ncomp; ++c) y[c] = radial_power(r) * dfde * ev.surf[c];
      return y;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const QuadResult q = integrate_gk(f, cuts[i], cuts[i + 1], out.ncomp, rel_tol);
      for (int c = 0; c < out.ncomp; ++c) out.value[c] += q.value[c];
      out.achieved_err = std::max(out.achieved_err, q.achieved_err);
      out.converged = out.converged && q.converged;
      out.nevals += q.nevals;
    }
  }
  for (int c = 0; c < out.ncomp; ++c) out.value[c] *= measure;
  return out;
}

namespace detail {

struct FermiLogs {
  double pf = 0.0;  // Fermi momentum
  double L = 0.0;   // ln((pf + mu)/m)
  double At = 0.0;  // arctan(m/pf) - pi/2
};

inline FermiLogs fermi_logs(const ParamSet& par) {
  FermiLogs f;
  f.pf = fermi_momentum(par);
  if (f.pf <= 0.0) return f;
  f.L = std::log((f.pf + par.mu) / par.m);
  f.At = std::atan(par.m / f.pf) - 0.5 * std::acos(-1.0);
  return f;
}

// Fields assumed along z by the planar closed forms.
inline double calB_mu_z(const ParamSet& par) {
  return par.q * par.B.z + 2.0 * par.mu * par.Omega.z;
}

inline Vec3 e_prime(const ParamSet& par) {
  return par.Efield + cross(cross(par.Omega, par.x), par.B);
}

}  // namespace detail

// ---- planar (2D) closed forms; B and Omega along z, spin axis z ----

// Equilibrium spin density of the filled band plus Fermi sea.
inline double spin_density_2d(const ParamSet& par) {
  require_positive_charge(par, "spin_density_2d");
  par.validate();
  if (par.mu <= par.m) return 0.0;
  const double pi = std::acos(-1.0);
  return par.q * par.B.z / (4.0 * pi) * (par.mu - par.m) / par.mu +
         par.Omega.z * par.m / (2.0 * pi) * std::log(par.mu / par.m);
}

// Equilibrium spin current: a Hall-like response to the electrochemical
// field E' = E + (Omega x x) x B plus a centrifugal piece.
inline Vec3 spin_current_2d_eq(const ParamSet& par) {
  require_positive_charge(par, "spin_current_2d_eq");
  par.validate();
  if (par.mu <= par.m) return {};
  const double pi = std::acos(-1.0);
  const Vec3 zhat{0.0, 0.0, 1.0};
  const Vec3 cf = cross(cross(par.Omega, par.x), par.Omega);
  return (par.q / (4.0 * pi) * (par.mu - par.m) / par.mu) *
             cross(detail::e_prime(par), zhat) +
         (par.m / (4.0 * pi) * std::log(par.mu / par.m)) * cross(cf, zhat);
}

// Spin Hall conductivity in the convention J = sigma_SH (z x E).
inline double sigma_sh(const ParamSet& par) {
  require_positive_charge(par, "sigma_sh");
  par.validate();
  if (par.mu <= par.m) return 0.0;
  const double pi = std::acos(-1.0);
  return -par.q / (4.0 * pi) * (par.mu - par.m) / par.mu;
}

// Nonequilibrium (relaxation-time) spin current at a general planar point;
// the drive is v = q E' - grad(mu) + mu (Omega x x) x Omega.
inline Vec3 spin_current_2d_noneq(const ParamSet& par, const Vec3& grad_mu = {}) {
  require_positive_charge(par, "spin_current_2d_noneq");
  par.validate();
  if (par.mu <= par.m) return {};
  const double pi = std::acos(-1.0);
  const double fac = 1.0 - 0.5 * norm2(cross(par.Omega, par.x));
  const double Bm = detail::calB_mu_z(par);
  const double g = par.tau / par.mu;
  const double d2 = g * g * Bm * Bm;
  const Vec3 v = derived_fields(par, grad_mu).e_mu;
  const double pref = fac * par.m * (par.mu * par.mu - par.m * par.m) /
                      (8.0 * pi * std::pow(par.mu, 3)) * g * Bm /
                      ((1.0 + d2) * (1.0 + d2));
  const Vec3 zhat{0.0, 0.0, 1.0};
  return pref * (-(1.0 - d2) * v + (2.0 * g * Bm) * cross(zhat, v));
}

// Longitudinal/transverse decomposition of the planar response to a uniform
// E field, J = a1 E + a2 (z x E), and the two derived Hall coefficients.
struct HallDecomposition {
  double a1 = 0.0;
  double a2 = 0.0;
  double sigma_sh1 = 0.0;  // (a1^2 + a2^2)/a2, field independent
  double ohm_coeff = 0.0;  // (a1^2 + a2^2)/a1, diverges at d2 = 1
  bool hall_zero = false;  // calB = 0: a1 = a2 = 0, ratios are 0/0
  bool ohm_pole = false;   // d2 = 1: a1 = 0 while a2 != 0
};

inline HallDecomposition hall_decompose_2d(const ParamSet& par) {
  require_positive_charge(par, "hall_decompose_2d");
  par.validate();
  HallDecomposition h;
  if (par.mu <= par.m) return h;
  const double pi = std::acos(-1.0);
  const double Bm = detail::calB_mu_z(par);
  const double g = par.tau / par.mu;
  const double d2 = g * g * Bm * Bm;
  const double p2 = par.mu * par.mu - par.m * par.m;
  const double mu3 = std::pow(par.mu, 3);
  const double denom = (1.0 + d2) * (1.0 + d2);
  h.a1 = -par.q * par.m * p2 * g * Bm * (1.0 - d2) / (8.0 * pi * mu3 * denom);
  h.a2 = 2.0 * par.q * par.m * p2 * g * g * Bm * Bm / (8.0 * pi * mu3 * denom);
  h.sigma_sh1 = par.q * par.m * p2 / (16.0 * pi * mu3);
  h.hall_zero = (Bm == 0.0);
  h.ohm_pole = std::abs(1.0 - d2) <= 1e-12 * (1.0 + d2);
  h.ohm_coeff = h.ohm_pole
                    ? std::numeric_limits<double>::infinity()
                    : -par.q * par.m * p2 / (8.0 * pi * mu3) * g * Bm / (1.0 - d2);
  return h;
}

// ---- spatial (3D) closed forms; spin axis picks the component ----

// Equilibrium spin density; linear in B and Omega, so valid for any field
// directions.
inline double spin_density_3d(const ParamSet& par, int axis) {
  require_positive_charge(par, "spin_density_3d");
  par.validate();
  if (axis < 0 || axis > 2) throw std::invalid_argument("spin_density_3d: bad axis");
  if (par.mu <= par.m) return 0.0;
  const double pi = std::acos(-1.0);
  const detail::FermiLogs f = detail::fermi_logs(par);
  const double m = par.m, mu = par.mu;
  const double bB = (1.0 - 2.0 * m / mu) * f.pf + 2.0 * m * f.L + m * f.At;
  const double bO = (4.0 * m + mu) * f.pf - m * m * f.L + 4.0 * m * m * f.At;
  return (par.q * par.B[axis] * bB + par.Omega[axis] * bO) /
         (12.0 * pi * pi * par.hbar);
}

// Equilibrium spin current of spin component `axis`.
inline Vec3 spin_current_3d_eq(const ParamSet& par, int axis) {
  require_positive_charge(par, "spin_current_3d_eq");
  par.validate();
  if (axis < 0 || axis > 2) throw std::invalid_argument("spin_current_3d_eq: bad axis");
  if (par.mu <= par.m) return {};
  const double pi = std::acos(-1.0);
  const detail::FermiLogs f = detail::fermi_logs(par);
  const double m = par.m, mu = par.mu;
  const double bB = (1.0 - 2.0 * m / mu) * f.pf + 2.0 * m * f.L + m * f.At;
  const double bO = (4.0 * m + mu) * f.pf - m * m * f.L + 4.0 * m * m * f.At;
  const Vec3 ahat = axis_unit(axis);
  const Vec3 cf = cross(cross(par.Omega, par.x), par.Omega);
  return (par.q * bB / (12.0 * pi * pi * par.hbar)) * cross(detail::e_prime(par), ahat) +
         (0.5 * bO / (12.0 * pi * pi * par.hbar)) * cross(cf, ahat);
}

// Closed-form coefficients of the nonequilibrium 3D response for B, Omega
// and the spin axis all along z, evaluated where x x Omega = 0:
// J_z = c_par e_z, J_perp = b1 e_perp + b2 (e_perp x z).
struct Noneq3dCoeffs {
  double c_par = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

inline Noneq3dCoeffs spin_current_3d_noneq_coeffs(const ParamSet& par) {
  require_positive_charge(par, "spin_current_3d_noneq_coeffs");
  par.validate();
  Noneq3dCoeffs c;
  if (par.mu <= par.m) return c;
  const double pi = std::acos(-1.0);
  const double pf = fermi_momentum(par);
  const double pf3 = pf * pf * pf;
  const double mu = par.mu, m = par.m, tau = par.tau;
  const double Bm = detail::calB_mu_z(par);
  c.c_par = tau / (60.0 * pi * pi * par.hbar) * pf3 * (7.0 * mu - 2.0 * m) /
            std::pow(mu, 4) * Bm;
  const double w2 = tau * tau * Bm * Bm;
  const double k = -tau / (60.0 * pi * pi * par.hbar) * (4.0 * m + mu) * pf3 * Bm /
                   ((mu * mu + w2) * (mu * mu + w2));
  c.b1 = k * (1.0 - w2 / (mu * mu));
  c.b2 = k * 2.0 * tau * Bm / mu;
  return c;
}

// Closed-form nonequilibrium current acting on e = q E - grad(mu); the
// geometry restrictions of the coefficients apply.
inline Vec3 spin_current_3d_noneq_closed(const ParamSet& par, const Vec3& grad_mu = {}) {
  const Noneq3dCoeffs c = spin_current_3d_noneq_coeffs(par);
  const Vec3 e = derived_fields(par, grad_mu).e_mu;
  const Vec3 e_perp{e.x, e.y, 0.0};
  const Vec3 zhat{0.0, 0.0, 1.0};
  return c.b1 * e_perp + c.b2 * cross(e_perp, zhat) + Vec3{0.0, 0.0, c.c_par * e.z};
}

// General nonequilibrium 3D current: at T = 0 the response integral is a
// pure Fermi-surface evaluation, so no radial quadrature enters and any
// field geometry is allowed.
inline Vec3 spin_current_3d_noneq(const ParamSet& par, int axis,
                                  const Vec3& grad_mu = {}) {
  require_positive_charge(par, "spin_current_3d_noneq");
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("spin_current_3d_noneq: bad axis");
  Integrand ig;
  ig.dimension = 3;
  ig.kind = Integrand::Kind::current;
  ig.spin_axis = axis;
  ig.grad_mu = grad_mu;
  ig.mode = DistributionMode::linear_response;
  const DensityQuad q = quad_density(ig, par, 0.0);
  return {q.value[0], q.value[1], q.value[2]};
}

// Transverse Hall coefficient (b1^2 + b2^2)/b2; the combination is field
// independent.
inline double sigma_perp_3d(const ParamSet& par) {
  require_positive_charge(par, "sigma_perp_3d");
  par.validate();
  if (par.mu <= par.m) return 0.0;
  const double pi = std::acos(-1.0);
  const double p2 = par.mu * par.mu - par.m * par.m;
  return -(4.0 * par.m + par.mu) * std::pow(p2, 1.5) /
         (120.0 * pi * pi * par.hbar * std::pow(par.mu, 3));
}

// ---- consistency between the time-derivative response and the measure ----

struct ConsistencyResult {
  double closed_form = 0.0;
  double quadrature = 0.0;
  double rel_err = 0.0;
  bool converged = false;
};

// The spin-density response to a slow dmu/dt must reproduce the weighted
// Fermi-surface area fixed by the measure; checked by differencing two
// quadratures against the closed form.
inline ConsistencyResult consistency_check(const ParamSet& par, int dimension) {
  require_positive_charge(par, "consistency_check");
  par.validate();
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("consistency_check: dimension must be 2 or 3");
  const double pi = std::acos(-1.0);
  const double Bm = detail::calB_mu_z(par);
  ConsistencyResult r;
  if (dimension == 2) {
    r.closed_form = -par.tau / (2.0 * pi * par.hbar) * par.m / (par.mu * par.mu) * Bm;
  } else {
    r.closed_form = -par.tau / (6.0 * pi * pi * par.hbar * par.hbar) *
                    (2.0 * par.m + par.mu) / (par.mu * par.mu) * fermi_momentum(par);
    r.closed_form *= Bm;
  }
  Integrand ig;
  ig.dimension = dimension;
  ig.kind = Integrand::Kind::density;
  ig.spin_axis = 2;
  ig.mode = DistributionMode::linear_response;
  ig.dmu_dt = 1.0;
  const DensityQuad on = quad_density(ig, par, 0.0);
  ig.dmu_dt = 0.0;
  const DensityQuad off = quad_density(ig, par, 0.0);
  r.quadrature = (on.value[0] - off.value[0]) * 2.0 / par.hbar;
  r.converged = on.converged && off.converged;
  const double scale = std::max(std::abs(r.closed_form), 1e-300);
  r.rel_err = std::abs(r.quadrature - r.closed_form) / scale;
  return r;
}

// ---- continuity of the total planar spin current ----

// Spatial grid and applied-field profile for the divergence test. The
// harmonic_quintic profile shapes E(x) so the drive becomes v0 plus the
// gradient of a harmonic polynomial, which keeps the exact current
// divergence-free while making it strongly position dependent.
struct SpatialGrid {
  enum class Profile { uniform, harmonic_quintic };
  int n = 41;
  double half_extent = 0.5;
  Profile profile = Profile::uniform;
  double eps = 1e-3;          // gradient amplitude of the quintic term
  Vec3 v0{0.2, -0.1, 0.0};    // uniform part of the drive
};

namespace detail {

inline Vec3 grad_h5(const Vec3& x) {
  // h5 = Re[(x + i y)^5], a harmonic polynomial of degree 5
  const double X = x.x, Y = x.y;
  return {5.0 * X * X * X * X - 30.0 * X * X * Y * Y + 5.0 * Y * Y * Y * Y,
          -20.0 * X * X * X * Y + 20.0 * X * Y * Y * Y, 0.0};
}

inline Vec3 applied_field(const ParamSet& par, const SpatialGrid& grid, const Vec3& x) {
  if (grid.profile == SpatialGrid::Profile::uniform) return par.Efield;
  // choose E(x) so that q E' - grad(mu) + mu (Omega x x) x Omega is exactly
  // v0 + eps grad(h5); both current pieces are then divergence free
  const Vec3 v = grid.v0 + grid.eps * grad_h5(x);
  const Vec3 oxx = cross(par.Omega, x);
  return (v - par.mu * cross(oxx, par.Omega)) / par.q - cross(oxx, par.B);
}

}  // namespace detail

// Max |div j| over the interior, normalized by max |j| / L; central
// differences on an n x n grid. j is the total planar spin current.
inline double continuity_residual(const ParamSet& par, const SpatialGrid& grid) {
  require_positive_charge(par, "continuity_residual");
  par.validate();
  if (grid.n < 5) throw std::invalid_argument("continuity_residual: grid too small");
  const int n = grid.n;
  const double h = 2.0 * grid.half_extent / (n - 1);
  std::vector<Vec3> j(static_cast<std::size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      ParamSet at = par;
      at.x = {-grid.half_extent + ix * h, -grid.half_extent + iy * h, 0.0};
      at.Efield = detail::applied_field(par, grid, at.x);
      j[static_cast<std::size_t>(iy) * n + ix] =
          spin_current_2d_eq(at) + spin_current_2d_noneq(at);
    }
  double max_div = 0.0, max_j = 0.0;
  for (const Vec3& v : j) max_j = std::max(max_j, norm(v));
  if (max_j == 0.0) return 0.0;
  for (int iy = 1; iy + 1 < n; ++iy)
    for (int ix = 1; ix + 1 < n; ++ix) {
      const auto at = [&](int a, int b) -> const Vec3& {
        return j[static_cast<std::size_t>(b) * n + a];
      };
      const double div = (at(ix + 1, iy).x - at(ix - 1, iy).x +
                          at(ix, iy + 1).y - at(ix, iy - 1).y) /
                         (2.0 * h);
      max_div = std::max(max_div, std::abs(div));
    }
  const double L = 2.0 * grid.half_extent;
  return max_div * L / max_j;
}

}  // namespace rotspin
