#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rotspin {

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    gl.w[i] = gl.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return gl;
}

// Vector-valued integration result; up to three components at once so a
// whole current is integrated in a single adaptive pass.
struct QuadResult {
  std::array<double, 3> value{};
  int ncomp = 0;
  double achieved_err = 0.0;  // worst relative error estimate over components
  bool converged = false;
  int nevals = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkSegment {
  double a = 0.0, b = 0.0;
  std::array<double, 3> val{};
  std::array<double, 3> err{};
};

template <typename F>
inline GkSegment gk15(F&& f, double a, double b, int ncomp, int& nevals) {
  const double mid = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  std::array<double, 3> k15{}, g7{};
  for (int i = 0; i < 8; ++i) {
    const bool center = (i == 7);
    const std::array<double, 3> fp = f(mid + hl * gk_nodes[i]);
    const std::array<double, 3> fm = center ? fp : f(mid - hl * gk_nodes[i]);
    nevals += center ? 1 : 2;
    for (int c = 0; c < ncomp; ++c) {
      const double s = center ? fp[c] : fp[c] + fm[c];
      k15[c] += gk_wk[i] * s;
      if (i % 2 == 1 || center) g7[c] += gk_wg[i / 2] * s;
    }
  }
  GkSegment seg{a, b, {}, {}};
  for (int c = 0; c < ncomp; ++c) {
    seg.val[c] = hl * k15[c];
    seg.err[c] = std::abs(hl * (k15[c] - g7[c]));
  }
  return seg;
}

}  // namespace detail

// Adaptive Gauss-Kronrod over [a, b], bisecting the segment with the worst
// error until every component meets max(rel_tol |I_c|, abs_tol).
template <typename F>
inline QuadResult integrate_gk(F&& f, double a, double b, int ncomp,
                               double rel_tol = 1e-10, double abs_tol = 1e-14,
                               int max_segments = 4000) {
  if (ncomp < 1 || ncomp > 3) throw std::invalid_argument("integrate_gk: ncomp in [1,3]");
  QuadResult res;
  res.ncomp = ncomp;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::vector<detail::GkSegment> segs;
  segs.push_back(detail::gk15(f, a, b, ncomp, res.nevals));
  while (true) {
    std::array<double, 3> tot{}, err{};
    for (const auto& s : segs)
      for (int c = 0; c < ncomp; ++c) {
        tot[c] += s.val[c];
        err[c] += s.err[c];
      }
    double worst = 0.0;
    bool ok = true;
    for (int c = 0; c < ncomp; ++c) {
      const double scale = std::max(std::abs(tot[c]), abs_tol / rel_tol);
      worst = std::max(worst, err[c] / scale);
      if (err[c] > std::max(rel_tol * std::abs(tot[c]), abs_tol)) ok = false;
    }
    res.value = tot;
    res.achieved_err = worst;
    if (ok || static_cast<int>(segs.size()) >= max_segments) {
      res.converged = ok;
      return res;
    }
    std::size_t iw = 0;
    double emax = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      double e = 0.0;
      for (int c = 0; c < ncomp; ++c) e += segs[i].err[c];
      if (e > emax) {
        emax = e;
        iw = i;
      }
    }
    const detail::GkSegment old = segs[iw];
    const double m = 0.5 * (old.a + old.b);
    segs[iw] = detail::gk15(f, old.a, m, ncomp, res.nevals);
    segs.push_back(detail::gk15(f, m, old.b, ncomp, res.nevals));
  }
}

}  // namespace rotspin
