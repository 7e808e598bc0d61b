#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rotspin/berry.hpp"

using namespace rotspin;

TEST_CASE("connection and curvature are hermitian and traceless") {
  oracles::Rng rng(301);
  for (int t = 0; t < 50; ++t) {
    const Vec3 p = rng.vec(-2, 2);
    const double m = rng.uni(0.4, 2.0), hbar = rng.uni(0.5, 1.5);
    const MatrixVector3 A = berry_connection(p, m, hbar);
    const MatrixVector3 G = berry_curvature(p, m, hbar);
    for (int i = 0; i < 3; ++i) {
      CHECK(hermiticity_defect(A[i]) < 1e-14);
      CHECK(hermiticity_defect(G[i]) < 1e-14);
      CHECK(std::abs(pauli_trace(G[i])) < 1e-14);
    }
  }
}

TEST_CASE("radial projection of the curvature is exact") {
  oracles::Rng rng(302);
  for (int t = 0; t < 200; ++t) {
    const double m = rng.uni(0.4, 2.0), hbar = rng.uni(0.5, 1.5);
    Vec3 p;
    do p = rng.vec(-2, 2);
    while (norm(p) < 1e-3);
    const Vec3 ph = normalized(p);
    const double E = dispersion(p, m);
    const PauliCoeff lhs = dot(berry_curvature(p, m, hbar), ph);
    const PauliCoeff rhs = (hbar / (2.0 * E * E)) * PauliCoeff::sigma(ph);
    CHECK(max_abs(lhs - rhs) < 1e-13 * max_abs(rhs));
  }
}

TEST_CASE("curvature agrees with the covariant derivative of the connection") {
  oracles::Rng rng(303);
  for (int t = 0; t < 10; ++t) {
    const double m = rng.uni(0.5, 1.5), hbar = rng.uni(0.6, 1.4);
    const Vec3 p = rng.vec(-1.5, 1.5);
    const double h = 1e-3 * std::max(norm(p), m);
    const MatrixVector3 exact = berry_curvature(p, m, hbar);
    const double e1 = max_abs(curvature_fd_oracle(p, m, hbar, h) - exact);
    const double e2 = max_abs(curvature_fd_oracle(p, m, hbar, 0.5 * h) - exact);
    CHECK(e2 < e1);
    // second-order finite differences: error drops 4x per step halving
    CHECK(e1 / e2 == Catch::Approx(4.0).margin(0.6));
  }
}

TEST_CASE("default differencing step tracks the local momentum scale") {
  CHECK(berry_fd_default_step({10, 0, 0}, 1.0) == Catch::Approx(1e-4));
  CHECK(berry_fd_default_step({0.01, 0, 0}, 2.0) == Catch::Approx(2e-5));
}

TEST_CASE("energy matrix is hermitian with the dispersion on its diagonal trace") {
  oracles::Rng rng(304);
  for (int t = 0; t < 50; ++t) {
    ParamSet par;
    par.m = rng.uni(0.5, 1.5);
    par.B = rng.vec(-1, 1);
    par.Omega = rng.vec(-0.5, 0.5);
    const Vec3 p = rng.vec(-2, 2);
    const PauliCoeff H = semiclassical_hamiltonian(p, par);
    CHECK(hermiticity_defect(H) < 1e-13);
    const double E = dispersion(p, par.m);
    CHECK(std::abs(0.5 * pauli_trace(H) - cplx(E)) < 1e-12);
  }
}

TEST_CASE("field coupling splits the two spin branches symmetrically") {
  ParamSet par;
  par.B = {0, 0, 0.6};
  par.Omega = {0, 0, 0.2};
  const Vec3 p{0.3, -0.4, 0.8};
  const double E = dispersion(p, par.m);
  const Vec3 calB = effective_bfield(par, E);
  const Vec3 n = normalized(calB);
  const PauliCoeff H = semiclassical_hamiltonian(p, par);
  const cplx up = scalarize(H, +1, n);
  const cplx dn = scalarize(H, -1, n);
  CHECK(std::abs(0.5 * (up + dn) - cplx(E)) < 1e-13);
  CHECK(std::abs(up - dn) > 1e-6);  // the coupling actually splits them
}
