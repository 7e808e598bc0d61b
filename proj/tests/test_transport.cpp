#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rotspin/transport.hpp"

using namespace rotspin;

namespace {

ParamSet random_params(oracles::Rng& rng) {
  ParamSet par;
  par.m = rng.uni(0.5, 2.0);
  par.mu = par.m * rng.uni(1.05, 3.0);
  par.tau = rng.uni(0.1, 1.5);
  par.B = rng.vec(-1, 1);
  par.Omega = rng.vec(-0.4, 0.4);
  par.Efield = rng.vec(-0.5, 0.5);
  par.x = rng.vec(-1, 1);
  return par;
}

}  // namespace

TEST_CASE("equilibrium occupation has the standard limits") {
  CHECK(f0(1.0, 2.0, 0.0) == 1.0);
  CHECK(f0(3.0, 2.0, 0.0) == 0.0);
  CHECK(f0(2.0, 2.0, 0.0) == 0.5);
  const double T = 0.05;
  CHECK(f0(2.0, 2.0, T) == Catch::Approx(0.5));
  CHECK(f0(1.0, 2.0, T) > 0.99);
  CHECK(f0(3.0, 2.0, T) < 0.01);
  // monotone decreasing in E
  CHECK(f0(1.9, 2.0, T) > f0(2.1, 2.0, T));
  // no overflow far above the edge
  CHECK(f0(1e6, 2.0, T) == 0.0);
}

TEST_CASE("occupation derivative matches a finite difference at T > 0") {
  const double mu = 1.7, T = 0.08;
  for (double E : {1.4, 1.68, 1.7, 1.75, 2.2}) {
    const DfDE d = df0_dE(E, mu, T);
    REQUIRE(d.kind == DfDE::Kind::smooth);
    const double h = 1e-6;
    const double fd = (f0(E + h, mu, T) - f0(E - h, mu, T)) / (2 * h);
    CHECK(d.value == Catch::Approx(fd).epsilon(1e-7));
  }
  const DfDE z = df0_dE(1.0, 2.0, 0.0);
  CHECK(z.kind == DfDE::Kind::surface_delta);
  CHECK(z.value == -1.0);
}

TEST_CASE("leading drift solves its three-by-three linear system") {
  oracles::Rng rng(501);
  for (int t = 0; t < 500; ++t) {
    const double E = rng.uni(0.5, 3.0), tau = rng.uni(0.1, 2.0);
    const Vec3 calB = rng.vec(-2, 2), emu = rng.vec(-1, 1);
    const Vec3 closed = chi0(E, tau, calB, emu);
    const Vec3 solved = chi0_linear_oracle(E, tau, calB, emu);
    CHECK(max_abs(closed - solved) < 1e-12 * std::max(1.0, max_abs(solved)));
    CHECK(chi0_residual(E, tau, calB, emu, closed) <
          1e-13 * std::max(1.0, max_abs(emu)));
  }
}

TEST_CASE("drift inputs are guarded") {
  CHECK_THROWS_AS(chi0(0.0, 0.5, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(chi0(1.0, 0.0, {}, {}), std::invalid_argument);
}

TEST_CASE("subleading blocks satisfy their defining equations") {
  oracles::Rng rng(502);
  for (int t = 0; t < 300; ++t) {
    ParamSet par = random_params(rng);
    const Vec3 p = rng.vec(-2, 2);
    const Vec3 grad_mu = rng.vec(-0.3, 0.3);
    const double E = dispersion(p, par.m);
    const DerivedFields df = derived_fields_at(par, E, grad_mu);
    const Vec3 c0 = chi0(E, par.tau, df.calB, df.e_mu);
    const Vec3 C = bigC(c0, df.g, df.calB, df.d2);
    const MatrixVector3 K =
        bigK(E, par.m, par.hbar, df.g, df.calB, df.e_mu, df.d2);
    const double scale = std::max(1.0, max_abs(c0)) * (E / par.tau);
    CHECK(bigC_residual(c0, C, E, par.tau, df.calB) < 1e-12 * scale);
    CHECK(bigK_residual(K, E, par.m, par.hbar, par.tau, df.calB, df.e_mu) <
          1e-12 * std::max(scale, max_abs(K) * E / par.tau));
    CHECK(chi1_residual(p, E, par, df) <
          1e-12 * std::max(1.0, max_abs(c0) * norm(p) / par.tau));
  }
}

TEST_CASE("a corrupted drift fails the linear system residual") {
  const double E = 1.3, tau = 0.7;
  const Vec3 calB{0.5, -0.2, 0.9}, emu{0.4, 0.1, -0.3};
  Vec3 bad = chi0(E, tau, calB, emu);
  bad[1] += 1e-3;
  CHECK(chi0_residual(E, tau, calB, emu, bad) > 1e-4);
}

TEST_CASE("assembled solution bundles the pieces at the requested energy") {
  oracles::Rng rng(503);
  ParamSet par = random_params(rng);
  const PhasePoint xp{par.x, rng.vec(-2, 2)};
  const Vec3 grad_mu = rng.vec(-0.3, 0.3);
  const ChiSolution sol = solve_chi(xp, par, grad_mu);
  const double E = dispersion(xp.p, par.m);
  CHECK(sol.E == Catch::Approx(E).epsilon(1e-15));
  const DerivedFields df = derived_fields_at(par, E, grad_mu);
  CHECK(max_abs(sol.chi0 - chi0(E, par.tau, df.calB, df.e_mu)) < 1e-14);
  CHECK(max_abs(sol.chi1 - chi1(xp.p, E, par, df)) < 1e-14);
}

TEST_CASE("the two distribution assemblies are identical") {
  oracles::Rng rng(504);
  for (int t = 0; t < 300; ++t) {
    ParamSet par = random_params(rng);
    const PhasePoint xp{par.x, rng.vec(-2, 2)};
    const Vec3 grad_mu = rng.vec(-0.3, 0.3);
    const double dmu_dt = rng.uni(-0.5, 0.5);
    const PauliCoeff direct = f1(xp, par, grad_mu, dmu_dt);
    const PauliCoeff assembled =
        f1_from_chi(xp, par, solve_chi(xp, par, grad_mu), dmu_dt);
    CHECK(max_abs(direct - assembled) <
          1e-12 * std::max(1.0, max_abs(assembled)));
  }
}

TEST_CASE("only the relaxation term survives without any drive") {
  ParamSet par;  // no fields at all
  const PhasePoint xp{{}, {0.4, -0.1, 0.6}};
  const double rate = 0.37;
  const PauliCoeff got = f1(xp, par, {}, rate);
  CHECK(std::abs(got.c0 - cplx(par.tau * rate)) < 1e-15);
  CHECK(max_abs(PauliCoeff(0.0, got.cv)) < 1e-15);
}

TEST_CASE("distribution point composes occupation and response") {
  ParamSet par;
  par.mu = 1.8;
  par.T = 0.02;
  par.Efield = {0.2, 0, 0};
  const PhasePoint xp{{}, {0.5, 0.2, -0.3}};
  const DistributionPoint dp = distribution_at(xp, par);
  const double E = dispersion(xp.p, par.m);
  CHECK(dp.f0 == Catch::Approx(f0(E, par.mu, par.T)));
  const DfDE d = df0_dE(E, par.mu, par.T);
  CHECK(dp.dfde.value == Catch::Approx(d.value));
  CHECK(max_abs(dp.f1_coeff - f1(xp, par)) < 1e-14);
}
