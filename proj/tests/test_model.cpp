#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rotspin/model.hpp"

using namespace rotspin;

TEST_CASE("parameter validation rejects unusable inputs") {
  ParamSet p;
  CHECK_NOTHROW(p.validate());
  p.m = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.tau = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.hbar = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.T = -1e-9;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.branch = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("dispersion and Fermi momentum are mutually consistent") {
  oracles::Rng rng(201);
  for (int t = 0; t < 50; ++t) {
    ParamSet p;
    p.m = rng.uni(0.3, 2.0);
    p.mu = p.m * rng.uni(1.01, 4.0);
    const double pf = fermi_momentum(p);
    CHECK(dispersion({pf, 0, 0}, p.m) == Catch::Approx(p.mu).epsilon(1e-14));
    CHECK(mu_from_kf(pf, p.m) == Catch::Approx(p.mu).epsilon(1e-14));
  }
  ParamSet empty;
  empty.mu = empty.m * 0.5;
  CHECK(fermi_momentum(empty) == 0.0);
  empty.mu = empty.m;
  CHECK(fermi_momentum(empty) == 0.0);
}

TEST_CASE("effective field combines the magnetic field and the rotation") {
  ParamSet p;
  p.q = 1.5;
  p.B = {0.1, -0.2, 0.7};
  p.Omega = {0.0, 0.3, -0.4};
  const double E = 2.3;
  const Vec3 want{1.5 * 0.1, 1.5 * -0.2 + 2 * E * 0.3, 1.5 * 0.7 - 2 * E * 0.4};
  CHECK(max_abs(effective_bfield(p, E) - want) < 1e-14);
}

TEST_CASE("frame speed flags fast rotation") {
  ParamSet p;
  p.Omega = {0, 0, 0.5};
  p.x = {0.1, 0, 0};
  CHECK(rotation_speed(p) == Catch::Approx(0.05));
  CHECK_FALSE(fast_rotation(p));
  p.x = {0.3, 0, 0};
  CHECK(fast_rotation(p));
}

TEST_CASE("driving force assembles field, rotation and chemical gradient") {
  oracles::Rng rng(202);
  for (int t = 0; t < 50; ++t) {
    ParamSet p;
    p.q = rng.uni(0.5, 2.0);
    p.B = rng.vec(-1, 1);
    p.Omega = rng.vec(-0.5, 0.5);
    p.Efield = rng.vec(-1, 1);
    p.x = rng.vec(-1, 1);
    const double E = rng.uni(0.5, 3.0);
    const Vec3 grad_mu = rng.vec(-0.5, 0.5);
    // literal component recomputation
    const Vec3 u = cross(p.Omega, p.x);
    Vec3 want = p.q * p.Efield;
    want += cross(u, p.q * p.B + E * p.Omega);
    CHECK(max_abs(effective_force_at(p, E) - want) < 1e-13);

    const DerivedFields d = derived_fields_at(p, E, grad_mu);
    CHECK(max_abs(d.e_mu - (want - grad_mu)) < 1e-13);
    CHECK(d.g == Catch::Approx(p.tau / E).epsilon(1e-14));
    CHECK(d.d2 == Catch::Approx(d.g * d.g * norm2(d.calB)).epsilon(1e-13));
    CHECK(max_abs(d.calB - effective_bfield(p, E)) == 0.0);
  }
}

TEST_CASE("fields at the chemical potential are the fixed-energy bundle at mu") {
  ParamSet p;
  p.mu = 1.7;
  p.B = {0, 0, 0.4};
  p.Omega = {0, 0, 0.2};
  p.Efield = {0.1, 0.2, 0};
  p.x = {0.5, 0, 0};
  const DerivedFields a = derived_fields(p);
  const DerivedFields b = derived_fields_at(p, p.mu);
  CHECK(max_abs(a.calB - b.calB) == 0.0);
  CHECK(a.g == b.g);
  CHECK(max_abs(a.e_mu - b.e_mu) == 0.0);
}

TEST_CASE("closed-form layer rejects non-positive charge") {
  ParamSet p;
  p.q = -1.0;
  CHECK_THROWS_AS(require_positive_charge(p, "test"), std::invalid_argument);
  p.q = 0.0;
  CHECK_THROWS_AS(require_positive_charge(p, "test"), std::invalid_argument);
  p.q = 2.0;
  CHECK_NOTHROW(require_positive_charge(p, "test"));
}
