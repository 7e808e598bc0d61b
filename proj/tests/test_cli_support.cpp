#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "rotspin/config.hpp"
#include "rotspin/report.hpp"
#include "rotspin/sweep.hpp"

using namespace rotspin;

TEST_CASE("config text parses keys, comments and blank lines") {
  std::istringstream in(
      "# leading comment\n"
      "\n"
      "m = 1.25\n"
      "mu_over_m = 2.0   # trailing comment\n"
      "tau=0.7\n"
      "B_z = -0.4\n"
      "grad_mu_y = 0.05\n"
      "dmu_dt = -0.1\n"
      "branch = -1\n");
  const RunConfig cfg = make_run_config(parse_key_values(in));
  CHECK(cfg.par.m == 1.25);
  CHECK(cfg.par.mu == Catch::Approx(2.5));
  CHECK(cfg.par.tau == 0.7);
  CHECK(cfg.par.B[2] == -0.4);
  CHECK(cfg.grad_mu[1] == 0.05);
  CHECK(cfg.dmu_dt == -0.1);
  CHECK(cfg.par.branch == -1);
}

TEST_CASE("mu_over_m resolves against the configured mass in any file order") {
  std::istringstream in("mu_over_m = 3.0\nm = 0.5\n");
  const RunConfig cfg = make_run_config(parse_key_values(in));
  CHECK(cfg.par.mu == Catch::Approx(1.5));
}

TEST_CASE("config errors carry actionable messages") {
  {
    std::istringstream in("what = 1\n");
    REQUIRE_THROWS_AS(make_run_config(parse_key_values(in)), std::invalid_argument);
    try {
      std::istringstream in2("what = 1\n");
      make_run_config(parse_key_values(in2));
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.find("unknown key 'what'") != std::string::npos);
      CHECK(msg.find("mu_over_m") != std::string::npos);  // lists valid keys
    }
  }
  {
    std::istringstream in("mu = 2.0\nmu_over_m = 2.0\n");
    CHECK_THROWS_WITH(make_run_config(parse_key_values(in)),
                      Catch::Matchers::ContainsSubstring("not both"));
  }
  {
    std::istringstream in("m 2.0\n");
    CHECK_THROWS_WITH(parse_key_values(in),
                      Catch::Matchers::ContainsSubstring("expected key = value"));
  }
  {
    std::istringstream in("m = abc\n");
    CHECK_THROWS_WITH(parse_key_values(in),
                      Catch::Matchers::ContainsSubstring("not a number"));
  }
  {
    std::istringstream in("m = 1\nm = 2\n");
    CHECK_THROWS_WITH(parse_key_values(in),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  }
  {
    std::istringstream in("branch = 2\n");
    CHECK_THROWS_AS(make_run_config(parse_key_values(in)), std::invalid_argument);
  }
}

TEST_CASE("sweeps expand as an ordered cartesian product") {
  RunConfig base;
  base.par.m = 1.0;
  const auto cfgs =
      build_sweep(base, {{"tau", {0.3, 0.6}}, {"B_z", {0.1, 0.2, 0.3}}});
  REQUIRE(cfgs.size() == 6);
  // first axis slowest
  CHECK(cfgs[0].par.tau == 0.3);
  CHECK(cfgs[0].par.B[2] == 0.1);
  CHECK(cfgs[2].par.tau == 0.3);
  CHECK(cfgs[2].par.B[2] == 0.3);
  CHECK(cfgs[3].par.tau == 0.6);
  CHECK(cfgs[3].par.B[2] == 0.1);
  CHECK_THROWS_AS(build_sweep(base, {{"nope", {1.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(build_sweep(base, {{"tau", {}}}), std::invalid_argument);
}

TEST_CASE("parallel map preserves order and propagates failures") {
  std::vector<int> items(200);
  for (int i = 0; i < 200; ++i) items[i] = i;
  const auto sq = parallel_map(
      items, [](int v) { return v * v; }, 4);
  REQUIRE(sq.size() == 200);
  for (int i = 0; i < 200; ++i) CHECK(sq[i] == i * i);
  // single-job path
  const auto sq1 = parallel_map(
      items, [](int v) { return v + 1; }, 1);
  CHECK(sq1[7] == 8);
  // exception from a worker reaches the caller
  CHECK_THROWS_AS(parallel_map(
                      items,
                      [](int v) {
                        if (v == 153) throw std::runtime_error("boom");
                        return v;
                      },
                      4),
                  std::runtime_error);
}

TEST_CASE("result tables serialize to CSV and JSON consistently") {
  RunConfig cfg;
  cfg.par.mu = 1.9;
  cfg.par.tau = 0.45;
  cfg.par.B = {0, 0, 0.8};
  cfg.par.Omega = {0, 0, 0.35};
  cfg.par.Efield = {0.27, -0.42, 0};
  cfg.par.x = {1.3, 0, 0};
  const Table t = conductivity2d_table({cfg});
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.rows[0].size() == t.header.size());

  std::ostringstream csv;
  write_csv(csv, t);
  const std::string text = csv.str();
  CHECK(text.find("sigma_sh") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);

  std::ostringstream js;
  write_json(js, t);
  const auto parsed = nlohmann::json::parse(js.str());
  REQUIRE(parsed["columns"].size() == t.header.size());
  REQUIRE(parsed["rows"].size() == 1);
  // round trip of one representative value
  std::size_t col = 0;
  while (t.header[col] != "sigma_sh") ++col;
  CHECK(parsed["rows"][0][col].get<double>() ==
        Catch::Approx(sigma_sh(cfg.par)).epsilon(1e-15));
}

TEST_CASE("value formatting round trips through text") {
  for (double v : {0.1, -1.0 / 3.0, 1.2345678912345678e-7, 6.02214076e23}) {
    CHECK(std::stod(format_g17(v)) == v);
  }
}

TEST_CASE("planar table rejects tilted fields") {
  RunConfig cfg;
  cfg.par.B = {0.1, 0, 0.5};
  CHECK_THROWS_AS(conductivity2d_table({cfg}), std::invalid_argument);
}

TEST_CASE("spatial table reports one row per spin axis") {
  RunConfig cfg;
  cfg.par.mu = 2.1;
  cfg.par.B = {0, 0, 0.9};
  cfg.par.Omega = {0, 0, 0.4};
  cfg.par.Efield = {0.2, -0.1, 0.15};
  cfg.par.x = {0.8, -0.3, 0.2};
  const Table t = densities3d_table({cfg});
  REQUIRE(t.rows.size() == 3);
  std::size_t axis_col = 0;
  while (t.header[axis_col] != "axis") ++axis_col;
  for (int a = 0; a < 3; ++a) CHECK(t.rows[a][axis_col] == a);
}

TEST_CASE("reference reproduction rows pass their own assertions") {
  const auto rows = repro_rows();
  REQUIRE(rows.size() == 7);
  for (const auto& r : rows) {
    INFO(r.id << ": " << r.label << " value " << r.value);
    if (r.checked) CHECK(r.pass);
  }
  // serialization keeps every row
  std::ostringstream csv, js;
  write_csv(csv, rows);
  write_json(js, rows);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
  CHECK(nlohmann::json::parse(js.str()).size() == 7);
}

TEST_CASE("lab-unit inputs rescale into natural units") {
  RunConfig cfg;
  cfg.par.m = units::electron_mass_eV;
  cfg.par.mu = cfg.par.m / 0.933;
  cfg.par.B = {0, 0, 1.0};       // tesla
  cfg.par.Omega = {0, 0, 1e3};   // rad/s
  cfg.par.x = {0.01, 0, 0};      // meters
  cfg.par.tau = 1e-14;           // seconds
  convert_si_inputs(cfg);
  CHECK(cfg.par.B[2] == Catch::Approx(59.157).epsilon(1e-3));
  CHECK(cfg.par.Omega[2] == Catch::Approx(6.582e-13).epsilon(1e-3));
  CHECK(cfg.par.x[0] == Catch::Approx(50677.0).epsilon(1e-3));
  CHECK(cfg.par.tau == Catch::Approx(15.19).epsilon(1e-3));
}

TEST_CASE("validation report serializes with names and verdicts") {
  std::vector<CheckResult> res;
  res.push_back({"demo-check", true, 1e-15, 1e-12, 0.01, "worst rel 1e-15"});
  std::ostringstream csv, js;
  write_csv(csv, res);
  write_json(js, res);
  CHECK(csv.str().find("demo-check") != std::string::npos);
  const auto parsed = nlohmann::json::parse(js.str());
  CHECK(parsed[0]["pass"].get<bool>());
  CHECK(parsed[0]["name"].get<std::string>() == "demo-check");
}
