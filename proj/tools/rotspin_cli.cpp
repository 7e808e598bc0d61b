// Command-line front end. Subcommands compute planar transport rows, spatial
// density rows, parameter sweeps, the self-check suite, and the documented
// reference-value reproduction. Exit codes: 0 success, 1 usage or input
// error, 2 self-check failure, 3 reference row outside its window.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotspin/rotspin.hpp"

using namespace rotspin;

namespace {

// Flags shared by the compute subcommands. Direct flags are collected as
// config keys so file and flag inputs go through one code path; the map's
// key order applies m before mu_over_m.
struct CommonOpts {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  int jobs = 0;
  bool si = false;
  std::map<std::string, double> overrides;
};

void add_io_flags(CLI::App* sub, CommonOpts& opt) {
  sub->add_option("--config", opt.config_path, "key = value parameter file");
  sub->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", opt.out_path, "write output here instead of stdout");
}

void add_compute_flags(CLI::App* sub, CommonOpts& opt) {
  add_io_flags(sub, opt);
  sub->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");
  sub->add_flag("--si-units", opt.si,
                "inputs in SI units (tesla, rad/s, meters, seconds, V/m)");
  const auto bind = [sub, &opt](const char* flag, const char* key,
                                const char* desc) {
    sub->add_option_function<double>(
        flag, [&opt, key](double v) { opt.overrides[key] = v; }, desc);
  };
  bind("--m", "m", "mass");
  bind("--mu", "mu", "chemical potential");
  bind("--mu-over-m", "mu_over_m", "chemical potential in units of the mass");
  bind("--tau", "tau", "relaxation time");
  bind("--T", "T", "temperature");
  bind("--B", "B_z", "magnetic field along z");
  bind("--Omega", "Omega_z", "rotation frequency along z");
  bind("--Ex", "E_x", "electric field along x");
  bind("--Ey", "E_y", "electric field along y");
  bind("--Ez", "E_z", "electric field along z");
  bind("--R", "R", "boundary radius for the confined profile");
}

// defaults -> config file -> direct flags; SI rescaling happens after
// sweep expansion so axis values stay in the units the user typed.
RunConfig assemble(const CommonOpts& opt) {
  RunConfig cfg;
  if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
  if (opt.overrides.count("mu") && opt.overrides.count("mu_over_m"))
    throw std::invalid_argument("give either --mu or --mu-over-m, not both");
  for (const auto& [key, value] : opt.overrides)
    apply_config_key(cfg, key, value);
  cfg.par.validate();
  return cfg;
}

std::ostream& open_out(const CommonOpts& opt, std::ofstream& file) {
  if (opt.out_path.empty()) return std::cout;
  file.open(opt.out_path);
  if (!file)
    throw std::invalid_argument("cannot write to '" + opt.out_path + "'");
  return file;
}

template <class Rows>
void emit(const CommonOpts& opt, const Rows& rows) {
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  if (opt.format == "json")
    write_json(os, rows);
  else
    write_csv(os, rows);
}

std::vector<SweepAxis> parse_axes(const std::vector<std::string>& specs) {
  std::vector<SweepAxis> axes;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--axis expects key=v1,v2,... got '" + spec +
                                  "'");
    SweepAxis ax;
    ax.key = spec.substr(0, eq);
    std::string rest = spec.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok =
          rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok.empty())
        throw std::invalid_argument("--axis " + ax.key + ": '" + tok +
                                    "' is not a number");
      ax.values.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    axes.push_back(std::move(ax));
  }
  return axes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spin density, spin current, and spin Hall response of a rotating "
      "charged Dirac gas"};
  app.require_subcommand(1);

  CommonOpts cond_opt, dens_opt, sweep_opt, val_opt, repro_opt;

  CLI::App* cond = app.add_subcommand(
      "conductivity2d", "planar spin density, currents, Hall coefficients");
  add_compute_flags(cond, cond_opt);

  CLI::App* dens = app.add_subcommand(
      "densities3d", "spatial spin densities and currents per spin axis");
  add_compute_flags(dens, dens_opt);

  CLI::App* sweep =
      app.add_subcommand("sweep", "cartesian parameter sweep of a target");
  add_compute_flags(sweep, sweep_opt);
  std::string sweep_target = "conductivity2d";
  std::vector<std::string> axis_specs;
  sweep->add_option("--target", sweep_target, "table to compute per point")
      ->check(CLI::IsMember({"conductivity2d", "densities3d"}));
  sweep->add_option("--axis", axis_specs, "key=v1,v2,... (repeatable)")
      ->required();

  CLI::App* val = app.add_subcommand("validate", "run the self-check suite");
  add_io_flags(val, val_opt);
  std::string level = "quick";
  val->add_option("--level", level, "quick: subsecond; full: adds quadratures")
      ->check(CLI::IsMember({"quick", "full"}));

  CLI::App* repro = app.add_subcommand(
      "repro-paper", "reproduce the documented reference values");
  add_io_flags(repro, repro_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (cond->parsed()) {
      RunConfig cfg = assemble(cond_opt);
      if (cond_opt.si) convert_si_inputs(cfg);
      emit(cond_opt, conductivity2d_table({cfg}, cond_opt.si, cond_opt.jobs));
    } else if (dens->parsed()) {
      RunConfig cfg = assemble(dens_opt);
      if (dens_opt.si) convert_si_inputs(cfg);
      emit(dens_opt, densities3d_table({cfg}, dens_opt.jobs));
    } else if (sweep->parsed()) {
      const RunConfig base = assemble(sweep_opt);
      std::vector<RunConfig> cfgs = build_sweep(base, parse_axes(axis_specs));
      if (sweep_opt.si)
        for (RunConfig& c : cfgs) convert_si_inputs(c);
      if (sweep_target == "densities3d")
        emit(sweep_opt, densities3d_table(cfgs, sweep_opt.jobs));
      else
        emit(sweep_opt, conductivity2d_table(cfgs, sweep_opt.si,
                                             sweep_opt.jobs));
    } else if (val->parsed()) {
      const auto results = run_checks(level == "full");
      emit(val_opt, results);
      int bad = 0;
      for (const auto& r : results) {
        if (!r.pass) ++bad;
        std::cerr << (r.pass ? "pass " : "FAIL ") << r.name << "  "
                  << r.detail << "\n";
      }
      std::cerr << results.size() - bad << "/" << results.size()
                << " checks passed\n";
      if (bad) return 2;
    } else if (repro->parsed()) {
      const auto rows = repro_rows();
      emit(repro_opt, rows);
      bool ok = true;
      for (const auto& r : rows) {
        if (r.checked && !r.pass) ok = false;
        std::cerr << (r.checked ? (r.pass ? "pass " : "FAIL ") : "info ")
                  << r.id << "  " << r.label << " = " << format_g17(r.value)
                  << "\n";
      }
      if (!ok) return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
