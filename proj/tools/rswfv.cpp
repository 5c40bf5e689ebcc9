// Command line front end: run, sweep, kconv, list-cases.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsw/driver.hpp"
#include "rsw/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string case_name;
  std::string config;
  std::optional<int> nx, ny;
  std::optional<double> t_final;
  std::string out;
  std::string bc;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--case", a.case_name, "catalog case name");
  cmd->add_option("--config", a.config, "JSON config file (or a run manifest)");
  cmd->add_option("--nx", a.nx, "cells in x");
  cmd->add_option("--ny", a.ny, "cells in y");
  cmd->add_option("--tfinal", a.t_final, "final time");
  cmd->add_option("--out", a.out, "output directory");
  cmd->add_option("--bc", a.bc, "boundary mode: periodic, extrapolation, equilibrium");
}

// Config file first, then command line flags on top.
rsw::RunConfig make_config(const CommonArgs& a) {
  rsw::RunConfig cfg;
  if (!a.config.empty()) cfg = rsw::load_config(a.config);
  if (!a.case_name.empty()) cfg.case_name = a.case_name;
  if (cfg.case_name.empty()) throw rsw::ConfigError("no case given (use --case or a config file)");
  rsw::find_case(cfg.case_name);
  if (a.nx) cfg.overrides.nx = *a.nx;
  if (a.ny) cfg.overrides.ny = *a.ny;
  if (a.t_final) cfg.t_final = *a.t_final;
  if (!a.out.empty()) cfg.out_dir = a.out;
  if (!a.bc.empty()) cfg.overrides.bc = rsw::parse_boundary_mode(a.bc);
  return cfg;
}

void report(const char* kind, const std::exception& e) {
  nlohmann::json j{{"error", kind}, {"message", e.what()}};
  std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-implicit finite volume solver for the rotating shallow water equations"};
  app.set_version_flag("--version", std::string(rsw::version_string()));
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, kconv_args;
  std::string sweep_res, kconv_res;
  std::optional<int> sweep_ref, kconv_ref;

  CLI::App* run = app.add_subcommand("run", "run one case");
  add_common(run, run_args);
  CLI::App* sweep = app.add_subcommand("sweep", "mesh refinement study with error and EOC table");
  add_common(sweep, sweep_args);
  sweep->add_option("--resolutions", sweep_res, "comma separated, ascending, e.g. 16,32,64,128")->required();
  sweep->add_option("--ref", sweep_ref, "reference resolution (default twice the finest)");
  CLI::App* kconv = app.add_subcommand("kconv", "K-convergence ladder E1-E4");
  add_common(kconv, kconv_args);
  kconv->add_option("--resolutions", kconv_res, "at least three, ascending")->required();
  kconv->add_option("--ref", kconv_ref, "reference resolution (default twice the finest)");
  CLI::App* list = app.add_subcommand("list-cases", "print the case catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const auto& c : rsw::case_catalog()) {
        std::printf("%-24s %s\n", c.name.c_str(), c.description.c_str());
        std::printf("%-24s grid %dx%d on [%g,%g]x[%g,%g], bc %s, g=%g omega=%g alpha=%g T=%g\n", "",
                    c.nx, c.strip ? 3 : c.ny, c.x0, c.x1, c.strip ? 0.0 : c.y0, c.strip ? 3.0 * (c.x1 - c.x0) : c.y1,
                    std::string(rsw::to_string(c.bc)).c_str(), c.g, c.omega, c.alpha, c.t_final);
      }
      return 0;
    }
    if (run->parsed()) {
      const rsw::RunConfig cfg = make_config(run_args);
      const rsw::RunResult res = rsw::run_case(cfg);
      std::printf("%s: %ld steps to t=%.6g in %.2fs, output in %s\n", cfg.case_name.c_str(), res.steps,
                  res.final_state.t, res.wall_seconds, rsw::resolve_output_dir(cfg).string().c_str());
      return 0;
    }
    if (sweep->parsed()) {
      const rsw::RunConfig cfg = make_config(sweep_args);
      const auto rows = rsw::run_sweep(cfg, rsw::parse_resolutions(sweep_res), sweep_ref);
      rsw::write_sweep_csv(std::cout, rows);
      return 0;
    }
    if (kconv->parsed()) {
      const rsw::RunConfig cfg = make_config(kconv_args);
      const auto rows = rsw::run_kconv(cfg, rsw::parse_resolutions(kconv_res), kconv_ref);
      rsw::write_ladder_csv(std::cout, rows);
      return 0;
    }
  } catch (const rsw::ConfigError& e) {
    report("config", e);
    return kExitConfig;
  } catch (const rsw::NumericalError& e) {
    report("numerical", e);
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    report("config", e);
    return kExitConfig;
  } catch (const std::exception& e) {
    report("internal", e);
    return 1;
  }
  return 1;
}
