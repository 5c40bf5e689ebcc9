#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsw/cases.hpp"
#include "rsw/diagnostics.hpp"
#include "rsw/kconv.hpp"

namespace rsw {

struct RunConfig {
  std::string case_name;
  CaseOverrides overrides;
  std::optional<double> t_final;
  std::vector<double> snapshot_times;
  /// Also write a snapshot every this many steps; 0 disables.
  int snapshot_every = 0;
  std::filesystem::path out_dir;
  bool csv = true, vtk = false;
};

/// Parses the JSON config layout (or a run manifest, which embeds one).
/// Throws ConfigError on unknown keys or bad values.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Output directory after applying the RSW_OUTPUT_ROOT override.
std::filesystem::path resolve_output_dir(const RunConfig& cfg);

struct RunHooks {
  /// Called after every accepted step with the state before and after it.
  std::function<void(const State& before, const State& after, const StepReport& rep)> on_step;
};

struct RunResult {
  Setup setup;  // initial data and problem
  State final_state;
  RunLedger ledger;
  long steps = 0;
  double wall_seconds = 0.0;
};

/// Time loop of one case. Final steps are clamped so the run lands exactly
/// on t_final and on every snapshot time. Outputs are written only when
/// `write_outputs` is set.
RunResult run_case(const RunConfig& cfg, bool write_outputs = true, const RunHooks& hooks = {},
                   StepperOptions opt = {});

struct SweepRow {
  int k = 0;
  double err_h = 0.0, err_u = 0.0, err_v = 0.0;
  /// NaN on the first row.
  double eoc_h = 0.0, eoc_u = 0.0, eoc_v = 0.0;
};

/// Runs every resolution and compares with the case's exact solution when it
/// has one (steady states included), otherwise with the block average of a
/// reference run at `ref`. An unset ref defaults to twice the finest.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::vector<int>& resolutions,
                                std::optional<int> ref, bool write_outputs = true);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// K-convergence ladder on the coarsest grid. Needs at least three distinct
/// resolutions. The reference ensemble is the ladder followed by one run at
/// `ref` (default twice the finest); U_ref is that last run.
std::vector<LadderRow> run_kconv(const RunConfig& cfg, const std::vector<int>& resolutions,
                                 std::optional<int> ref, bool write_outputs = true);
void write_ladder_csv(std::ostream& out, const std::vector<LadderRow>& rows);

/// Parses "16,32,64". Throws ConfigError.
std::vector<int> parse_resolutions(const std::string& text);

const char* version_string();

} // namespace rsw
