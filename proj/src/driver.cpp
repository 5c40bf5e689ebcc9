#include "rsw/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "rsw/errors.hpp"
#include "rsw/io.hpp"

#ifndef RSW_VERSION
#define RSW_VERSION "unknown"
#endif

namespace rsw {

using nlohmann::json;

const char* version_string() { return RSW_VERSION; }

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

template <class T>
void maybe(const json& j, const char* key, std::optional<T>& dst, const std::string& where) {
  if (j.contains(key)) dst = get_as<T>(j, key, where);
}

} // namespace

RunConfig config_from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  const json& j = root.contains("config") && root.at("config").is_object() ? root.at("config") : root;
  if (&j == &root)
    reject_unknown(j, {"case", "resolution", "physics", "bc", "t_final", "snapshots", "output"}, "config");

  RunConfig cfg;
  if (!j.contains("case")) throw ConfigError("config has no 'case'");
  cfg.case_name = get_as<std::string>(j, "case", "config");
  if (j.contains("resolution")) {
    const json& r = j.at("resolution");
    reject_unknown(r, {"nx", "ny"}, "resolution");
    maybe(r, "nx", cfg.overrides.nx, "resolution");
    maybe(r, "ny", cfg.overrides.ny, "resolution");
  }
  if (j.contains("physics")) {
    const json& p = j.at("physics");
    reject_unknown(p, {"g", "omega", "eta", "zeta", "alpha", "cfl_safety"}, "physics");
    maybe(p, "g", cfg.overrides.g, "physics");
    maybe(p, "omega", cfg.overrides.omega, "physics");
    maybe(p, "eta", cfg.overrides.eta, "physics");
    maybe(p, "zeta", cfg.overrides.zeta, "physics");
    maybe(p, "alpha", cfg.overrides.alpha, "physics");
    maybe(p, "cfl_safety", cfg.overrides.cfl_safety, "physics");
  }
  if (j.contains("bc")) cfg.overrides.bc = parse_boundary_mode(get_as<std::string>(j, "bc", "config"));
  maybe(j, "t_final", cfg.t_final, "config");
  if (j.contains("snapshots")) {
    const json& s = j.at("snapshots");
    reject_unknown(s, {"times", "every"}, "snapshots");
    if (s.contains("times")) cfg.snapshot_times = get_as<std::vector<double>>(s, "times", "snapshots");
    if (s.contains("every")) cfg.snapshot_every = get_as<int>(s, "every", "snapshots");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, {"dir", "formats"}, "output");
    if (o.contains("dir")) cfg.out_dir = get_as<std::string>(o, "dir", "output");
    if (o.contains("formats")) {
      cfg.csv = cfg.vtk = false;
      for (const auto& f : get_as<std::vector<std::string>>(o, "formats", "output")) {
        if (f == "csv")
          cfg.csv = true;
        else if (f == "vtk")
          cfg.vtk = true;
        else
          throw ConfigError("unknown output format '" + f + "'");
      }
    }
  }
  if (cfg.snapshot_every < 0) throw ConfigError("snapshots.every must be non-negative");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["case"] = cfg.case_name;
  const CaseOverrides& o = cfg.overrides;
  json res = json::object();
  if (o.nx) res["nx"] = *o.nx;
  if (o.ny) res["ny"] = *o.ny;
  if (!res.empty()) j["resolution"] = res;
  json phys = json::object();
  if (o.g) phys["g"] = *o.g;
  if (o.omega) phys["omega"] = *o.omega;
  if (o.eta) phys["eta"] = *o.eta;
  if (o.zeta) phys["zeta"] = *o.zeta;
  if (o.alpha) phys["alpha"] = *o.alpha;
  if (o.cfl_safety) phys["cfl_safety"] = *o.cfl_safety;
  if (!phys.empty()) j["physics"] = phys;
  if (o.bc) j["bc"] = std::string(to_string(*o.bc));
  if (cfg.t_final) j["t_final"] = *cfg.t_final;
  if (!cfg.snapshot_times.empty() || cfg.snapshot_every > 0)
    j["snapshots"] = {{"times", cfg.snapshot_times}, {"every", cfg.snapshot_every}};
  json formats = json::array();
  if (cfg.csv) formats.push_back("csv");
  if (cfg.vtk) formats.push_back("vtk");
  j["output"] = {{"dir", cfg.out_dir.string()}, {"formats", formats}};
  return j;
}

std::filesystem::path resolve_output_dir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.out_dir.empty() ? std::filesystem::path("runs") / cfg.case_name : cfg.out_dir;
  if (const char* root = std::getenv("RSW_OUTPUT_ROOT"); root != nullptr && *root != '\0' && dir.is_relative())
    dir = std::filesystem::path(root) / dir;
  return dir;
}

namespace {

std::string snapshot_stem(long index, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_%05ld_t%.6g", index, t);
  return buf;
}

} // namespace

RunResult run_case(const RunConfig& cfg, bool write_outputs, const RunHooks& hooks, StepperOptions opt) {
  const auto wall0 = std::chrono::steady_clock::now();
  Setup setup = build_case(cfg.case_name, cfg.overrides);
  const double T = cfg.t_final.value_or(setup.t_final);
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("t_final must be finite and non-negative");
  std::vector<double> times = cfg.snapshot_times;
  for (double t : times)
    if (!(t >= 0.0 && t <= T)) throw ConfigError("snapshot time outside [0, t_final]");
  std::sort(times.begin(), times.end());

  const Problem& prob = setup.problem;
  const std::filesystem::path dir = resolve_output_dir(cfg);
  long snap_index = 0;
  auto write_snap = [&](const State& s) {
    if (!write_outputs) return;
    const std::string stem = snapshot_stem(snap_index++, s.t);
    if (cfg.csv) write_snapshot_csv(dir / (stem + ".csv"), s, prob);
    if (cfg.vtk) write_snapshot_vtk(dir / (stem + ".vtk"), s, prob);
  };

  RunResult res{setup, setup.state, RunLedger{}, 0, 0.0};
  State& s = res.final_state;
  res.ledger.record_initial(s, prob.bath, prob.params.g);
  Stepper stepper(prob, opt);
  write_snap(s);

  std::size_t next_time = 0;
  while (next_time < times.size() && times[next_time] <= s.t) ++next_time;
  while (s.t < T) {
    const double target = next_time < times.size() ? std::min(T, times[next_time]) : T;
    const double dt_max = target - s.t;
    const State before = hooks.on_step ? s : State(prob.grid);
    const StepReport rep = stepper.step(s, dt_max);
    if (rep.retries == 0 && rep.dt == dt_max) s.t = target;
    ++res.steps;
    res.ledger.record_step(s, prob.bath, prob.params.g, rep);
    if (hooks.on_step) hooks.on_step(before, s, rep);

    bool snap = cfg.snapshot_every > 0 && res.steps % cfg.snapshot_every == 0;
    while (next_time < times.size() && times[next_time] <= s.t) {
      snap = true;
      ++next_time;
    }
    if (snap && s.t < T) write_snap(s);
  }
  if (T > 0.0) write_snap(s);

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  if (write_outputs) {
    std::filesystem::create_directories(dir);
    std::ofstream ledger(dir / "ledger.csv");
    res.ledger.write_csv(ledger);
    json manifest;
    manifest["config"] = config_to_json(cfg);
    manifest["version"] = version_string();
    manifest["wall_seconds"] = res.wall_seconds;
    manifest["steps"] = res.steps;
    manifest["final_time"] = s.t;
    manifest["params"] = {{"g", prob.params.g},         {"omega", prob.params.omega},
                          {"eta", prob.params.eta},     {"zeta", prob.params.zeta},
                          {"alpha", prob.params.alpha}, {"cfl_safety", prob.params.cfl_safety}};
    manifest["grid"] = {{"nx", prob.grid.nx()},
                        {"ny", prob.grid.ny()},
                        {"bc_x", std::string(to_string(prob.grid.bc_x()))},
                        {"bc_y", std::string(to_string(prob.grid.bc_y()))}};
    std::ofstream mf(dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
  }
  return res;
}

std::vector<int> parse_resolutions(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 3) throw std::invalid_argument(item);
      out.push_back(k);
    } catch (const std::exception&) {
      throw ConfigError("bad resolution '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty resolution list");
  return out;
}

namespace {

bool power_of_two(int r) { return r > 0 && (r & (r - 1)) == 0; }

void validate_ladder(const std::vector<int>& ks, int ref, std::size_t min_count) {
  if (ks.size() < min_count)
    throw ConfigError("need at least " + std::to_string(min_count) + " resolutions");
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] == ks[i - 1]) throw ConfigError("duplicate resolution " + std::to_string(ks[i]));
    if (ks[i] < ks[i - 1]) throw ConfigError("resolutions must be ascending");
  }
  for (int k : ks)
    if (ref % k != 0 || !power_of_two(ref / k))
      throw ConfigError("reference " + std::to_string(ref) + " is not a power-of-two multiple of " +
                        std::to_string(k));
}

RunConfig at_resolution(const RunConfig& base, int k, const std::string& sub) {
  RunConfig c = base;
  c.overrides.nx = k;
  if (!find_case(base.case_name).strip) c.overrides.ny = k;
  c.out_dir = (base.out_dir.empty() ? std::filesystem::path("runs") / base.case_name : base.out_dir) / sub;
  return c;
}

} // namespace

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::vector<int>& resolutions,
                                std::optional<int> ref_opt, bool write_outputs) {
  const int ref = ref_opt.value_or(2 * resolutions.back());
  validate_ladder(resolutions, ref, 1);
  const bool strip = find_case(cfg.case_name).strip;

  // Cases with a known solution are measured against it on each grid; the
  // reference run is only needed for the others.
  const bool has_exact = find_case(cfg.case_name).steady || static_cast<bool>(find_case(cfg.case_name).exact);
  std::optional<RunResult> rr;
  if (!has_exact) rr = run_case(at_resolution(cfg, ref, "ref" + std::to_string(ref)), write_outputs);
  std::vector<SweepRow> rows;
  for (int k : resolutions) {
    const RunResult r = run_case(at_resolution(cfg, k, "k" + std::to_string(k)), write_outputs);
    const State& a = r.final_state;
    State b(a.grid());
    if (has_exact) {
      b = *exact_state(r.setup, a.t);
    } else {
      const int fx = ref / k, fy = strip ? 1 : fx;
      b = State(restrict(rr->final_state.h, fx, fy), restrict(rr->final_state.u, fx, fy),
                restrict(rr->final_state.v, fx, fy), a.t);
    }
    SweepRow row;
    row.k = k;
    row.err_h = l2_error(a.h, b.h);
    row.err_u = l2_error(a.u, b.u);
    row.err_v = l2_error(a.v, b.v);
    row.eoc_h = row.eoc_u = row.eoc_v = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty()) {
      const SweepRow& p = rows.back();
      const double lr = std::log(static_cast<double>(k) / p.k);
      row.eoc_h = std::log(p.err_h / row.err_h) / lr;
      row.eoc_u = std::log(p.err_u / row.err_u) / lr;
      row.eoc_v = std::log(p.err_v / row.err_v) / lr;
    }
    rows.push_back(row);
  }
  if (write_outputs) {
    const std::filesystem::path dir = resolve_output_dir(cfg);
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "sweep.csv");
    write_sweep_csv(out, rows);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const bool with_eoc = rows.size() > 1;
  out << (with_eoc ? "k,err_h,eoc_h,err_u,eoc_u,err_v,eoc_v\n" : "k,err_h,err_u,err_v\n");
  char buf[512];
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const SweepRow& r = rows[n];
    if (!with_eoc) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.k, r.err_h, r.err_u, r.err_v);
    } else if (n == 0) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,,%.17g,,%.17g,\n", r.k, r.err_h, r.err_u, r.err_v);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.k, r.err_h, r.eoc_h, r.err_u,
                    r.eoc_u, r.err_v, r.eoc_v);
    }
    out << buf;
  }
}

std::vector<LadderRow> run_kconv(const RunConfig& cfg, const std::vector<int>& resolutions,
                                 std::optional<int> ref_opt, bool write_outputs) {
  const int ref = ref_opt.value_or(2 * resolutions.back());
  validate_ladder(resolutions, ref, 3);
  if (ref == resolutions.back()) throw ConfigError("reference resolution must exceed the finest run");

  std::vector<Snapshot> runs;
  std::optional<Grid> target;
  for (int k : resolutions) {
    const RunResult r = run_case(at_resolution(cfg, k, "k" + std::to_string(k)), write_outputs);
    if (!target) target = r.final_state.grid();
    runs.push_back(Snapshot::restricted(r.final_state, *target));
  }
  const RunResult rr = run_case(at_resolution(cfg, ref, "ref" + std::to_string(ref)), write_outputs);
  // Reference statistics are those of the whole sequence through the
  // reference run, so the reference first variance is not identically zero.
  SolutionEnsemble reference{runs};
  reference.members.push_back(Snapshot::restricted(rr.final_state, *target));
  std::vector<LadderRow> rows = error_ladder(runs, resolutions, reference);
  if (write_outputs) {
    const std::filesystem::path dir = resolve_output_dir(cfg);
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "kconv.csv");
    write_ladder_csv(out, rows);
  }
  return rows;
}

void write_ladder_csv(std::ostream& out, const std::vector<LadderRow>& rows) {
  out << "k,component,E1,E2,E3,E4\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g,%.17g\n", r.k, r.component.c_str(), r.e1, r.e2, r.e3,
                  r.e4);
    out << buf;
  }
}

} // namespace rsw
