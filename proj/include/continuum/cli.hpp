#pragma once

// Command-line front end: validate, predict, heatmap, simulate, compare.
// run() takes its argument list and output streams explicitly so commands
// can be driven in-process by tests.

#include "continuum/analytic.hpp"
#include "continuum/config.hpp"
#include "continuum/report.hpp"
#include "continuum/simulator.hpp"
#include "continuum/topology.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace continuum::cli {

enum ExitCode : int {
  kOk = 0,
  kArgumentError = 2,
  kConfigError = 3,
  kIoError = 4,
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

/// Workload file: a [workload] section with tproc_<tier>, tpre, rate, size.
inline void apply_workload_file(std::string_view text, WorkloadProfile& w, bool& rate_set) {
  int n = 0;
  bool in_section = false;
  std::istringstream is{std::string(text)};
  for (std::string raw; std::getline(is, raw);) {
    ++n;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[workload]") {
      in_section = true;
      continue;
    }
    const auto eq = line.find('=');
    const auto where = "workload file line " + std::to_string(n);
    if (!in_section || eq == std::string_view::npos) throw ConfigError(where + ": expected key = value in [workload]");
    const auto key = detail::trim(line.substr(0, eq));
    const auto v = parse_double(detail::trim(line.substr(eq + 1)));
    if (!v) throw ConfigError(where + ": value is not a number");
    if (key.starts_with("tproc_")) {
      const auto tier = parse_tier(key.substr(6));
      if (!tier) throw ConfigError(where + ": unknown tier in '" + std::string(key) + "'");
      w.proc_time[*tier] = *v;
    } else if (key == "tpre") {
      w.pre_time = *v;
    } else if (key == "rate") {
      w.rate = *v;
      rate_set = true;
    } else if (key == "size") {
      w.element_size = *v;
    } else {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
  }
}

struct WorkloadFlags {
  std::vector<std::string> tproc;  // TIER=SECONDS
  std::optional<double> tpre;
  std::optional<double> rate;
  std::optional<double> size;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tproc", tproc, "Processing time per element on one full core, TIER=SECONDS (repeatable)");
    cmd->add_option("--tpre", tpre, "Preprocessing time per element on the endpoint (s)");
    cmd->add_option("--rate", rate, "Elements generated per second per endpoint (Hz)");
    cmd->add_option("--size", size, "Element size (Mbit)");
    cmd->add_option("--workload", file, "Workload file with a [workload] section");
  }

  /// Defaults, then the config's generation frequency, then the file, then flags.
  WorkloadProfile resolve(std::optional<double> config_rate) const {
    WorkloadProfile w = default_workload();
    if (config_rate) w.rate = *config_rate;
    bool file_rate = false;
    if (!file.empty()) apply_workload_file(read_file(file), w, file_rate);
    for (const auto& spec : tproc) {
      const auto eq = spec.find('=');
      const auto tier = parse_tier(std::string_view(spec).substr(0, eq == std::string::npos ? spec.size() : eq));
      const auto v = eq == std::string::npos ? std::nullopt : parse_double(std::string_view(spec).substr(eq + 1));
      if (!tier || !v) throw ArgumentError("--tproc expects TIER=SECONDS, got '" + spec + "'");
      w.proc_time[*tier] = *v;
    }
    if (tpre) w.pre_time = *tpre;
    if (rate) w.rate = *rate;
    if (size) w.element_size = *size;
    for (Tier t : kTiers) {
      if (w.proc_time[t] && !(*w.proc_time[t] >= 0.0)) throw ArgumentError("--tproc values must be >= 0");
    }
    if (!(w.pre_time >= 0.0) || !(w.rate >= 0.0) || !(w.element_size >= 0.0)) {
      throw ArgumentError("workload values must be >= 0");
    }
    return w;
  }
};

/// A preset name or a config file, parsed and validated.
struct Deployment {
  std::string label;
  DeploymentConfig config;
};

inline Deployment load_config_file(const std::string& path, std::ostream& err) {
  const auto parsed = parse_config(read_file(path));
  for (const auto& d : parsed.diagnostics) {
    if (d.severity == Severity::error) err << path << ": " << format(d) << '\n';
  }
  if (!parsed.ok()) throw ConfigError("'" + path + "' has configuration errors");
  return {path, *parsed.config};
}

inline Deployment resolve_deployment(const std::string& preset, const std::string& config_path, std::ostream& err) {
  if (!preset.empty() && !config_path.empty()) throw ArgumentError("give either --preset or --config, not both");
  if (!config_path.empty()) return load_config_file(config_path, err);
  if (preset.empty()) throw ArgumentError("a deployment is required: --preset NAME or --config FILE");
  if (!is_preset(preset)) throw ArgumentError("unknown preset '" + preset + "'");
  return {preset, load_preset(preset)};
}

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::string out;
};

inline RunManifest manifest_for(std::string command, const std::vector<Deployment>& ds, const WorkloadProfile& w,
                                std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  for (const auto& d : ds) {
    m.deployments.push_back(d.label);
    m.configs.push_back(render_config(d.config));
  }
  m.workload = w;
  m.seed = seed;
  m.timestamp = utc_timestamp();
  return m;
}

inline std::string percent_text(double v) {
  if (std::isinf(v)) return "unbounded";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v << '%';
  return os.str();
}

inline std::string verdict_line(const Verdict& v) {
  std::ostringstream os;
  os << (v.viable ? "viable" : "NOT viable") << ", load " << percent_text(v.load_percent);
  if (!v.failed_conditions.empty()) {
    os << ", failed:";
    for (auto c : v.failed_conditions) os << ' ' << to_string(c);
  }
  return os.str();
}

/// Emits `doc` to --out when given, otherwise to stdout.
inline void emit(const Globals& g, const std::string& content, std::ostream& out) {
  if (g.out.empty()) {
    out << content;
  } else {
    write_file(g.out, content);
  }
}

// Commands -------------------------------------------------------------------

inline int cmd_validate(const std::string& path, const Globals& g, std::ostream& out) {
  const auto parsed = parse_config(read_file(path));
  std::size_t errors = 0, warnings = 0;
  for (const auto& d : parsed.diagnostics) (d.severity == Severity::error ? errors : warnings)++;

  if (g.json) {
    json diags = json::array();
    for (const auto& d : parsed.diagnostics) {
      diags.push_back({{"severity", to_string(d.severity)}, {"key", d.key}, {"message", d.message}, {"line", d.line}});
    }
    std::vector<Deployment> ds;
    if (parsed.ok()) ds.push_back({path, *parsed.config});
    json doc = {{"manifest", json_of(manifest_for("validate", ds, default_workload(), g.seed))},
                {"valid", parsed.ok()},
                {"errors", errors},
                {"warnings", warnings},
                {"diagnostics", diags}};
    emit(g, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    for (const auto& d : parsed.diagnostics) os << path << ": " << format(d) << '\n';
    os << path << ": " << errors << " error(s), " << warnings << " warning(s)\n";
    emit(g, os.str(), out);
  }
  return parsed.ok() ? kOk : kConfigError;
}

inline int cmd_predict(const Deployment& dep, const WorkloadProfile& w, const PlacementPolicy& policy,
                       const Globals& g, std::ostream& out) {
  const Topology topo = build_topology(dep.config);
  const Device& endpoint = topo.device(topo.sources().front());
  const Device& worker = topo.device(topo.workers().front());
  const Verdict local = local_viability(w, endpoint);
  const Verdict offload = offload_viability(w, endpoint, worker, topo.endpoints_per_worker, *topo.access_link);
  const std::array<Topology, 1> one{topo};
  const Assessment assessment = assess(w, family_of(one), policy);

  if (g.json) {
    json doc = {{"manifest", json_of(manifest_for("predict", {dep}, w, g.seed))},
                {"topology", json_of(topo)},
                {"local", json_of(local)},
                {"offload",
                 {{"target_tier", to_string(topo.worker_tier)},
                  {"endpoints_per_worker", topo.endpoints_per_worker},
                  {"verdict", json_of(offload)}}},
                {"assessment", json_of(assessment, policy)}};
    emit(g, doc.dump(2) + "\n", out);
    return kOk;
  }
  std::ostringstream os;
  os << "deployment: " << dep.label << " (workers on " << to_string(topo.worker_tier)
     << ", E = " << topo.endpoints_per_worker << ")\n";
  os << "workload: R = " << shortest(w.rate) << " Hz, D = " << shortest(w.data_rate()) << " Mbit/s\n";
  os << "local (endpoint, " << endpoint.cores << " x " << shortest(endpoint.quota) << "): " << verdict_line(local)
     << '\n';
  os << "offload (" << to_string(topo.worker_tier) << ", " << worker.cores << " x " << shortest(worker.quota)
     << "): " << verdict_line(offload) << '\n';
  for (const auto& c : offload.checks) {
    os << "  " << std::left << std::setw(20) << to_string(c.condition) << shortest(c.demand) << " vs "
       << shortest(c.capacity) << " (" << percent_text(c.ratio_percent) << ")" << (c.satisfied ? "" : "  FAIL")
       << '\n';
  }
  os << "placement (" << policy.str() << "): " << to_string(assessment.placement) << '\n';
  emit(g, os.str(), out);
  return kOk;
}

struct HeatmapOptions {
  double rmax = 20.0;
  double tmax = 0.2;
  std::size_t resolution = 41;
  std::string format;  // csv | json; default from --json or the --out extension
};

/// Marker A is the base workload processed locally; marker B the same
/// workload offloaded to the first offload placement the policy prefers.
inline std::vector<HeatmapMarker> example_markers(const WorkloadProfile& w, const TopologyFamily& fam,
                                                  const PlacementPolicy& policy) {
  const double tproc = w.proc_time_on(Tier::endpoint);
  const Assessment a = assess_point(w.rate, tproc, w, fam, policy);
  std::vector<HeatmapMarker> out{{"A", w.rate, tproc, a.placement, Placement::endpoint, a.local}};
  for (Placement p : policy.order()) {
    if (p != Placement::endpoint && a.offload(p)) {
      out.push_back({"B", w.rate, tproc, a.placement, p, *a.offload(p)});
      break;
    }
  }
  return out;
}

inline int cmd_heatmap(const std::vector<Deployment>& deps, const WorkloadProfile& w, const PlacementPolicy& policy,
                       const HeatmapOptions& opt, const Globals& g, std::ostream& out) {
  HeatmapSpec spec;
  spec.rate_max = opt.rmax;
  spec.tproc_max = opt.tmax;
  spec.rate_samples = spec.tproc_samples = opt.resolution;
  if (!(opt.rmax > 0.0) || !(opt.tmax > 0.0)) throw ArgumentError("--rmax and --tmax must be > 0");
  if (opt.resolution < 2) throw ArgumentError("--resolution must be >= 2");

  std::vector<Topology> topos;
  for (const auto& d : deps) topos.push_back(build_topology(d.config));
  const TopologyFamily fam = topos.empty() ? default_family() : family_of(topos);
  const HeatmapGrid grid = heatmap(spec, w, fam, policy);
  const auto markers = example_markers(w, fam, policy);

  std::string format = opt.format;
  if (format.empty()) format = (g.json || g.out.ends_with(".json")) ? "json" : "csv";
  if (format == "json") {
    json doc = heatmap_json(grid, markers);
    const std::vector<Deployment> resolved =
        deps.empty() ? std::vector<Deployment>{{"edge-small", load_preset("edge-small")}, {"cloud", load_preset("cloud")}}
                     : deps;
    doc["manifest"] = json_of(manifest_for("heatmap", resolved, w, g.seed));
    doc["policy"] = policy.str();
    emit(g, doc.dump(2) + "\n", out);
  } else if (format == "csv") {
    emit(g, heatmap_csv(grid, markers), out);
  } else {
    throw ArgumentError("--format must be csv or json");
  }
  return kOk;
}

struct SimOptions {
  double duration = 60.0;
  std::optional<double> warmup;
  std::optional<std::uint64_t> max_elements;
  bool local = false;
  std::string trace;
};

inline SimParams sim_params(const SimOptions& o, std::uint64_t seed) {
  SimParams p;
  p.duration = o.duration;
  p.warmup = o.warmup;
  p.seed = seed;
  p.max_elements = o.max_elements;
  try {
    p.check();
  } catch (const std::invalid_argument& e) {
    throw ArgumentError(e.what());
  }
  return p;
}

inline int cmd_simulate(const Deployment& dep, const WorkloadProfile& w, const SimOptions& opt, const Globals& g,
                        std::ostream& out) {
  const SimParams params = sim_params(opt, g.seed);
  const Topology topo = opt.local ? build_local_topology(dep.config) : build_topology(dep.config);
  const SimReport report = simulate(topo, w, params);

  if (!opt.trace.empty()) write_file(opt.trace, trace_csv(report, topo));
  json doc = json_of(report, topo);
  doc["manifest"] = json_of(manifest_for("simulate", {dep}, w, g.seed));
  doc["deployment"] = dep.label;
  doc["local_only"] = opt.local;

  if (!g.out.empty()) write_file(g.out, doc.dump(2) + "\n");
  if (g.json) {
    out << doc.dump(2) << '\n';
    return kOk;
  }
  std::ostringstream os;
  os << "deployment: " << dep.label << (opt.local ? " (local processing)" : "") << ", seed " << g.seed << ", "
     << shortest(params.duration) << " s (warmup " << shortest(params.resolved_warmup()) << " s)\n";
  os << "measured elements: " << report.elements.size() << ", throughput " << shortest(report.throughput)
     << " /s\n";
  if (!report.elements.empty()) {
    const auto b = latency_breakdown(report);
    os << std::fixed << std::setprecision(2);
    os << "end-to-end: " << report.mean_latency * 1e3 << " ms (sd " << report.sd_latency * 1e3 << ")\n";
    os << "  communication " << b.communication_mean() * 1e3 << " ms, compute " << b.compute_mean() * 1e3
       << " ms, queueing " << b.queueing_mean() * 1e3 << " ms\n";
  }
  double max_load = 0.0;
  for (double l : measured_load(report)) max_load = std::max(max_load, l);
  os << "max worker load: " << percent_text(max_load) << ", backlog " << report.backlog_at_warmup << " -> "
     << report.backlog_at_end << '\n';
  out << os.str();
  return kOk;
}

struct CompareRow {
  std::string preset;
  std::vector<SimReport> runs;
  std::vector<LatencyBreakdown> breakdowns;
  double analytic_load = 0.0;
};

inline std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {m, 0.0};
  double sq = 0.0;
  for (double x : xs) sq += (x - m) * (x - m);
  return {m, std::sqrt(sq / static_cast<double>(xs.size() - 1))};
}

/// Runs `repeats` seeded simulations per preset; seeds are base + index.
inline std::vector<CompareRow> run_comparison(std::vector<std::string> presets, const WorkloadProfile& w,
                                              const SimOptions& opt, std::uint64_t base_seed, std::size_t repeats) {
  std::sort(presets.begin(), presets.end(),
            [](const auto& a, const auto& b) { return preset_rank(a) < preset_rank(b); });
  presets.erase(std::unique(presets.begin(), presets.end()), presets.end());

  std::vector<CompareRow> rows;
  for (const auto& name : presets) {
    CompareRow row;
    row.preset = name;
    const Topology topo = build_topology(load_preset(name));
    const Device& endpoint = topo.device(topo.sources().front());
    const Device& worker = topo.device(topo.workers().front());
    row.analytic_load =
        offload_viability(w, endpoint, worker, topo.endpoints_per_worker, *topo.access_link).load_percent;

    std::vector<std::future<SimReport>> jobs;
    for (std::size_t i = 0; i < repeats; ++i) {
      const SimParams p = sim_params(opt, base_seed + i);
      jobs.push_back(std::async(std::launch::async, [topo, w, p] { return simulate(topo, w, p); }));
    }
    for (auto& j : jobs) {
      row.runs.push_back(j.get());
      if (row.runs.back().elements.empty()) throw ArgumentError("no element completed after warmup; lengthen --duration");
      row.breakdowns.push_back(latency_breakdown(row.runs.back()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json json_of(const CompareRow& r) {
  auto stat = [&](auto get) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < r.runs.size(); ++i) xs.push_back(get(i));
    const auto [m, sd] = mean_sd(xs);
    return json{{"mean", m}, {"sd", sd}};
  };
  return {{"preset", r.preset},
          {"repeats", r.runs.size()},
          {"total_ms", stat([&](std::size_t i) { return r.breakdowns[i].end_to_end_mean() * 1e3; })},
          {"communication_ms", stat([&](std::size_t i) { return r.breakdowns[i].communication_mean() * 1e3; })},
          {"compute_ms", stat([&](std::size_t i) { return r.breakdowns[i].compute_mean() * 1e3; })},
          {"queueing_ms", stat([&](std::size_t i) { return r.breakdowns[i].queueing_mean() * 1e3; })},
          {"measured_load_percent", stat([&](std::size_t i) {
             const auto loads = measured_load(r.runs[i]);
             return *std::max_element(loads.begin(), loads.end());
           })},
          {"analytic_load_percent", finite_or_null(r.analytic_load)},
          {"seeds", [&] {
             json s = json::array();
             for (const auto& run : r.runs) s.push_back(run.seed);
             return s;
           }()}};
}

inline int cmd_compare(const std::vector<std::string>& presets, const WorkloadProfile& w, const SimOptions& opt,
                       std::size_t repeats, const Globals& g, std::ostream& out) {
  if (presets.size() < 2) throw ArgumentError("compare needs at least two --preset values");
  for (const auto& p : presets) {
    if (!is_preset(p)) throw ArgumentError("unknown preset '" + p + "'");
  }
  if (repeats < 1) throw ArgumentError("--repeats must be >= 1");
  const auto rows = run_comparison(presets, w, opt, g.seed, repeats);

  json table = json::array();
  std::vector<Deployment> deps;
  for (const auto& r : rows) {
    table.push_back(json_of(r));
    deps.push_back({r.preset, load_preset(r.preset)});
  }
  if (g.json || !g.out.empty()) {
    json doc = {{"manifest", json_of(manifest_for("compare", deps, w, g.seed))}, {"rows", table}};
    if (!g.out.empty()) write_file(g.out, doc.dump(2) + "\n");
    if (g.json) {
      out << doc.dump(2) << '\n';
      return kOk;
    }
  }
  std::ostringstream os;
  os << std::left << std::setw(12) << "deployment" << std::right << std::setw(20) << "total ms" << std::setw(20)
     << "communication ms" << std::setw(20) << "compute ms" << std::setw(20) << "queueing ms" << std::setw(12)
     << "analytic %" << '\n';
  os << std::fixed << std::setprecision(1);
  for (const auto& row : table) {
    auto cell = [&](const char* k) {
      std::ostringstream c;
      c << std::fixed << std::setprecision(1) << row[k]["mean"].get<double>() << " +- "
        << row[k]["sd"].get<double>();
      return c.str();
    };
    os << std::left << std::setw(12) << row["preset"].get<std::string>() << std::right << std::setw(20)
       << cell("total_ms") << std::setw(20) << cell("communication_ms") << std::setw(20) << cell("compute_ms")
       << std::setw(20) << cell("queueing_ms") << std::setw(12)
       << (row["analytic_load_percent"].is_null() ? std::string("inf")
                                                  : shortest(std::round(row["analytic_load_percent"].get<double>() * 100) / 100))
       << '\n';
  }
  out << os.str();
  return kOk;
}

// Entry point ----------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deployment planner for the cloud-edge-endpoint continuum", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--out", g.out, "Output file");
  app.fallthrough();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration file");
  validate_cmd->add_option("config", validate_path, "Configuration file")->required();
  validate_cmd->fallthrough();

  std::string preset, config_path, policy_text = "endpoint,edge,cloud";
  WorkloadFlags wf;

  auto* predict_cmd = app.add_subcommand("predict", "Analytic viability of local and offloaded processing");
  predict_cmd->add_option("--preset", preset, "Reference deployment");
  predict_cmd->add_option("--config", config_path, "Configuration file");
  predict_cmd->add_option("--policy", policy_text, "Placement preference, e.g. endpoint,edge,cloud");
  wf.attach(predict_cmd);
  predict_cmd->fallthrough();

  std::vector<std::string> presets, configs;
  HeatmapOptions hm;
  auto* heatmap_cmd = app.add_subcommand("heatmap", "Placement classes over generation rate x processing time");
  heatmap_cmd->add_option("--preset", presets, "Deployment contributing an offload target (repeatable)");
  heatmap_cmd->add_option("--config", configs, "Configuration file contributing an offload target (repeatable)");
  heatmap_cmd->add_option("--policy", policy_text, "Placement preference, e.g. endpoint,edge,cloud");
  heatmap_cmd->add_option("--rmax", hm.rmax, "Largest generation rate (Hz)");
  heatmap_cmd->add_option("--tmax", hm.tmax, "Largest endpoint processing time (s)");
  heatmap_cmd->add_option("--resolution", hm.resolution, "Samples per axis");
  heatmap_cmd->add_option("--format", hm.format, "csv or json");
  wf.attach(heatmap_cmd);
  heatmap_cmd->fallthrough();

  SimOptions so;
  double warmup = 0.0;
  std::uint64_t max_elements = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Discrete-event simulation of one deployment");
  simulate_cmd->add_option("--preset", preset, "Reference deployment");
  simulate_cmd->add_option("--config", config_path, "Configuration file");
  simulate_cmd->add_option("--duration", so.duration, "Simulated seconds");
  auto* sim_warmup = simulate_cmd->add_option("--warmup", warmup, "Seconds excluded from metrics (default 10% of duration)");
  auto* sim_cap = simulate_cmd->add_option("--max-elements", max_elements, "Stop generating after this many elements");
  simulate_cmd->add_flag("--local", so.local, "Every endpoint processes its own data");
  simulate_cmd->add_option("--trace", so.trace, "Write per-element CSV here");
  wf.attach(simulate_cmd);
  simulate_cmd->fallthrough();

  std::size_t repeats = 3;
  auto* compare_cmd = app.add_subcommand("compare", "Simulated latency breakdown across reference deployments");
  compare_cmd->add_option("--preset", presets, "Reference deployment (repeat, at least two)");
  compare_cmd->add_option("--repeats", repeats, "Seeded repetitions per deployment");
  compare_cmd->add_option("--duration", so.duration, "Simulated seconds per run");
  auto* cmp_warmup = compare_cmd->add_option("--warmup", warmup, "Seconds excluded from metrics (default 10% of duration)");
  wf.attach(compare_cmd);
  compare_cmd->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kArgumentError;
  }

  try {
    if (sim_warmup->count() || cmp_warmup->count()) so.warmup = warmup;
    if (sim_cap->count()) so.max_elements = max_elements;
    const PlacementPolicy policy = [&] {
      try {
        return PlacementPolicy::parse(policy_text);
      } catch (const std::invalid_argument& e) {
        throw ArgumentError(e.what());
      }
    }();

    if (validate_cmd->parsed()) return cmd_validate(validate_path, g, out);

    if (predict_cmd->parsed() || simulate_cmd->parsed()) {
      const Deployment dep = resolve_deployment(preset, config_path, err);
      const WorkloadProfile w = wf.resolve(dep.config.benchmark.data_generation_frequency);
      if (predict_cmd->parsed()) return cmd_predict(dep, w, policy, g, out);
      return cmd_simulate(dep, w, so, g, out);
    }
    if (heatmap_cmd->parsed()) {
      std::vector<Deployment> deps;
      for (const auto& p : presets) deps.push_back(resolve_deployment(p, "", err));
      for (const auto& c : configs) deps.push_back(load_config_file(c, err));
      const WorkloadProfile w = wf.resolve(std::nullopt);
      return cmd_heatmap(deps, w, policy, hm, g, out);
    }
    if (compare_cmd->parsed()) {
      const WorkloadProfile w = wf.resolve(std::nullopt);
      return cmd_compare(presets, w, so, repeats, g, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const TopologyError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const WorkloadError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  }
  return kArgumentError;
}

}  // namespace continuum::cli
