#pragma once

// JSON and CSV views of topologies, verdicts, heatmaps and simulation
// reports. The JSON shapes are pinned by the files under schemas/.

#include "continuum/analytic.hpp"
#include "continuum/config.hpp"
#include "continuum/simulator.hpp"
#include "continuum/topology.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <sstream>
#include <string>
#include <vector>

namespace continuum {

using nlohmann::json;

inline constexpr std::string_view kToolName = "continuum";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Provenance embedded in every JSON output. Everything except `timestamp`
/// is enough to reproduce the numbers.
struct RunManifest {
  std::string command;
  std::vector<std::string> deployments;  // preset names or config paths
  std::vector<std::string> configs;      // rendered, one per deployment
  WorkloadProfile workload;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601 UTC
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json json_of(const WorkloadProfile& w) {
  json tproc = json::object();
  for (Tier t : kTiers) {
    if (w.proc_time[t]) tproc[std::string(to_string(t))] = *w.proc_time[t];
  }
  return {{"tproc_s", tproc},
          {"tpre_s", w.pre_time},
          {"rate_hz", w.rate},
          {"element_size_mbit", w.element_size},
          {"data_rate_mbps", w.data_rate()}};
}

inline json json_of(const RunManifest& m) {
  return {{"tool", kToolName},     {"version", kToolVersion},   {"command", m.command},
          {"deployments", m.deployments}, {"configs", m.configs}, {"workload", json_of(m.workload)},
          {"seed", m.seed},        {"timestamp", m.timestamp}};
}

inline json json_of(const Device& d) {
  return {{"id", d.name()},
          {"tier", to_string(d.tier)},
          {"role", to_string(d.role)},
          {"cores", d.cores},
          {"quota", d.quota},
          {"capacity", capacity_of(d)}};
}

inline json json_of(const Link& l) {
  return {{"from", to_string(l.from)},
          {"to", to_string(l.to)},
          {"latency_avg_ms", l.latency_avg_ms},
          {"latency_sd_ms", l.latency_sd_ms},
          {"bandwidth_mbps", l.bandwidth_mbps}};
}

inline json json_of(const Topology& t) {
  json devices = json::array();
  for (const auto& d : t.devices) devices.push_back(json_of(d));
  json links = json::array();
  for (const auto& l : t.links) links.push_back(json_of(l));
  json assignment = json::object();
  for (const auto& [w, eps] : t.assignment) {
    json ids = json::array();
    for (auto e : eps) ids.push_back(t.device(e).name());
    assignment[t.device(w).name()] = ids;
  }
  return {{"worker_tier", to_string(t.worker_tier)},
          {"endpoints_per_worker", t.endpoints_per_worker},
          {"local_only", t.local_only()},
          {"access_link", t.access_link ? json_of(*t.access_link) : json(nullptr)},
          {"devices", devices},
          {"links", links},
          {"assignment", assignment}};
}

/// Infinite ratios become null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json json_of(const Verdict& v) {
  json failed = json::array();
  for (auto c : v.failed_conditions) failed.push_back(to_string(c));
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"condition", to_string(c.condition)},
                      {"demand", c.demand},
                      {"capacity", c.capacity},
                      {"ratio_percent", finite_or_null(c.ratio_percent)},
                      {"satisfied", c.satisfied}});
  }
  return {{"viable", v.viable},
          {"failed_conditions", failed},
          {"load_percent", finite_or_null(v.load_percent)},
          {"load_unbounded", v.load_unbounded()},
          {"required_bandwidth_mbps", v.required_bandwidth},
          {"checks", checks}};
}

inline json json_of(const Assessment& a, const PlacementPolicy& policy) {
  return {{"policy", policy.str()},
          {"placement", to_string(a.placement)},
          {"endpoint", json_of(a.local)},
          {"edge", a.edge ? json_of(*a.edge) : json(nullptr)},
          {"cloud", a.cloud ? json_of(*a.cloud) : json(nullptr)}};
}

// Heatmap --------------------------------------------------------------------

/// A labelled coordinate and the verdict of the placement it illustrates.
struct HeatmapMarker {
  std::string label;
  double rate = 0.0;
  double tproc = 0.0;
  Placement cell_class = Placement::not_viable;
  Placement checked = Placement::endpoint;
  Verdict verdict;
};

/// Header row: reference-tier processing time label, then rate samples.
/// One row per processing-time sample. Marker rows follow a blank line.
inline std::string heatmap_csv(const HeatmapGrid& g, const std::vector<HeatmapMarker>& markers) {
  std::ostringstream os;
  os << "tproc_" << to_string(g.reference_tier) << "_s\\rate_hz";
  for (double r : g.rates) os << ',' << shortest(r);
  os << '\n';
  for (std::size_t i = 0; i < g.tprocs.size(); ++i) {
    os << shortest(g.tprocs[i]);
    for (std::size_t j = 0; j < g.rates.size(); ++j) os << ',' << to_string(g.at(i, j));
    os << '\n';
  }
  if (!markers.empty()) {
    os << "\nmarker,label,rate_hz,tproc_s,class,checked_placement,viable,load_percent\n";
    for (const auto& m : markers) {
      os << "marker," << m.label << ',' << shortest(m.rate) << ',' << shortest(m.tproc) << ','
         << to_string(m.cell_class) << ',' << to_string(m.checked) << ',' << (m.verdict.viable ? "true" : "false")
         << ',' << (m.verdict.load_unbounded() ? std::string("inf") : shortest(m.verdict.load_percent)) << '\n';
    }
  }
  return os.str();
}

inline json heatmap_json(const HeatmapGrid& g, const std::vector<HeatmapMarker>& markers) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.tprocs.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.rates.size(); ++j) row.push_back(to_string(g.at(i, j)));
    rows.push_back(row);
  }
  json ms = json::array();
  for (const auto& m : markers) {
    ms.push_back({{"label", m.label},
                  {"rate_hz", m.rate},
                  {"tproc_s", m.tproc},
                  {"class", to_string(m.cell_class)},
                  {"checked_placement", to_string(m.checked)},
                  {"verdict", json_of(m.verdict)}});
  }
  return {{"reference_tier", to_string(g.reference_tier)},
          {"rates_hz", g.rates},
          {"tprocs_s", g.tprocs},
          {"cells", rows},
          {"markers", ms}};
}

// Simulation -----------------------------------------------------------------

inline json json_of(const LatencyBreakdown& b) {
  return {{"count", b.count},
          {"communication_s", b.communication_mean()},
          {"compute_s", b.compute_mean()},
          {"queueing_s", b.queueing_mean()},
          {"end_to_end_s", b.end_to_end_mean()}};
}

inline json json_of(const StageCounts& c) {
  return {{"generated", c.generated},     {"awaiting_preprocess", c.awaiting_preprocess},
          {"in_transit", c.in_transit},   {"queued", c.queued},
          {"in_service", c.in_service},   {"completed", c.completed}};
}

inline json json_of(const ElementRecord& e, const Topology& t) {
  return {{"id", e.id},
          {"endpoint", t.device(e.endpoint).name()},
          {"worker", t.device(e.worker).name()},
          {"generated_ns", e.generated.count()},
          {"preprocess_ns", e.preprocess.count()},
          {"transfer_ns", e.transfer.count()},
          {"queue_wait_ns", e.queue_wait.count()},
          {"service_ns", e.service.count()},
          {"completed_ns", e.completed.count()}};
}

inline json json_of(const SimReport& r, const Topology& t, bool with_trace = false) {
  json workers = json::array();
  for (const auto& w : r.workers) {
    workers.push_back({{"worker", t.device(w.worker).name()},
                       {"arrivals", w.arrivals},
                       {"completions", w.completions},
                       {"measured_load_percent", w.measured_load_percent},
                       {"busy_fraction", w.busy_fraction}});
  }
  json out = {{"duration_s", r.duration},
              {"warmup_s", r.warmup},
              {"seed", r.seed},
              {"measured_elements", r.elements.size()},
              {"latency", {{"mean_s", r.mean_latency}, {"sd_s", r.sd_latency}}},
              {"breakdown", r.elements.empty() ? json(nullptr) : json_of(latency_breakdown(r))},
              {"throughput_per_s", r.throughput},
              {"workers", workers},
              {"counts", json_of(r.final_counts)},
              {"backlog",
               {{"at_warmup", r.backlog_at_warmup},
                {"at_end", r.backlog_at_end},
                {"growth_per_s", r.backlog_growth_rate()}}}};
  if (with_trace) {
    json trace = json::array();
    for (const auto& e : r.elements) trace.push_back(json_of(e, t));
    out["trace"] = trace;
  }
  return out;
}

/// One row per measured element, times in integer nanoseconds.
inline std::string trace_csv(const SimReport& r, const Topology& t) {
  std::ostringstream os;
  os << "id,endpoint,worker,generated_ns,preprocess_ns,transfer_ns,queue_wait_ns,service_ns,completed_ns,"
        "end_to_end_ns\n";
  for (const auto& e : r.elements) {
    os << e.id << ',' << t.device(e.endpoint).name() << ',' << t.device(e.worker).name() << ','
       << e.generated.count() << ',' << e.preprocess.count() << ',' << e.transfer.count() << ','
       << e.queue_wait.count() << ',' << e.service.count() << ',' << e.completed.count() << ','
       << e.end_to_end().count() << '\n';
  }
  return os.str();
}

}  // namespace continuum
