#pragma once

#include "continuum/config.hpp"
#include "continuum/error.hpp"
#include "continuum/tier.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace continuum {

enum class Role { worker, controller, source };

constexpr std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::worker: return "worker";
    case Role::controller: return "controller";
    case Role::source: return "source";
  }
  return "?";
}

struct Device {
  std::size_t id = 0;
  Tier tier = Tier::endpoint;
  std::uint32_t cores = 0;
  double quota = 0.0;  // fraction of one core, (0, 1]
  Role role = Role::source;

  std::string name() const { return std::string(to_string(tier)) + "-" + std::to_string(id); }
  bool operator==(const Device&) const = default;
};

struct Link {
  Tier from = Tier::endpoint;
  Tier to = Tier::endpoint;
  double latency_avg_ms = 0.0;
  double latency_sd_ms = 0.0;
  double bandwidth_mbps = 0.0;

  bool operator==(const Link&) const = default;
};

/// Compute capacity in core-seconds per wall-second.
inline double capacity_of(const Device& d) noexcept { return static_cast<double>(d.cores) * d.quota; }

struct Topology {
  std::vector<Device> devices;  // index == Device::id
  std::vector<Link> links;
  std::map<std::size_t, std::vector<std::size_t>> assignment;  // worker id -> endpoint ids
  std::uint32_t endpoints_per_worker = 0;
  Tier worker_tier = Tier::endpoint;
  // Endpoint-to-worker link; empty when every endpoint processes its own data.
  std::optional<Link> access_link;

  bool local_only() const noexcept { return !access_link.has_value(); }

  const Device& device(std::size_t id) const { return devices.at(id); }

  std::vector<std::size_t> ids_with(Role r) const {
    std::vector<std::size_t> out;
    for (const auto& d : devices) {
      if (d.role == r) out.push_back(d.id);
    }
    return out;
  }

  std::vector<std::size_t> workers() const { return ids_with(Role::worker); }

  /// Endpoints that generate data, in id order.
  std::vector<std::size_t> sources() const {
    std::vector<std::size_t> out;
    for (const auto& [w, eps] : assignment) out.insert(out.end(), eps.begin(), eps.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Topology&) const = default;
};

/// Per-element processing demand of an application.
struct WorkloadProfile {
  PerTier<std::optional<double>> proc_time;  // s per element on one full core
  double pre_time = 0.0;                     // s per element on the endpoint
  double rate = 0.0;                         // elements per second per endpoint
  double element_size = 0.0;                 // Mbit per element

  /// Mbit/s generated by one endpoint.
  double data_rate() const noexcept { return rate * element_size; }

  double proc_time_on(Tier t) const {
    const auto& v = proc_time[t];
    if (!v) throw WorkloadError("no processing time given for the " + std::string(to_string(t)) + " tier");
    return *v;
  }

  bool operator==(const WorkloadProfile&) const = default;
};

/// Image-classification profile behind the worked examples: 0.11 s per
/// image on an endpoint core, 0.14 s on edge cores (cloud assumed equal),
/// 1 ms preprocessing, 0.54 Mbit per image (2.7 Mbit/s at 5 Hz).
inline WorkloadProfile default_workload() {
  WorkloadProfile w;
  w.proc_time.endpoint = 0.11;
  w.proc_time.edge = 0.14;
  w.proc_time.cloud = 0.14;
  w.pre_time = 0.001;
  w.rate = 5.0;
  w.element_size = 0.54;
  return w;
}

/// Core-seconds per second one worker must supply for E endpoints.
inline double demand_on_worker(const WorkloadProfile& w, Tier worker_tier, std::uint32_t endpoints) {
  return w.proc_time_on(worker_tier) * w.rate * static_cast<double>(endpoints);
}

namespace detail {

inline void require_valid(const DeploymentConfig& c) {
  for (const auto& d : validate(c)) {
    if (d.severity == Severity::error) throw ConfigError("invalid configuration: " + format(d));
  }
}

inline std::vector<Link> links_of(const DeploymentConfig& c) {
  std::vector<Link> out;
  for (const auto& [pair, lat] : c.latency) {
    const auto bw = c.throughput.find(pair);
    if (bw == c.throughput.end()) continue;
    out.push_back({pair.first(), pair.second(), lat.average_ms, lat.variability_ms, bw->second});
  }
  return out;
}

inline Link access_link_of(const DeploymentConfig& c, Tier workers) {
  const TierPair p{Tier::endpoint, workers};
  const auto lat = c.latency.find(p);
  const auto bw = c.throughput.find(p);
  if (lat == c.latency.end() || bw == c.throughput.end()) {
    throw TopologyError("missing link parameters for " + p.key());
  }
  return {Tier::endpoint, workers, lat->second.average_ms, lat->second.variability_ms, bw->second};
}

inline void append_tier(std::vector<Device>& out, const DeploymentConfig& c, Tier t, Role role) {
  for (std::uint32_t i = 0; i < c.devices_per_tier[t]; ++i) {
    out.push_back({out.size(), t, c.cores_per_device[t], c.quota_per_cpu[t], role});
  }
}

}  // namespace detail

/// Materializes devices and the endpoint-to-worker assignment.
///
/// Workers live on the edge tier when it has devices, otherwise on the cloud
/// tier, otherwise on the endpoints. Cloud devices that are not workers act as
/// controllers; with cloud workers the first cloud device is the controller.
/// With endpoint workers the first half of the endpoints (by id) are workers
/// and the rest are sources. Sources are dealt round-robin so every worker
/// serves the same number E of endpoints.
inline Topology build_topology(const DeploymentConfig& c) {
  detail::require_valid(c);
  const auto wt = worker_tier(c);
  if (!wt) throw TopologyError("no tier hosts workers");

  Topology topo;
  topo.worker_tier = *wt;
  auto& devs = topo.devices;

  switch (*wt) {
    case Tier::edge:
      detail::append_tier(devs, c, Tier::cloud, Role::controller);
      detail::append_tier(devs, c, Tier::edge, Role::worker);
      detail::append_tier(devs, c, Tier::endpoint, Role::source);
      break;
    case Tier::cloud:
      detail::append_tier(devs, c, Tier::cloud, Role::worker);
      devs.front().role = Role::controller;
      detail::append_tier(devs, c, Tier::endpoint, Role::source);
      break;
    case Tier::endpoint: {
      detail::append_tier(devs, c, Tier::endpoint, Role::source);
      const std::size_t half = devs.size() / 2;
      for (std::size_t i = 0; i < half; ++i) devs[i].role = Role::worker;
      break;
    }
  }

  const auto workers = topo.workers();
  const auto sources = topo.ids_with(Role::source);
  if (workers.empty()) throw TopologyError("no worker devices (a single cloud device is only a controller)");
  if (sources.size() % workers.size() != 0) {
    throw TopologyError(std::to_string(sources.size()) + " endpoints cannot be split evenly over " +
                        std::to_string(workers.size()) + " workers");
  }
  topo.endpoints_per_worker = static_cast<std::uint32_t>(sources.size() / workers.size());
  for (std::size_t w : workers) topo.assignment[w];
  for (std::size_t i = 0; i < sources.size(); ++i) {
    topo.assignment[workers[i % workers.size()]].push_back(sources[i]);
  }
  topo.links = detail::links_of(c);
  topo.access_link = detail::access_link_of(c, *wt);
  return topo;
}

/// Every endpoint processes its own data (E = 1, no network hop). Cloud and
/// edge devices, if any, are kept as controllers and do no work.
inline Topology build_local_topology(const DeploymentConfig& c) {
  detail::require_valid(c);
  Topology topo;
  topo.worker_tier = Tier::endpoint;
  detail::append_tier(topo.devices, c, Tier::cloud, Role::controller);
  detail::append_tier(topo.devices, c, Tier::edge, Role::controller);
  detail::append_tier(topo.devices, c, Tier::endpoint, Role::worker);
  for (std::size_t w : topo.workers()) topo.assignment[w] = {w};
  topo.endpoints_per_worker = 1;
  topo.links = detail::links_of(c);
  return topo;
}

}  // namespace continuum
