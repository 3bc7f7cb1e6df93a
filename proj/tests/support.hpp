#pragma once

// Random inputs shared by the property tests and the acceptance runner.

#include "continuum/config.hpp"
#include "continuum/topology.hpp"

#include <random>

namespace continuum::testing_support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  // A short decimal: integer(lo, hi) / scale.
  double decimal(std::int64_t lo, std::int64_t hi, double scale) { return static_cast<double>(integer(lo, hi)) / scale; }
  bool coin() { return integer(0, 1) == 1; }

  DeploymentConfig config() {
    DeploymentConfig c;
    for (Tier t : kTiers) {
      c.devices_per_tier[t] = static_cast<std::uint32_t>(integer(0, 12));
      c.cores_per_device[t] = static_cast<std::uint32_t>(integer(1, 16));
      c.quota_per_cpu[t] = decimal(1, 100, 100.0);
    }
    c.devices_per_tier.endpoint = static_cast<std::uint32_t>(integer(1, 60));
    for (const auto& pair : kTierPairs) {
      if (coin()) c.latency[pair] = {decimal(0, 2000, 10.0), decimal(0, 100, 10.0)};
      if (coin()) c.throughput[pair] = decimal(1, 100000, 100.0);
    }
    const TierPair access{Tier::endpoint, *worker_tier(c)};
    if (!c.latency.contains(access)) c.latency[access] = {decimal(0, 2000, 10.0), 0.0};
    if (!c.throughput.contains(access)) c.throughput[access] = decimal(1, 100000, 100.0);
    c.benchmark.use_benchmark = coin();
    c.benchmark.data_generation_frequency = decimal(0, 500, 10.0);
    c.benchmark.application = coin() ? "image_classification" : "";
    c.benchmark.resource_manager = coin() ? "kubernetes" : "";
    return c;
  }

  WorkloadProfile workload() {
    WorkloadProfile w;
    for (Tier t : kTiers) w.proc_time[t] = decimal(0, 500, 1000.0);
    w.pre_time = decimal(0, 200, 1000.0);
    w.rate = decimal(0, 300, 10.0);
    w.element_size = decimal(0, 300, 100.0);
    return w;
  }

  Device device(Tier t, Role r) {
    return {0, t, static_cast<std::uint32_t>(integer(1, 8)), decimal(1, 100, 100.0), r};
  }

  Link link() { return {Tier::endpoint, Tier::edge, decimal(0, 500, 10.0), 0.0, decimal(1, 400, 10.0)}; }

 private:
  std::mt19937_64 rng_;
};


// Small random offload deployments with an edge tier that divides the endpoints.
inline Topology random_topology(Gen& g) {
  DeploymentConfig c;
  const auto edges = static_cast<std::uint32_t>(g.integer(1, 4));
  c.devices_per_tier = {0, edges, edges * static_cast<std::uint32_t>(g.integer(1, 4))};
  c.cores_per_device = {0, static_cast<std::uint32_t>(g.integer(1, 4)), static_cast<std::uint32_t>(g.integer(1, 2))};
  c.quota_per_cpu = {0.0, g.decimal(10, 100, 100.0), g.decimal(10, 100, 100.0)};
  c.latency[{Tier::edge, Tier::endpoint}] = {g.decimal(0, 500, 10.0), g.decimal(0, 50, 10.0)};
  c.throughput[{Tier::edge, Tier::endpoint}] = g.decimal(10, 400, 10.0);
  return build_topology(c);
}

}  // namespace continuum::testing_support
