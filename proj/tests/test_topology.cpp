#include "continuum/topology.hpp"

#include <gtest/gtest.h>

namespace continuum {
namespace {

std::size_t count_role(const Topology& t, Role r) { return t.ids_with(r).size(); }

TEST(BuildTopology, CloudPreset) {
  const auto t = build_topology(load_preset("cloud"));
  EXPECT_EQ(t.worker_tier, Tier::cloud);
  EXPECT_EQ(count_role(t, Role::worker), 10u);
  EXPECT_EQ(count_role(t, Role::controller), 1u);
  EXPECT_EQ(count_role(t, Role::source), 40u);
  EXPECT_EQ(t.endpoints_per_worker, 4u);
  for (auto w : t.workers()) {
    EXPECT_EQ(t.device(w).cores, 4u);
    EXPECT_EQ(t.device(w).quota, 1.0);
  }
  ASSERT_TRUE(t.access_link);
  EXPECT_EQ(*t.access_link, (Link{Tier::endpoint, Tier::cloud, 45.0, 5.0, 8.0}));
}

TEST(BuildTopology, EdgePresetsKeepCloudAsController) {
  const auto large = build_topology(load_preset("edge-large"));
  EXPECT_EQ(large.worker_tier, Tier::edge);
  EXPECT_EQ(count_role(large, Role::controller), 1u);
  EXPECT_EQ(large.endpoints_per_worker, 4u);
  EXPECT_EQ(large.access_link->latency_avg_ms, 30.0);

  const auto small = build_topology(load_preset("edge-small"));
  EXPECT_EQ(small.endpoints_per_worker, 2u);
  EXPECT_EQ(capacity_of(small.device(small.workers().front())), 1.5);
}

TEST(BuildTopology, MistUsesFirstHalfOfEndpointsAsWorkers) {
  const auto t = build_topology(load_preset("mist"));
  EXPECT_EQ(t.worker_tier, Tier::endpoint);
  const auto workers = t.workers();
  ASSERT_EQ(workers.size(), 10u);
  EXPECT_EQ(count_role(t, Role::source), 10u);
  EXPECT_EQ(t.endpoints_per_worker, 1u);
  for (std::size_t i = 0; i < workers.size(); ++i) {
    EXPECT_EQ(workers[i], i);
    EXPECT_EQ(t.assignment.at(workers[i]), (std::vector<std::size_t>{10 + i}));
  }
}

TEST(BuildTopology, IndivisibleEndpointsAreRejected) {
  auto cfg = load_preset("edge-large");
  cfg.devices_per_tier.edge = 7;
  EXPECT_THROW(build_topology(cfg), TopologyError);
}

TEST(BuildTopology, ExampleConfigDoesNotDivide) {
  // 10 cloud devices = 1 controller + 9 workers for 40 endpoints.
  auto cfg = load_preset("cloud");
  cfg.devices_per_tier.cloud = 10;
  EXPECT_THROW(build_topology(cfg), TopologyError);
}

TEST(BuildTopology, LoneCloudDeviceIsOnlyAController) {
  auto cfg = load_preset("cloud");
  cfg.devices_per_tier.cloud = 1;
  EXPECT_THROW(build_topology(cfg), TopologyError);
}

TEST(BuildTopology, InvalidConfigIsRejected) {
  auto cfg = load_preset("cloud");
  cfg.quota_per_cpu.cloud = 1.5;
  EXPECT_THROW(build_topology(cfg), ConfigError);
}

TEST(BuildTopology, AssignmentCoversEveryEndpointOnce) {
  for (auto name : kPresetNames) {
    const auto t = build_topology(load_preset(name));
    std::vector<int> hits(t.devices.size(), 0);
    std::size_t total = 0;
    for (const auto& [w, eps] : t.assignment) {
      EXPECT_EQ(eps.size(), t.endpoints_per_worker) << name;
      total += eps.size();
      for (auto e : eps) ++hits[e];
    }
    EXPECT_EQ(total, t.ids_with(Role::source).size()) << name;
    for (auto s : t.ids_with(Role::source)) EXPECT_EQ(hits[s], 1) << name;
  }
}

TEST(BuildTopology, Deterministic) {
  for (auto name : kPresetNames) {
    EXPECT_EQ(build_topology(load_preset(name)), build_topology(load_preset(name))) << name;
  }
}

TEST(BuildLocalTopology, EveryEndpointServesItself) {
  const auto t = build_local_topology(load_preset("edge-small"));
  EXPECT_TRUE(t.local_only());
  EXPECT_EQ(t.endpoints_per_worker, 1u);
  EXPECT_EQ(t.workers().size(), 20u);
  for (const auto& [w, eps] : t.assignment) EXPECT_EQ(eps, (std::vector<std::size_t>{w}));
}

TEST(CapacityOf, Examples) {
  EXPECT_EQ(capacity_of(Device{0, Tier::cloud, 4, 1.0, Role::worker}), 4.0);
  EXPECT_EQ(capacity_of(Device{0, Tier::edge, 2, 0.75, Role::worker}), 1.5);
  EXPECT_EQ(capacity_of(Device{0, Tier::endpoint, 1, 0.5, Role::worker}), 0.5);
}

TEST(DemandOnWorker, Examples) {
  WorkloadProfile w;
  w.proc_time.edge = 0.14;
  w.proc_time.endpoint = 0.11;
  w.rate = 5.0;
  EXPECT_DOUBLE_EQ(demand_on_worker(w, Tier::edge, 2), 1.4);
  EXPECT_DOUBLE_EQ(demand_on_worker(w, Tier::endpoint, 1), 0.55);
  w.rate = 0.0;
  EXPECT_EQ(demand_on_worker(w, Tier::edge, 2), 0.0);
  EXPECT_THROW(demand_on_worker(w, Tier::cloud, 1), WorkloadError);
}

TEST(DemandOnWorker, LinearInRateAndCapacityInQuota) {
  WorkloadProfile w = default_workload();
  const double base = demand_on_worker(w, Tier::edge, 3);
  w.rate *= 2.0;
  EXPECT_DOUBLE_EQ(demand_on_worker(w, Tier::edge, 3), 2.0 * base);
  Device d{0, Tier::edge, 3, 0.25, Role::worker};
  const double cap = capacity_of(d);
  d.quota *= 2.0;
  EXPECT_DOUBLE_EQ(capacity_of(d), 2.0 * cap);
}

TEST(Workload, DataRateIsDerived) {
  const auto w = default_workload();
  EXPECT_DOUBLE_EQ(w.data_rate(), 2.7);
}

}  // namespace
}  // namespace continuum
