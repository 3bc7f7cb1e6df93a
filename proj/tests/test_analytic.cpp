#include "continuum/analytic.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace continuum {
namespace {

WorkloadProfile workload(double tproc_endpoint, double tproc_target, double rate, double tpre = 0.0,
                         double size = 0.0) {
  WorkloadProfile w;
  w.proc_time.endpoint = tproc_endpoint;
  w.proc_time.edge = tproc_target;
  w.proc_time.cloud = tproc_target;
  w.rate = rate;
  w.pre_time = tpre;
  w.element_size = size;
  return w;
}

Device endpoint(std::uint32_t cores, double quota) { return {0, Tier::endpoint, cores, quota, Role::source}; }
Device edge_worker(std::uint32_t cores, double quota) { return {1, Tier::edge, cores, quota, Role::worker}; }
Link access(double mbps) { return {Tier::endpoint, Tier::edge, 7.5, 0.0, mbps}; }

// Local ----------------------------------------------------------------------

TEST(LocalViability, PointAIsNotViable) {
  const auto v = local_viability(workload(0.11, 0.14, 5.0), endpoint(1, 0.5));
  EXPECT_FALSE(v.viable);
  EXPECT_EQ(v.failed_conditions, std::vector<Condition>{Condition::worker_capacity});
  EXPECT_EQ(v.load_percent, 110.0);
  EXPECT_EQ(v.required_bandwidth, 0.0);
}

TEST(LocalViability, EqualityIsViable) {
  const auto v = local_viability(workload(0.1, 0.14, 5.0), endpoint(1, 0.5));
  EXPECT_TRUE(v.viable);
  EXPECT_EQ(v.load_percent, 100.0);
}

TEST(LocalViability, ZeroRate) {
  const auto v = local_viability(workload(0.11, 0.14, 0.0), endpoint(1, 0.5));
  EXPECT_TRUE(v.viable);
  EXPECT_EQ(v.load_percent, 0.0);
}

TEST(LocalViability, ZeroCapacityWithDemandIsUnbounded) {
  const auto v = local_viability(workload(0.11, 0.14, 5.0), endpoint(0, 0.5));
  EXPECT_FALSE(v.viable);
  EXPECT_TRUE(v.load_unbounded());
}

TEST(LocalViability, MissingEndpointTimeThrows) {
  WorkloadProfile w;
  w.rate = 5.0;
  EXPECT_THROW(local_viability(w, endpoint(1, 0.5)), WorkloadError);
}

// Offload --------------------------------------------------------------------

TEST(OffloadViability, PointBIsViable) {
  const auto v =
      offload_viability(workload(0.11, 0.14, 5.0, 0.001, 0.54), endpoint(1, 0.5), edge_worker(2, 0.75), 2, access(8));
  EXPECT_TRUE(v.viable);
  EXPECT_TRUE(v.failed_conditions.empty());
  EXPECT_DOUBLE_EQ(v.load_percent, 280.0 / 3.0);
  EXPECT_NEAR(v.load_percent, 93.3333, 5e-5);
  EXPECT_DOUBLE_EQ(v.required_bandwidth, 2.7);
  ASSERT_EQ(v.checks.size(), 3u);
  EXPECT_DOUBLE_EQ(v.checks[0].demand, 1.4);
  EXPECT_DOUBLE_EQ(v.checks[0].capacity, 1.5);
  EXPECT_DOUBLE_EQ(v.checks[1].demand, 0.005);
  EXPECT_DOUBLE_EQ(v.checks[1].capacity, 0.5);
  EXPECT_DOUBLE_EQ(v.checks[1].ratio_percent, 1.0);
  EXPECT_DOUBLE_EQ(v.checks[2].demand, 2.7);
  EXPECT_DOUBLE_EQ(v.checks[2].capacity, 8.0);
}

TEST(OffloadViability, BandwidthOnly) {
  // S = 2 Mbit at 5 Hz -> D = 10 Mbit/s on an 8 Mbit/s link.
  const auto v =
      offload_viability(workload(0.11, 0.14, 5.0, 0.001, 2.0), endpoint(1, 0.5), edge_worker(2, 0.75), 2, access(8));
  EXPECT_FALSE(v.viable);
  EXPECT_EQ(v.failed_conditions, std::vector<Condition>{Condition::bandwidth});
  EXPECT_DOUBLE_EQ(v.required_bandwidth, 10.0);
}

TEST(OffloadViability, PreprocessOnly) {
  const auto v =
      offload_viability(workload(0.11, 0.14, 5.0, 0.3, 0.54), endpoint(1, 0.5), edge_worker(2, 0.75), 2, access(8));
  EXPECT_FALSE(v.viable);
  EXPECT_EQ(v.failed_conditions, std::vector<Condition>{Condition::preprocess_capacity});
  EXPECT_DOUBLE_EQ(v.checks[1].demand, 1.5);
}

TEST(OffloadViability, ReportsEveryFailedCondition) {
  const auto v =
      offload_viability(workload(0.11, 0.14, 5.0, 0.3, 2.0), endpoint(1, 0.5), edge_worker(2, 0.75), 4, access(8));
  EXPECT_EQ(v.failed_conditions, (std::vector<Condition>{Condition::worker_capacity, Condition::preprocess_capacity,
                                                         Condition::bandwidth}));
}

TEST(OffloadViability, BoundariesAreViable) {
  // 0.15 * 5 * 2 = 1.5; 0.1 * 5 = 0.5; 5 * 1.6 = 8.
  const auto v =
      offload_viability(workload(0.11, 0.15, 5.0, 0.1, 1.6), endpoint(1, 0.5), edge_worker(2, 0.75), 2, access(8));
  EXPECT_TRUE(v.viable);
  EXPECT_EQ(v.load_percent, 100.0);
}

// Independent re-evaluation of the three inequalities on integer-scaled
// decimals: tproc = a/1000, rate = b/10, quota = q/100, tpre = p/10000,
// size = s/100, bandwidth = bw/10.
struct IntCase {
  std::int64_t a, b, E, C, q, ce, qe, p, s, bw;
};

TEST(OffloadViability, AgreesWithIntegerOracle) {
  std::mt19937_64 rng(7);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  int boundary_hits = 0;
  for (int i = 0; i < 3000; ++i) {
    IntCase c{pick(0, 400), pick(0, 200), pick(1, 8), pick(1, 8), pick(1, 100), pick(1, 4), pick(1, 100),
              pick(0, 2000), pick(0, 300), pick(1, 200)};
    // Steer a share of cases onto exact equality of the worker condition.
    if (i % 5 == 0 && c.a > 0 && c.b > 0) {
      c.q = 100;
      c.C = 1;
      c.E = 1;
      c.a = 10;
      c.b = 1000;  // 0.01 * 100 * 1 = 1 = 1 * 1.0
    }
    WorkloadProfile w;
    w.proc_time.edge = c.a / 1000.0;
    w.rate = c.b / 10.0;
    w.pre_time = c.p / 10000.0;
    w.element_size = c.s / 100.0;
    const Device ep{0, Tier::endpoint, static_cast<std::uint32_t>(c.ce), c.qe / 100.0, Role::source};
    const Device wk{1, Tier::edge, static_cast<std::uint32_t>(c.C), c.q / 100.0, Role::worker};
    const auto v = offload_viability(w, ep, wk, static_cast<std::uint32_t>(c.E), access(c.bw / 10.0));

    const bool worker_ok = c.a * c.b * c.E <= c.C * c.q * 100;
    const bool pre_ok = c.p * c.b <= c.ce * c.qe * 1000;
    const bool bw_ok = c.b * c.s <= c.bw * 100;
    if (c.a * c.b * c.E == c.C * c.q * 100) ++boundary_hits;

    EXPECT_EQ(!v.failed(Condition::worker_capacity), worker_ok) << i;
    EXPECT_EQ(!v.failed(Condition::preprocess_capacity), pre_ok) << i;
    EXPECT_EQ(!v.failed(Condition::bandwidth), bw_ok) << i;
    EXPECT_EQ(v.viable, worker_ok && pre_ok && bw_ok) << i;
    EXPECT_DOUBLE_EQ(v.load_percent, static_cast<double>(c.a * c.b * c.E) / static_cast<double>(c.C * c.q)) << i;
  }
  EXPECT_GT(boundary_hits, 500);
}

// System load ----------------------------------------------------------------

TEST(SystemLoad, Examples) {
  EXPECT_EQ(system_load(0.56, 0.5), 112.0);
  EXPECT_DOUBLE_EQ(system_load(1.4, 1.5), 280.0 / 3.0);
  EXPECT_EQ(system_load(0.0, 0.5), 0.0);
  EXPECT_EQ(system_load(0.0, 0.0), 0.0);
  EXPECT_EQ(system_load(0.1, 0.0), kUnboundedLoad);
  EXPECT_THROW(system_load(-1.0, 1.0), std::invalid_argument);
}

// Classification -------------------------------------------------------------

TEST(Classify, DefaultFamilyMatchesPresets) {
  const auto fam = default_family();
  EXPECT_EQ(capacity_of(fam.endpoint), 0.5);
  ASSERT_TRUE(fam.edge && fam.cloud);
  EXPECT_EQ(capacity_of(fam.edge->worker), 1.5);
  EXPECT_EQ(fam.edge->endpoints_per_worker, 2u);
  EXPECT_EQ(capacity_of(fam.cloud->worker), 4.0);
  EXPECT_EQ(fam.cloud->endpoints_per_worker, 4u);
}

TEST(Classify, PointsAAndBGoToEdge) {
  const auto a = assess(default_workload(), default_family());
  EXPECT_FALSE(a.local.viable);
  ASSERT_TRUE(a.edge);
  EXPECT_TRUE(a.edge->viable);
  EXPECT_EQ(a.placement, Placement::edge);
}

TEST(Classify, ZeroRateStaysOnEndpoint) {
  auto w = default_workload();
  w.rate = 0.0;
  EXPECT_EQ(classify(w, default_family()), Placement::endpoint);
}

TEST(Classify, HugeDemandIsNotViable) {
  auto w = default_workload();
  for (Tier t : kTiers) w.proc_time[t] = 100.0;
  EXPECT_EQ(classify(w, default_family()), Placement::not_viable);
}

TEST(Classify, MissingTargetsAreSkipped) {
  auto fam = default_family();
  fam.edge.reset();
  EXPECT_EQ(classify(default_workload(), fam), Placement::cloud);
  fam.cloud.reset();
  EXPECT_EQ(classify(default_workload(), fam), Placement::not_viable);
}

TEST(Classify, PolicyChangesOnlyTheChoice) {
  const std::array<Placement, 3> base{Placement::endpoint, Placement::edge, Placement::cloud};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.0, 0.3), r(0.0, 20.0);
  const auto fam = default_family();
  for (int i = 0; i < 200; ++i) {
    auto w = default_workload();
    w.proc_time.endpoint = t(rng);
    w.proc_time.edge = w.proc_time.cloud = t(rng);
    w.rate = r(rng);
    std::set<Placement> viable_ref;
    bool first = true;
    auto order = base;
    std::sort(order.begin(), order.end());
    do {
      const auto a = assess(w, fam, PlacementPolicy{order});
      std::set<Placement> viable;
      if (a.local.viable) viable.insert(Placement::endpoint);
      if (a.edge->viable) viable.insert(Placement::edge);
      if (a.cloud->viable) viable.insert(Placement::cloud);
      if (first) viable_ref = viable;
      EXPECT_EQ(viable, viable_ref);
      const auto expected = [&] {
        for (auto p : order) {
          if (viable.contains(p)) return p;
        }
        return Placement::not_viable;
      }();
      EXPECT_EQ(a.placement, expected);
      first = false;
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(PlacementPolicy, ParseAndReject) {
  EXPECT_EQ(PlacementPolicy::parse("cloud,edge,endpoint").order(),
            (std::array<Placement, 3>{Placement::cloud, Placement::edge, Placement::endpoint}));
  EXPECT_THROW(PlacementPolicy::parse("cloud,cloud,endpoint"), std::invalid_argument);
  EXPECT_THROW(PlacementPolicy::parse("cloud,edge"), std::invalid_argument);
  EXPECT_THROW(PlacementPolicy::parse("cloud,edge,fog"), std::invalid_argument);
  EXPECT_EQ(PlacementPolicy{}.str(), "endpoint,edge,cloud");
}

// Heatmap --------------------------------------------------------------------

// Hand-reduced oracle for the default grid (rate = i/2, endpoint tproc =
// j/200, edge/cloud tproc scaled by 14/11, S = 0.54, B = 8):
//   endpoint: (j/200)(i/2) <= 1/2                   <=> i*j <= 200
//   edge:     (j/200)(14/11)(i/2)*2 <= 3/2          <=> 7*i*j <= 1650
//   cloud:    (j/200)(14/11)(i/2)*4 <= 4            <=> 7*i*j <= 2200
//   link:     (i/2)*0.54 <= 8                       <=> 27*i <= 800
//   preprocessing (0.001 * i/2 <= 0.5) always holds on this grid.
Placement default_grid_oracle(std::int64_t i, std::int64_t j) {
  if (i * j <= 200) return Placement::endpoint;
  const bool link = 27 * i <= 800;
  if (link && 7 * i * j <= 1650) return Placement::edge;
  if (link && 7 * i * j <= 2200) return Placement::cloud;
  return Placement::not_viable;
}

TEST(Heatmap, DefaultGridMatchesOracle) {
  const auto g = heatmap(HeatmapSpec{}, default_workload(), default_family());
  ASSERT_EQ(g.rates.size(), 41u);
  ASSERT_EQ(g.tprocs.size(), 41u);
  std::set<Placement> seen;
  for (std::size_t j = 0; j < g.tprocs.size(); ++j) {
    EXPECT_DOUBLE_EQ(g.tprocs[j], static_cast<double>(j) / 200.0);
    for (std::size_t i = 0; i < g.rates.size(); ++i) {
      EXPECT_EQ(g.at(j, i), default_grid_oracle(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)))
          << "rate " << g.rates[i] << " tproc " << g.tprocs[j];
      seen.insert(g.at(j, i));
    }
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Heatmap, MarkerCellIsEdge) {
  const auto g = heatmap(HeatmapSpec{}, default_workload(), default_family());
  EXPECT_EQ(g.rates[10], 5.0);
  EXPECT_EQ(g.tprocs[22], 0.11);
  EXPECT_EQ(g.at(22, 10), Placement::edge);
  const auto a = assess_point(5.0, 0.11, default_workload(), default_family());
  EXPECT_FALSE(a.local.viable);
  EXPECT_EQ(a.placement, Placement::edge);
}

TEST(Heatmap, ZeroRowAndColumnAreEndpoint) {
  const auto g = heatmap(HeatmapSpec{}, default_workload(), default_family());
  for (std::size_t i = 0; i < g.rates.size(); ++i) EXPECT_EQ(g.at(0, i), Placement::endpoint);
  for (std::size_t j = 0; j < g.tprocs.size(); ++j) EXPECT_EQ(g.at(j, 0), Placement::endpoint);
}

TEST(Heatmap, TwoByTwo) {
  HeatmapSpec spec;
  spec.rate_samples = spec.tproc_samples = 2;
  const auto g = heatmap(spec, default_workload(), default_family());
  ASSERT_EQ(g.cells.size(), 4u);
  EXPECT_EQ(g.at(0, 0), Placement::endpoint);
  EXPECT_EQ(g.at(0, 1), Placement::endpoint);
  EXPECT_EQ(g.at(1, 0), Placement::endpoint);
  EXPECT_EQ(g.at(1, 1), Placement::not_viable);  // 0.2 s at 20 Hz
}

TEST(Heatmap, RowsNeverRecoverFromNotViable) {
  HeatmapSpec spec;
  spec.rate_max = 40.0;
  spec.tproc_max = 0.5;
  spec.rate_samples = 57;
  spec.tproc_samples = 33;
  const auto g = heatmap(spec, default_workload(), default_family());
  for (std::size_t j = 0; j < g.tprocs.size(); ++j) {
    bool dead = false;
    for (std::size_t i = 0; i < g.rates.size(); ++i) {
      if (dead) {
        EXPECT_EQ(g.at(j, i), Placement::not_viable);
      }
      dead = dead || g.at(j, i) == Placement::not_viable;
    }
  }
}

TEST(Heatmap, CellsAgreeWithPointAssessment) {
  // Steps of 2 Hz and 0.05 s keep every axis value a short decimal, so the
  // double handed to assess_point names the same point as the grid.
  HeatmapSpec spec;
  spec.rate_samples = 11;
  spec.tproc_samples = 5;
  const auto g = heatmap(spec, default_workload(), default_family());
  for (std::size_t j = 0; j < g.tprocs.size(); ++j) {
    for (std::size_t i = 0; i < g.rates.size(); ++i) {
      EXPECT_EQ(g.at(j, i), assess_point(g.rates[i], g.tprocs[j], default_workload(), default_family()).placement);
    }
  }
}

TEST(Heatmap, RejectsBadSpecs) {
  HeatmapSpec spec;
  spec.rate_max = 0.0;
  EXPECT_THROW(heatmap(spec, default_workload(), default_family()), std::invalid_argument);
  spec = {};
  spec.tproc_samples = 1;
  EXPECT_THROW(heatmap(spec, default_workload(), default_family()), std::invalid_argument);
  auto w = default_workload();
  w.proc_time.endpoint = 0.0;
  EXPECT_THROW(heatmap(HeatmapSpec{}, w, default_family()), std::invalid_argument);
}

}  // namespace
}  // namespace continuum
