#pragma once

// First-order viability model for placing a periodic data-processing
// workload on the endpoint itself or on an edge/cloud offload target.
//
// Local processing on endpoint e is viable unless
//     T_proc(e) * R  >  C_e * Q_e
// Offloading to target o serving E endpoints is viable unless any of
//     T_proc(o) * R * E  >  C_o * Q_o      (worker capacity)
//     T_pre * R          >  C_e * Q_e      (preprocess capacity)
//     R * S              >  B              (bandwidth)
// holds. Equality is viable. All comparisons are done on exact rationals of
// the inputs' decimal forms (see decimal.hpp).

#include "continuum/decimal.hpp"
#include "continuum/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace continuum {

inline constexpr double kUnboundedLoad = std::numeric_limits<double>::infinity();

enum class Condition { worker_capacity, preprocess_capacity, bandwidth };

constexpr std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::worker_capacity: return "worker-capacity";
    case Condition::preprocess_capacity: return "preprocess-capacity";
    case Condition::bandwidth: return "bandwidth";
  }
  return "?";
}

/// One inequality of the model. Units: core-seconds/s for the capacity
/// checks, Mbit/s for bandwidth.
struct ConditionCheck {
  Condition condition = Condition::worker_capacity;
  double demand = 0.0;
  double capacity = 0.0;
  double ratio_percent = 0.0;  // kUnboundedLoad when capacity is 0 and demand > 0
  bool satisfied = true;
};

struct Verdict {
  bool viable = true;
  std::vector<Condition> failed_conditions;
  double load_percent = 0.0;        // at the processing location
  double required_bandwidth = 0.0;  // Mbit/s per endpoint; 0 for local processing
  std::vector<ConditionCheck> checks;

  bool failed(Condition c) const {
    return std::find(failed_conditions.begin(), failed_conditions.end(), c) != failed_conditions.end();
  }
  bool load_unbounded() const noexcept { return std::isinf(load_percent); }
};

namespace detail {

struct ExactWorkload {
  PerTier<std::optional<Exact>> proc;
  Exact pre;
  Exact rate;
  Exact size;

  const Exact& proc_on(Tier t) const {
    if (!proc[t]) throw WorkloadError("no processing time given for the " + std::string(to_string(t)) + " tier");
    return *proc[t];
  }
};

inline ExactWorkload lift(const WorkloadProfile& w) {
  ExactWorkload out;
  for (Tier t : kTiers) {
    if (w.proc_time[t]) out.proc[t] = exact(*w.proc_time[t]);
  }
  out.pre = exact(w.pre_time);
  out.rate = exact(w.rate);
  out.size = exact(w.element_size);
  return out;
}

inline Exact capacity_exact(const Device& d) { return Exact(d.cores) * exact(d.quota); }

inline double percent(const Exact& demand, const Exact& capacity) {
  if (capacity == 0) return demand == 0 ? 0.0 : kUnboundedLoad;
  return to_double(demand * 100 / capacity);
}

inline ConditionCheck check(Condition c, const Exact& demand, const Exact& capacity) {
  return {c, to_double(demand), to_double(capacity), percent(demand, capacity), !(demand > capacity)};
}

inline Verdict from_checks(std::vector<ConditionCheck> checks, double load, double bandwidth) {
  Verdict v;
  for (const auto& c : checks) {
    if (!c.satisfied) v.failed_conditions.push_back(c.condition);
  }
  v.viable = v.failed_conditions.empty();
  v.load_percent = load;
  v.required_bandwidth = bandwidth;
  v.checks = std::move(checks);
  return v;
}

inline Verdict local_exact(const ExactWorkload& w, const Exact& endpoint_capacity) {
  const Exact demand = w.proc_on(Tier::endpoint) * w.rate;
  auto c = check(Condition::worker_capacity, demand, endpoint_capacity);
  const double load = c.ratio_percent;
  return from_checks({c}, load, 0.0);
}

inline Verdict offload_exact(const ExactWorkload& w, Tier target_tier, std::uint32_t endpoints,
                             const Exact& endpoint_capacity, const Exact& target_capacity,
                             const Exact& bandwidth) {
  const Exact worker_demand = w.proc_on(target_tier) * w.rate * Exact(endpoints);
  const Exact pre_demand = w.pre * w.rate;
  const Exact data_rate = w.rate * w.size;
  std::vector<ConditionCheck> checks{
      check(Condition::worker_capacity, worker_demand, target_capacity),
      check(Condition::preprocess_capacity, pre_demand, endpoint_capacity),
      check(Condition::bandwidth, data_rate, bandwidth),
  };
  const double load = checks.front().ratio_percent;
  return from_checks(std::move(checks), load, to_double(data_rate));
}

}  // namespace detail

/// Can the endpoint keep up with its own data?
inline Verdict local_viability(const WorkloadProfile& w, const Device& endpoint) {
  return detail::local_exact(detail::lift(w), detail::capacity_exact(endpoint));
}

/// Can `target` process the data of E endpoints like `endpoint`, sent over
/// `link`? Every condition is evaluated and reported.
inline Verdict offload_viability(const WorkloadProfile& w, const Device& endpoint, const Device& target,
                                 std::uint32_t endpoints, const Link& link) {
  return detail::offload_exact(detail::lift(w), target.tier, endpoints, detail::capacity_exact(endpoint),
                               detail::capacity_exact(target), exact(link.bandwidth_mbps));
}

/// demand / capacity * 100. kUnboundedLoad for positive demand on zero capacity.
inline double system_load(double demand, double capacity) {
  if (demand < 0.0 || capacity < 0.0) throw std::invalid_argument("system_load: negative demand or capacity");
  return detail::percent(exact(demand), exact(capacity));
}

// Placement ------------------------------------------------------------------

enum class Placement { endpoint, edge, cloud, not_viable };

constexpr std::string_view to_string(Placement p) noexcept {
  switch (p) {
    case Placement::endpoint: return "endpoint";
    case Placement::edge: return "edge";
    case Placement::cloud: return "cloud";
    case Placement::not_viable: return "not-viable";
  }
  return "?";
}

inline std::optional<Placement> parse_placement(std::string_view s) noexcept {
  for (auto p : {Placement::endpoint, Placement::edge, Placement::cloud, Placement::not_viable}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

/// Preference order over the three processing locations.
class PlacementPolicy {
 public:
  PlacementPolicy() = default;

  explicit PlacementPolicy(std::array<Placement, 3> order) : order_(order) {
    std::array<int, 3> seen{};
    for (Placement p : order_) {
      if (p == Placement::not_viable) throw std::invalid_argument("policy cannot prefer not-viable");
      if (++seen[static_cast<std::size_t>(p)] > 1) throw std::invalid_argument("policy repeats a placement");
    }
  }

  /// "edge,cloud,endpoint"
  static PlacementPolicy parse(std::string_view text) {
    std::array<Placement, 3> order{};
    std::size_t n = 0;
    for (auto part : detail::split_commas(text)) {
      const auto p = parse_placement(part);
      if (!p || n == 3) throw std::invalid_argument("bad placement policy '" + std::string(text) + "'");
      order[n++] = *p;
    }
    if (n != 3) throw std::invalid_argument("placement policy must name endpoint, edge and cloud");
    return PlacementPolicy{order};
  }

  const std::array<Placement, 3>& order() const noexcept { return order_; }

  std::string str() const {
    std::string out;
    for (Placement p : order_) {
      if (!out.empty()) out += ',';
      out += to_string(p);
    }
    return out;
  }

 private:
  std::array<Placement, 3> order_{Placement::endpoint, Placement::edge, Placement::cloud};
};

struct OffloadTarget {
  Device worker;
  std::uint32_t endpoints_per_worker = 1;
  Link link;
};

/// What each placement would run on: the data-generating endpoint and, when
/// available, one representative edge and cloud worker.
struct TopologyFamily {
  Device endpoint;
  std::optional<OffloadTarget> edge;
  std::optional<OffloadTarget> cloud;
};

/// Endpoint device from the first topology's first source; edge/cloud
/// targets from each topology whose workers sit on that tier (later ones
/// win). Topologies with endpoint workers contribute nothing else.
inline TopologyFamily family_of(std::span<const Topology> topologies) {
  if (topologies.empty()) throw std::invalid_argument("family_of: no topologies");
  TopologyFamily fam;
  const auto& first = topologies.front();
  const auto src = first.sources();
  if (src.empty()) throw TopologyError("topology has no endpoints");
  fam.endpoint = first.device(src.front());
  for (const auto& t : topologies) {
    if (t.local_only() || t.worker_tier == Tier::endpoint) continue;
    const auto ws = t.workers();
    if (ws.empty()) continue;
    OffloadTarget target{t.device(ws.front()), t.endpoints_per_worker, *t.access_link};
    (t.worker_tier == Tier::edge ? fam.edge : fam.cloud) = target;
  }
  return fam;
}

/// Endpoint and edge devices of the edge-small deployment, cloud target of
/// the cloud deployment.
inline TopologyFamily default_family() {
  const std::array<Topology, 2> topos{build_topology(load_preset("edge-small")), build_topology(load_preset("cloud"))};
  return family_of(topos);
}

/// Per-placement verdicts and the placement chosen by the policy.
struct Assessment {
  Placement placement = Placement::not_viable;
  Verdict local;
  std::optional<Verdict> edge;
  std::optional<Verdict> cloud;

  const std::optional<Verdict>& offload(Placement p) const { return p == Placement::edge ? edge : cloud; }
};

namespace detail {

inline Assessment assess_exact(const ExactWorkload& w, const TopologyFamily& fam, const PlacementPolicy& policy) {
  Assessment a;
  const Exact endpoint_cap = capacity_exact(fam.endpoint);
  a.local = local_exact(w, endpoint_cap);
  auto offload = [&](const std::optional<OffloadTarget>& t) -> std::optional<Verdict> {
    if (!t) return std::nullopt;
    return offload_exact(w, t->worker.tier, t->endpoints_per_worker, endpoint_cap, capacity_exact(t->worker),
                         exact(t->link.bandwidth_mbps));
  };
  a.edge = offload(fam.edge);
  a.cloud = offload(fam.cloud);

  for (Placement p : policy.order()) {
    const bool ok = p == Placement::endpoint ? a.local.viable : (a.offload(p) && a.offload(p)->viable);
    if (ok) {
      a.placement = p;
      break;
    }
  }
  return a;
}

}  // namespace detail

inline Assessment assess(const WorkloadProfile& w, const TopologyFamily& fam, const PlacementPolicy& policy = {}) {
  return detail::assess_exact(detail::lift(w), fam, policy);
}

/// First viable placement in policy order, or not-viable.
inline Placement classify(const WorkloadProfile& w, const TopologyFamily& fam, const PlacementPolicy& policy = {}) {
  return assess(w, fam, policy).placement;
}

// Heatmap --------------------------------------------------------------------

/// Sample grid over generation rate (x) and processing time per element on
/// the reference tier (y). Both axes include their end points.
struct HeatmapSpec {
  double rate_min = 0.0;
  double rate_max = 20.0;
  double tproc_min = 0.0;
  double tproc_max = 0.2;
  std::size_t rate_samples = 41;
  std::size_t tproc_samples = 41;
  Tier reference_tier = Tier::endpoint;
};

struct HeatmapGrid {
  std::vector<double> rates;
  std::vector<double> tprocs;
  std::vector<Placement> cells;  // row-major: one row per tproc sample
  Tier reference_tier = Tier::endpoint;

  Placement at(std::size_t tproc_index, std::size_t rate_index) const {
    return cells.at(tproc_index * rates.size() + rate_index);
  }
};

namespace detail {

inline std::vector<Exact> axis(double lo, double hi, std::size_t n, const char* name) {
  if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw std::invalid_argument(std::string("heatmap: ") + name + " range must satisfy 0 <= min < max");
  }
  if (n < 2) throw std::invalid_argument(std::string("heatmap: ") + name + " needs at least 2 samples");
  const Exact a = exact(lo);
  const Exact span = exact(hi) - a;
  std::vector<Exact> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(a + span * Exact(i) / Exact(n - 1));
  return out;
}

/// `base` with rate replaced and every tier's processing time scaled so the
/// reference tier takes `tproc`.
inline ExactWorkload scaled(const ExactWorkload& base, Tier reference, const Exact& rate, const Exact& tproc) {
  const auto& ref = base.proc[reference];
  if (!ref || *ref == 0) {
    throw std::invalid_argument("heatmap: base workload needs a positive processing time on the reference tier");
  }
  ExactWorkload w = base;
  w.rate = rate;
  for (Tier t : kTiers) {
    if (w.proc[t]) w.proc[t] = *w.proc[t] * tproc / *ref;
  }
  return w;
}

}  // namespace detail

/// Classifies every (rate, tproc) cell. Per-tier processing times keep the
/// base profile's ratios; data rate follows R * S.
inline HeatmapGrid heatmap(const HeatmapSpec& spec, const WorkloadProfile& base, const TopologyFamily& fam,
                           const PlacementPolicy& policy = {}) {
  const auto rates = detail::axis(spec.rate_min, spec.rate_max, spec.rate_samples, "rate");
  const auto tprocs = detail::axis(spec.tproc_min, spec.tproc_max, spec.tproc_samples, "tproc");
  const auto lifted = detail::lift(base);

  HeatmapGrid grid;
  grid.reference_tier = spec.reference_tier;
  for (const auto& r : rates) grid.rates.push_back(to_double(r));
  for (const auto& t : tprocs) grid.tprocs.push_back(to_double(t));
  grid.cells.reserve(rates.size() * tprocs.size());
  for (const auto& t : tprocs) {
    for (const auto& r : rates) {
      grid.cells.push_back(detail::assess_exact(detail::scaled(lifted, spec.reference_tier, r, t), fam, policy).placement);
    }
  }
  return grid;
}

/// Assessment at one heatmap coordinate, using the same scaling as heatmap().
inline Assessment assess_point(double rate, double tproc, const WorkloadProfile& base, const TopologyFamily& fam,
                               const PlacementPolicy& policy = {}, Tier reference = Tier::endpoint) {
  return detail::assess_exact(detail::scaled(detail::lift(base), reference, exact(rate), exact(tproc)), fam, policy);
}

}  // namespace continuum
