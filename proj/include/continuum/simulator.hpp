#pragma once

// Discrete-event simulation of the generate -> preprocess -> transfer ->
// queue -> process pipeline over a Topology.
//
// Each source endpoint emits an element every 1/R seconds from t = 0 and
// preprocesses it on its C_e cores (T_pre / Q_e each, FIFO). The element is then
// serialized on the endpoint's own link (S / B, FIFO) and propagates for a
// delay drawn from Normal(latency_avg, latency_sd) truncated at 0. The worker
// runs C parallel servers over one FIFO queue, each element taking
// T_proc / Q. Time is kept in integer nanoseconds, so per-element components
// add up exactly. Propagation delay is the only random quantity; every source
// has its own generator stream derived from the seed.

#include "continuum/topology.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace continuum {

using Ticks = std::chrono::nanoseconds;

inline Ticks to_ticks(double seconds) { return Ticks{std::llround(seconds * 1e9)}; }
inline double to_seconds(Ticks t) noexcept { return static_cast<double>(t.count()) / 1e9; }

struct SimParams {
  double duration = 60.0;              // simulated seconds
  std::optional<double> warmup;        // excluded from metrics; default 10% of duration
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_elements;  // cap on elements generated, all sources together

  double resolved_warmup() const noexcept { return warmup.value_or(0.1 * duration); }

  void check() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("duration must be positive");
    const double w = resolved_warmup();
    if (!(w >= 0.0) || !(w < duration)) throw std::invalid_argument("warmup must satisfy 0 <= warmup < duration");
  }
};

struct ElementRecord {
  std::uint64_t id = 0;
  std::size_t endpoint = 0;  // device id of the source
  std::size_t worker = 0;    // device id of the processing worker
  Ticks generated{};
  Ticks preprocess{};  // includes waiting for the endpoint core
  Ticks transfer{};    // link wait + serialization + propagation
  Ticks queue_wait{};
  Ticks service{};
  Ticks completed{};

  Ticks end_to_end() const noexcept { return completed - generated; }
};

/// Elements per pipeline stage. generated == sum of the others at all times.
struct StageCounts {
  std::uint64_t generated = 0;
  std::uint64_t awaiting_preprocess = 0;
  std::uint64_t in_transit = 0;
  std::uint64_t queued = 0;
  std::uint64_t in_service = 0;
  std::uint64_t completed = 0;

  std::uint64_t backlog() const noexcept { return generated - completed; }
  bool conserved() const noexcept {
    return generated == awaiting_preprocess + in_transit + queued + in_service + completed;
  }
  bool operator==(const StageCounts&) const = default;
};

struct WorkerStats {
  std::size_t worker = 0;
  std::uint64_t arrivals = 0;     // within the measurement window
  std::uint64_t completions = 0;  // within the measurement window
  double measured_load_percent = 0.0;
  double busy_fraction = 0.0;  // mean fraction of the C servers busy

  bool operator==(const WorkerStats&) const = default;
};

/// Sums over the measured elements; means are sum / count.
struct LatencyBreakdown {
  std::uint64_t count = 0;
  Ticks communication{};  // transfer
  Ticks compute{};        // preprocess + service
  Ticks queueing{};       // worker queue wait
  Ticks end_to_end{};

  double mean(Ticks sum) const noexcept { return count ? to_seconds(sum) / static_cast<double>(count) : 0.0; }
  double communication_mean() const noexcept { return mean(communication); }
  double compute_mean() const noexcept { return mean(compute); }
  double queueing_mean() const noexcept { return mean(queueing); }
  double end_to_end_mean() const noexcept { return mean(end_to_end); }

  bool operator==(const LatencyBreakdown&) const = default;
};

struct SimReport {
  double duration = 0.0;
  double warmup = 0.0;
  std::uint64_t seed = 0;

  // Elements generated at or after warmup that completed before the end.
  std::vector<ElementRecord> elements;
  double mean_latency = 0.0;  // s
  double sd_latency = 0.0;    // s, population
  std::vector<WorkerStats> workers;
  double throughput = 0.0;  // completions per second over the window, all workers
  StageCounts final_counts;
  std::uint64_t backlog_at_warmup = 0;
  std::uint64_t backlog_at_end = 0;

  double window() const noexcept { return duration - warmup; }
  double backlog_growth_rate() const noexcept {
    return (static_cast<double>(backlog_at_end) - static_cast<double>(backlog_at_warmup)) / window();
  }
};

inline bool operator==(const ElementRecord& a, const ElementRecord& b) noexcept {
  return a.id == b.id && a.endpoint == b.endpoint && a.worker == b.worker && a.generated == b.generated &&
         a.preprocess == b.preprocess && a.transfer == b.transfer && a.queue_wait == b.queue_wait &&
         a.service == b.service && a.completed == b.completed;
}

inline bool operator==(const SimReport& a, const SimReport& b) noexcept {
  return a.duration == b.duration && a.warmup == b.warmup && a.seed == b.seed && a.elements == b.elements &&
         a.mean_latency == b.mean_latency && a.sd_latency == b.sd_latency && a.workers == b.workers &&
         a.throughput == b.throughput && a.final_counts == b.final_counts &&
         a.backlog_at_warmup == b.backlog_at_warmup && a.backlog_at_end == b.backlog_at_end;
}

/// Component sums over the measured elements.
inline LatencyBreakdown latency_breakdown(const SimReport& r) {
  if (r.elements.empty()) throw std::invalid_argument("latency_breakdown: no element completed after warmup");
  LatencyBreakdown b;
  for (const auto& e : r.elements) {
    ++b.count;
    b.communication += e.transfer;
    b.compute += e.preprocess + e.service;
    b.queueing += e.queue_wait;
    b.end_to_end += e.end_to_end();
  }
  return b;
}

/// Measured load per worker, percent, in worker id order.
inline std::vector<double> measured_load(const SimReport& r) {
  std::vector<double> out;
  out.reserve(r.workers.size());
  for (const auto& w : r.workers) out.push_back(w.measured_load_percent);
  return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Portable generator: mt19937_64 output is fixed by the standard, and the
/// uniform/normal transforms below are ours, so streams match across
/// standard libraries.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    engine_.seed(splitmix64(s));
  }

  // (0, 1]
  double uniform() noexcept { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double normal() noexcept {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

  /// Normal(mean, sd) conditioned on being >= 0.
  double truncated_normal(double mean, double sd) noexcept {
    if (sd == 0.0) return std::max(mean, 0.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = mean + sd * normal();
      if (x >= 0.0) return x;
    }
    return 0.0;  // mean far below zero; the mass above 0 is negligible
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

class Simulation {
 public:
  using Observer = std::function<void(Ticks, const StageCounts&)>;

  Simulation(const Topology& topo, const WorkloadProfile& w, const SimParams& p)
      : topo_(topo), params_(p), end_(to_ticks(p.duration)), warmup_(to_ticks(p.resolved_warmup())) {
    p.check();
    if (topo.workers().empty()) throw TopologyError("simulation needs at least one worker");
    if (!(w.rate >= 0.0) || !std::isfinite(w.rate)) throw std::invalid_argument("rate must be finite and >= 0");
    rate_ = w.rate;
    local_ = topo.local_only();

    const double proc = w.proc_time_on(topo.worker_tier);
    for (const auto& [wid, eps] : topo.assignment) {
      const Device& d = topo.device(wid);
      WorkerState wk;
      wk.device = wid;
      wk.servers = d.cores;
      wk.service = to_ticks(proc / d.quota);
      wk.proc_time = proc;
      workers_.push_back(std::move(wk));
      for (std::size_t ep : eps) {
        const Device& e = topo.device(ep);
        SourceState s(ep, workers_.size() - 1, StreamRng(p.seed, ep));
        if (!local_) {
          s.pre_time = to_ticks(w.pre_time / e.quota);
          s.pre_cores = e.cores;
          s.serialization = to_ticks(w.element_size / topo.access_link->bandwidth_mbps);
        }
        sources_.push_back(std::move(s));
      }
    }
  }

  SimReport run(const Observer& observe = {}) {
    if (rate_ > 0.0) {
      for (std::size_t i = 0; i < sources_.size(); ++i) schedule(Ticks{0}, Kind::generate, i);
    }
    bool snapped = false;
    while (!events_.empty() && events_.top().time < end_) {
      const Event ev = events_.top();
      events_.pop();
      if (!snapped && ev.time >= warmup_) {
        backlog_at_warmup_ = counts_.backlog();
        snapped = true;
      }
      now_ = ev.time;
      dispatch(ev);
      if (observe) observe(now_, counts_);
    }
    if (!snapped) backlog_at_warmup_ = counts_.backlog();
    for (auto& wk : workers_) account_busy(wk, end_);
    return report();
  }

 private:
  enum class Kind : std::uint8_t { generate, preprocess_done, transmit_done, arrive, service_done };

  struct Event {
    Ticks time;
    std::uint64_t seq;
    Kind kind;
    std::size_t target;  // source index for generate, element id otherwise

    bool operator>(const Event& o) const noexcept { return time != o.time ? time > o.time : seq > o.seq; }
  };

  struct Element {
    std::size_t source = 0;
    Ticks generated{}, pre_done{}, arrived{}, service_start{}, completed{};
  };

  struct SourceState {
    SourceState(std::size_t d, std::size_t w, StreamRng r) : device(d), worker(w), rng(r) {}

    std::size_t device;
    std::size_t worker;  // index into workers_
    StreamRng rng;
    Ticks pre_time{};
    Ticks serialization{};
    std::uint64_t next_k = 0;
    std::deque<std::size_t> pre_queue;  // waiting for a core
    std::uint32_t pre_cores = 1;
    std::uint32_t pre_busy = 0;
    std::deque<std::size_t> link_queue;
    bool link_busy = false;
  };

  struct WorkerState {
    std::size_t device = 0;
    std::uint32_t servers = 0;
    Ticks service{};
    double proc_time = 0.0;  // s on one full core, for load accounting
    std::deque<std::size_t> queue;
    std::uint32_t busy = 0;
    Ticks last_change{};
    double busy_area = 0.0;  // server-seconds inside the window
    std::uint64_t arrivals = 0;
    std::uint64_t completions = 0;
  };

  void schedule(Ticks t, Kind k, std::size_t target) { events_.push({t, seq_++, k, target}); }

  bool in_window(Ticks t) const noexcept { return t >= warmup_ && t < end_; }

  void account_busy(WorkerState& wk, Ticks t) {
    const Ticks from = std::clamp(wk.last_change, warmup_, end_);
    const Ticks to = std::clamp(t, warmup_, end_);
    if (to > from) wk.busy_area += static_cast<double>(wk.busy) * to_seconds(to - from);
    wk.last_change = t;
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case Kind::generate: return generate(ev.target);
      case Kind::preprocess_done: return preprocess_done(ev.target);
      case Kind::transmit_done: return transmit_done(ev.target);
      case Kind::arrive: return arrive(ev.target);
      case Kind::service_done: return service_done(ev.target);
    }
  }

  void generate(std::size_t si) {
    if (params_.max_elements && counts_.generated >= *params_.max_elements) return;
    SourceState& s = sources_[si];
    const std::size_t id = elements_.size();
    elements_.push_back({si, now_});
    ++counts_.generated;
    ++s.next_k;
    const Ticks next = to_ticks(static_cast<double>(s.next_k) / rate_);
    if (next < end_) schedule(next, Kind::generate, si);

    if (local_) {
      elements_[id].pre_done = now_;
      ++counts_.in_transit;  // zero-length hop, keeps arrive() uniform
      arrive(id);
      return;
    }
    ++counts_.awaiting_preprocess;
    s.pre_queue.push_back(id);
    start_preprocess(s);
  }

  void start_preprocess(SourceState& s) {
    while (s.pre_busy < s.pre_cores && !s.pre_queue.empty()) {
      ++s.pre_busy;
      schedule(now_ + s.pre_time, Kind::preprocess_done, s.pre_queue.front());
      s.pre_queue.pop_front();
    }
  }

  void preprocess_done(std::size_t id) {
    Element& e = elements_[id];
    SourceState& s = sources_[e.source];
    --s.pre_busy;
    e.pre_done = now_;
    --counts_.awaiting_preprocess;
    ++counts_.in_transit;
    s.link_queue.push_back(id);
    start_transmit(s);
    start_preprocess(s);
  }

  void start_transmit(SourceState& s) {
    if (s.link_busy || s.link_queue.empty()) return;
    s.link_busy = true;
    schedule(now_ + s.serialization, Kind::transmit_done, s.link_queue.front());
  }

  void transmit_done(std::size_t id) {
    SourceState& s = sources_[elements_[id].source];
    s.link_queue.pop_front();
    s.link_busy = false;
    const Link& link = *topo_.access_link;
    const double delay_ms = s.rng.truncated_normal(link.latency_avg_ms, link.latency_sd_ms);
    schedule(now_ + to_ticks(delay_ms / 1000.0), Kind::arrive, id);
    start_transmit(s);
  }

  void arrive(std::size_t id) {
    Element& e = elements_[id];
    WorkerState& wk = workers_[sources_[e.source].worker];
    e.arrived = now_;
    --counts_.in_transit;
    ++counts_.queued;
    if (in_window(now_)) ++wk.arrivals;
    wk.queue.push_back(id);
    start_service(wk);
  }

  void start_service(WorkerState& wk) {
    while (wk.busy < wk.servers && !wk.queue.empty()) {
      const std::size_t id = wk.queue.front();
      wk.queue.pop_front();
      account_busy(wk, now_);
      ++wk.busy;
      --counts_.queued;
      ++counts_.in_service;
      elements_[id].service_start = now_;
      schedule(now_ + wk.service, Kind::service_done, id);
    }
  }

  void service_done(std::size_t id) {
    Element& e = elements_[id];
    WorkerState& wk = workers_[sources_[e.source].worker];
    e.completed = now_;
    account_busy(wk, now_);
    --wk.busy;
    --counts_.in_service;
    ++counts_.completed;
    if (in_window(now_)) ++wk.completions;
    if (e.generated >= warmup_) {
      const SourceState& s = sources_[e.source];
      records_.push_back({id, s.device, wk.device, e.generated, e.pre_done - e.generated, e.arrived - e.pre_done,
                          e.service_start - e.arrived, now_ - e.service_start, now_});
    }
    start_service(wk);
  }

  SimReport report() const {
    SimReport r;
    r.duration = params_.duration;
    r.warmup = params_.resolved_warmup();
    r.seed = params_.seed;
    r.elements = records_;
    r.final_counts = counts_;
    r.backlog_at_warmup = backlog_at_warmup_;
    r.backlog_at_end = counts_.backlog();

    const double window = to_seconds(end_ - warmup_);
    std::uint64_t completions = 0;
    for (const auto& wk : workers_) {
      const double capacity = static_cast<double>(wk.servers) * topo_.device(wk.device).quota;
      WorkerStats st;
      st.worker = wk.device;
      st.arrivals = wk.arrivals;
      st.completions = wk.completions;
      st.measured_load_percent = static_cast<double>(wk.arrivals) * wk.proc_time / window / capacity * 100.0;
      st.busy_fraction = wk.busy_area / (static_cast<double>(wk.servers) * window);
      completions += wk.completions;
      r.workers.push_back(st);
    }
    r.throughput = static_cast<double>(completions) / window;

    if (!records_.empty()) {
      // In nanoseconds, so identical latencies give an sd of exactly 0.
      const auto n = static_cast<double>(records_.size());
      Ticks sum{0};
      for (const auto& e : records_) sum += e.end_to_end();
      const double mean_ns = static_cast<double>(sum.count()) / n;
      double sq = 0.0;
      for (const auto& e : records_) {
        const double d = static_cast<double>(e.end_to_end().count()) - mean_ns;
        sq += d * d;
      }
      r.mean_latency = mean_ns / 1e9;
      r.sd_latency = std::sqrt(sq / n) / 1e9;
    }
    return r;
  }

  const Topology& topo_;
  SimParams params_;
  Ticks end_;
  Ticks warmup_;
  double rate_ = 0.0;
  bool local_ = false;

  std::vector<SourceState> sources_;
  std::vector<WorkerState> workers_;
  std::vector<Element> elements_;
  std::vector<ElementRecord> records_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
  Ticks now_{};
  StageCounts counts_;
  std::uint64_t backlog_at_warmup_ = 0;
};

}  // namespace detail

/// Runs one simulation. Overload is a valid regime: the queue grows and the
/// backlog shows up in the report.
inline SimReport simulate(const Topology& topo, const WorkloadProfile& w, const SimParams& p) {
  return detail::Simulation(topo, w, p).run();
}

/// Same, calling `observe(now, counts)` after every event.
inline SimReport simulate(const Topology& topo, const WorkloadProfile& w, const SimParams& p,
                          const std::function<void(Ticks, const StageCounts&)>& observe) {
  return detail::Simulation(topo, w, p).run(observe);
}

}  // namespace continuum
