#pragma once

// Deployment configuration: the sectioned key = value format used to
// describe an emulated cloud/edge/endpoint setup, its validation rules, a
// canonical renderer, and the four reference deployments.
//
//   [infrastructure]
//   devices_per_tier = 10,0,40      # cloud, edge, endpoint
//   cloud_to_endpoint = 45,5        # latency: average,variability (ms)
//   cloud_to_endpoint = 8           # throughput: average (Mbit/s)
//   [benchmark]
//   data_generation_frequency = 5
//
// A tier-pair key with two values is a latency, with one value a
// throughput; each may appear once per pair.

#include "continuum/decimal.hpp"
#include "continuum/error.hpp"
#include "continuum/tier.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace continuum {

struct Latency {
  double average_ms = 0.0;
  double variability_ms = 0.0;  // standard deviation, normal truncated at 0

  bool operator==(const Latency&) const = default;
};

struct BenchmarkConfig {
  bool use_benchmark = false;
  double data_generation_frequency = 0.0;  // Hz, per endpoint
  std::string application;
  std::string resource_manager;  // recorded only

  bool operator==(const BenchmarkConfig&) const = default;
};

struct DeploymentConfig {
  // Emulation-only settings: kept verbatim, never used for computation.
  std::optional<std::string> hypervisor;
  std::optional<bool> thread_pinning;
  std::optional<std::vector<std::string>> machine_address;

  PerTier<std::uint32_t> devices_per_tier;
  PerTier<std::uint32_t> cores_per_device;
  PerTier<double> quota_per_cpu;

  std::map<TierPair, Latency> latency;
  std::map<TierPair, double> throughput;  // Mbit/s

  BenchmarkConfig benchmark;

  bool operator==(const DeploymentConfig&) const = default;
};

enum class Severity { error, warning };

inline std::string_view to_string(Severity s) noexcept {
  return s == Severity::error ? "error" : "warning";
}

struct Diagnostic {
  Severity severity = Severity::error;
  std::string key;
  std::string message;
  int line = 0;  // 1-based source line, 0 when not tied to text

  bool operator==(const Diagnostic&) const = default;
};

inline std::string format(const Diagnostic& d) {
  std::string out{to_string(d.severity)};
  out += ": ";
  if (!d.key.empty()) out += d.key;
  if (d.line > 0) out += " (line " + std::to_string(d.line) + ")";
  out += ": ";
  out += d.message;
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

/// Outcome of parsing. `config` is engaged only when there are no errors.
struct ParseResult {
  std::optional<DeploymentConfig> config;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return config.has_value(); }
};

/// Tier that hosts processing: edge if it has devices, else cloud, else the
/// endpoints themselves (peer offloading).
inline std::optional<Tier> worker_tier(const DeploymentConfig& c) noexcept {
  if (c.devices_per_tier.edge > 0) return Tier::edge;
  if (c.devices_per_tier.cloud > 0) return Tier::cloud;
  if (c.devices_per_tier.endpoint > 0) return Tier::endpoint;
  return std::nullopt;
}

/// Every invariant violation plus one warning per emulation-only key.
inline std::vector<Diagnostic> validate(const DeploymentConfig& c) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string key, std::string msg) {
    out.push_back({Severity::error, std::move(key), std::move(msg), 0});
  };

  if (c.hypervisor) out.push_back({Severity::warning, "hypervisor", "emulation-only setting, ignored", 0});
  if (c.thread_pinning) out.push_back({Severity::warning, "thread_pinning", "emulation-only setting, ignored", 0});
  if (c.machine_address) out.push_back({Severity::warning, "machine_address", "emulation-only setting, ignored", 0});

  for (Tier t : kTiers) {
    const double q = c.quota_per_cpu[t];
    const std::string tier{to_string(t)};
    if (!(q >= 0.0 && q <= 1.0)) {
      error("quota_per_cpu", tier + " quota " + shortest(q) + " outside [0, 1]");
    } else if (c.devices_per_tier[t] > 0 && q == 0.0) {
      error("quota_per_cpu", tier + " tier has devices but quota 0");
    }
    if (c.devices_per_tier[t] > 0 && c.cores_per_device[t] == 0) {
      error("cores_per_device", tier + " tier has devices but 0 cores");
    }
  }

  for (const auto& [pair, lat] : c.latency) {
    if (!(lat.average_ms >= 0.0)) error(pair.key(), "latency average must be >= 0");
    if (!(lat.variability_ms >= 0.0)) error(pair.key(), "latency variability must be >= 0");
  }
  for (const auto& [pair, mbps] : c.throughput) {
    if (!(mbps > 0.0)) error(pair.key(), "throughput must be > 0");
  }

  if (!(c.benchmark.data_generation_frequency >= 0.0)) {
    error("data_generation_frequency", "must be >= 0");
  }

  const auto workers = worker_tier(c);
  if (c.devices_per_tier.endpoint == 0) {
    error("devices_per_tier", "no endpoint devices to generate data");
  } else if (workers) {
    const TierPair access{Tier::endpoint, *workers};
    if (!c.latency.contains(access)) error(access.key(), "missing latency for the endpoint-to-worker link");
    if (!c.throughput.contains(access)) error(access.key(), "missing throughput for the endpoint-to-worker link");
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<bool> parse_bool(std::string_view s) noexcept {
  if (s == "True" || s == "true") return true;
  if (s == "False" || s == "false") return false;
  return std::nullopt;
}

inline std::optional<std::uint32_t> parse_count(std::string_view s) noexcept {
  std::uint32_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline bool is_key_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

enum class Section { none, infrastructure, benchmark };

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      line(trim(raw), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }

    for (const char* key : {"devices_per_tier", "cores_per_device", "quota_per_cpu"}) {
      if (!seen_.contains(std::string("infrastructure/") + key)) {
        error(key, 0, "required key missing from [infrastructure]");
      }
    }

    ParseResult result;
    if (!has_errors(diags_)) {
      auto semantic = validate(cfg_);
      // validate() knows nothing about lines; attach them where we can.
      for (auto& d : semantic) {
        if (const auto it = key_lines_.find(d.key); it != key_lines_.end()) d.line = it->second;
      }
      diags_.insert(diags_.end(), semantic.begin(), semantic.end());
    }
    if (!has_errors(diags_)) result.config = std::move(cfg_);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  void error(std::string key, int line, std::string msg) {
    diags_.push_back({Severity::error, std::move(key), std::move(msg), line});
  }

  void line(std::string_view l, int n) {
    if (l.empty() || l.front() == '#') return;
    if (l.front() == '[') {
      if (l.back() != ']') return error("", n, "malformed section header");
      const auto name = trim(l.substr(1, l.size() - 2));
      Section next = Section::none;
      if (name == "infrastructure") next = Section::infrastructure;
      else if (name == "benchmark") next = Section::benchmark;
      else return error(std::string(name), n, "unknown section");
      if (!sections_.insert(std::string(name)).second) return error(std::string(name), n, "duplicate section");
      section_ = next;
      return;
    }
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) return error("", n, "expected 'key = value'");
    const auto key = trim(l.substr(0, eq));
    const auto value = trim(l.substr(eq + 1));
    if (key.empty() || !std::all_of(key.begin(), key.end(), is_key_char)) {
      return error(std::string(key), n, "malformed key");
    }
    if (section_ == Section::none) return error(std::string(key), n, "key outside of any section");
    if (value.empty()) return error(std::string(key), n, "missing value");
    if (section_ == Section::infrastructure) infrastructure(std::string(key), value, n);
    else benchmark(std::string(key), value, n);
  }

  // Returns false (and records an error) if `identity` was already set in this section.
  bool first_time(const std::string& identity, const std::string& key, int n) {
    if (!seen_.insert(identity).second) {
      error(key, n, "duplicate key in section");
      return false;
    }
    key_lines_.emplace(key, n);
    return true;
  }

  template <typename T, typename F>
  void triple(const std::string& key, std::string_view value, int n, PerTier<T>& dst, F parse_one,
              const char* what) {
    const auto parts = split_commas(value);
    if (parts.size() != 3) return error(key, n, "expected 3 comma-separated values (cloud, edge, endpoint)");
    PerTier<T> tmp;
    for (Tier t : kTiers) {
      const auto v = parse_one(parts[index_of(t)]);
      if (!v) return error(key, n, std::string("expected ") + what + ", got '" + std::string(parts[index_of(t)]) + "'");
      tmp[t] = *v;
    }
    dst = tmp;
  }

  void infrastructure(const std::string& key, std::string_view value, int n) {
    if (const auto pair = TierPair::parse(key)) return tier_pair(key, *pair, value, n);
    if (!first_time("infrastructure/" + key, key, n)) return;

    if (key == "hypervisor") {
      cfg_.hypervisor = std::string(value);
    } else if (key == "thread_pinning") {
      const auto b = parse_bool(value);
      if (!b) return error(key, n, "expected True or False");
      cfg_.thread_pinning = *b;
    } else if (key == "machine_address") {
      std::vector<std::string> addrs;
      for (auto a : split_commas(value)) {
        if (a.empty()) return error(key, n, "empty address");
        addrs.emplace_back(a);
      }
      cfg_.machine_address = std::move(addrs);
    } else if (key == "devices_per_tier") {
      triple(key, value, n, cfg_.devices_per_tier, parse_count, "a non-negative integer");
    } else if (key == "cores_per_device") {
      triple(key, value, n, cfg_.cores_per_device, parse_count, "a non-negative integer");
    } else if (key == "quota_per_cpu") {
      triple(key, value, n, cfg_.quota_per_cpu, parse_double, "a number");
    } else {
      error(key, n, "unknown key in [infrastructure]");
    }
  }

  void tier_pair(const std::string& key, TierPair pair, std::string_view value, int n) {
    const auto parts = split_commas(value);
    if (parts.size() == 2) {
      if (!first_time("latency/" + pair.key(), key, n)) return;
      const auto avg = parse_double(parts[0]);
      const auto var = parse_double(parts[1]);
      if (!avg || !var) return error(key, n, "expected numeric 'average,variability'");
      cfg_.latency[pair] = Latency{*avg, *var};
    } else if (parts.size() == 1) {
      if (!first_time("throughput/" + pair.key(), key, n)) return;
      const auto mbps = parse_double(parts[0]);
      if (!mbps) return error(key, n, "expected numeric throughput");
      cfg_.throughput[pair] = *mbps;
    } else {
      error(key, n, "expected 'average,variability' (latency) or 'average' (throughput)");
    }
  }

  void benchmark(const std::string& key, std::string_view value, int n) {
    if (!first_time("benchmark/" + key, key, n)) return;
    if (key == "use_benchmark") {
      const auto b = parse_bool(value);
      if (!b) return error(key, n, "expected True or False");
      cfg_.benchmark.use_benchmark = *b;
    } else if (key == "data_generation_frequency") {
      const auto v = parse_double(value);
      if (!v) return error(key, n, "expected a number");
      cfg_.benchmark.data_generation_frequency = *v;
    } else if (key == "application") {
      cfg_.benchmark.application = std::string(value);
    } else if (key == "resource_manager") {
      cfg_.benchmark.resource_manager = std::string(value);
    } else {
      error(key, n, "unknown key in [benchmark]");
    }
  }

  DeploymentConfig cfg_;
  std::vector<Diagnostic> diags_;
  Section section_ = Section::none;
  std::set<std::string> sections_;
  std::set<std::string> seen_;
  std::map<std::string, int> key_lines_;
};

}  // namespace detail

/// Parses and validates. Warnings never block; any error leaves `config` empty.
inline ParseResult parse_config(std::string_view text) { return detail::Parser{}.run(text); }

/// Canonical text: infrastructure first, then benchmark; numbers in shortest
/// round-trip form; optional keys omitted when unset.
inline std::string render_config(const DeploymentConfig& c) {
  std::ostringstream os;
  auto tri = [&](const char* key, const auto& v, auto fmt) {
    os << key << " = " << fmt(v.cloud) << ',' << fmt(v.edge) << ',' << fmt(v.endpoint) << '\n';
  };
  auto count = [](std::uint32_t v) { return std::to_string(v); };
  auto num = [](double v) { return shortest(v); };

  os << "[infrastructure]\n";
  if (c.hypervisor) os << "hypervisor = " << *c.hypervisor << '\n';
  if (c.thread_pinning) os << "thread_pinning = " << (*c.thread_pinning ? "True" : "False") << '\n';
  os << "\n# VM settings for cloud, edge, endpoint\n";
  tri("devices_per_tier", c.devices_per_tier, count);
  tri("cores_per_device", c.cores_per_device, count);
  tri("quota_per_cpu", c.quota_per_cpu, num);
  if (!c.latency.empty()) {
    os << "\n# Latency (ms): average,variability\n";
    for (const auto& [pair, lat] : c.latency) {
      os << pair.key() << " = " << shortest(lat.average_ms) << ',' << shortest(lat.variability_ms) << '\n';
    }
  }
  if (!c.throughput.empty()) {
    os << "\n# Throughput (Mbit): average\n";
    for (const auto& [pair, mbps] : c.throughput) os << pair.key() << " = " << shortest(mbps) << '\n';
  }
  if (c.machine_address) {
    os << "\nmachine_address = ";
    for (std::size_t i = 0; i < c.machine_address->size(); ++i) {
      os << (i ? "," : "") << (*c.machine_address)[i];
    }
    os << '\n';
  }
  os << "\n[benchmark]\n";
  os << "use_benchmark = " << (c.benchmark.use_benchmark ? "True" : "False") << '\n';
  os << "data_generation_frequency = " << shortest(c.benchmark.data_generation_frequency) << '\n';
  if (!c.benchmark.application.empty()) os << "application = " << c.benchmark.application << '\n';
  if (!c.benchmark.resource_manager.empty()) os << "resource_manager = " << c.benchmark.resource_manager << '\n';
  return os.str();
}

// Reference deployments ------------------------------------------------------

inline constexpr std::array<std::string_view, 4> kPresetNames{"cloud", "edge-large", "edge-small", "mist"};

inline bool is_preset(std::string_view name) noexcept {
  return std::find(kPresetNames.begin(), kPresetNames.end(), name) != kPresetNames.end();
}

/// Canonical position of a preset name in kPresetNames; npos if unknown.
inline std::size_t preset_rank(std::string_view name) noexcept {
  const auto it = std::find(kPresetNames.begin(), kPresetNames.end(), name);
  return it == kPresetNames.end() ? std::string_view::npos : static_cast<std::size_t>(it - kPresetNames.begin());
}

/// The four reference deployments. Endpoints that only generate data use the
/// same 1 core at quota 0.5 as the example configuration; every
/// endpoint-to-worker link carries 8 Mbit/s.
inline DeploymentConfig load_preset(std::string_view name) {
  DeploymentConfig c;
  c.benchmark.use_benchmark = true;
  c.benchmark.data_generation_frequency = 5.0;
  c.benchmark.application = "image_classification";
  constexpr double kAccessMbps = 8.0;

  if (name == "cloud") {
    c.devices_per_tier = {11, 0, 40};
    c.cores_per_device = {4, 0, 1};
    c.quota_per_cpu = {1.0, 0.0, 0.5};
    c.latency[{Tier::cloud, Tier::cloud}] = {1.0, 0.0};
    c.latency[{Tier::cloud, Tier::endpoint}] = {45.0, 5.0};
    c.throughput[{Tier::cloud, Tier::cloud}] = 1000.0;
    c.throughput[{Tier::cloud, Tier::endpoint}] = kAccessMbps;
    c.benchmark.resource_manager = "kubernetes";
  } else if (name == "edge-large" || name == "edge-small") {
    const bool large = name == "edge-large";
    c.devices_per_tier = {1, 10, large ? 40u : 20u};
    c.cores_per_device = {4, large ? 4u : 2u, 1};
    c.quota_per_cpu = {1.0, large ? 1.0 : 0.75, 0.5};
    c.latency[{Tier::edge, Tier::endpoint}] = {large ? 30.0 : 7.5, 0.0};
    c.throughput[{Tier::edge, Tier::endpoint}] = kAccessMbps;
    c.benchmark.resource_manager = "kubeedge";
  } else if (name == "mist") {
    c.devices_per_tier = {0, 0, 20};
    c.cores_per_device = {0, 0, 2};
    c.quota_per_cpu = {0.0, 0.0, 0.5};
    c.latency[{Tier::endpoint, Tier::endpoint}] = {7.5, 0.0};
    c.throughput[{Tier::endpoint, Tier::endpoint}] = kAccessMbps;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected cloud, edge-large, edge-small or mist)");
  }
  return c;
}

}  // namespace continuum
