#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace continuum {

// Deployment tiers, ordered from the data center outwards.
enum class Tier : std::uint8_t { cloud = 0, edge = 1, endpoint = 2 };

inline constexpr std::array<Tier, 3> kTiers{Tier::cloud, Tier::edge, Tier::endpoint};

constexpr std::size_t index_of(Tier t) noexcept { return static_cast<std::size_t>(t); }

constexpr std::string_view to_string(Tier t) noexcept {
  switch (t) {
    case Tier::cloud: return "cloud";
    case Tier::edge: return "edge";
    case Tier::endpoint: return "endpoint";
  }
  return "?";
}

inline std::optional<Tier> parse_tier(std::string_view s) noexcept {
  for (Tier t : kTiers) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

/// One value per tier, always listed in (cloud, edge, endpoint) order.
template <typename T>
struct PerTier {
  T cloud{};
  T edge{};
  T endpoint{};

  constexpr T& operator[](Tier t) noexcept {
    switch (t) {
      case Tier::cloud: return cloud;
      case Tier::edge: return edge;
      default: return endpoint;
    }
  }
  constexpr const T& operator[](Tier t) const noexcept {
    switch (t) {
      case Tier::cloud: return cloud;
      case Tier::edge: return edge;
      default: return endpoint;
    }
  }

  bool operator==(const PerTier&) const = default;
};

/// Unordered pair of tiers. Links are symmetric, so (endpoint, cloud) and
/// (cloud, endpoint) name the same pair; the stored form keeps `near <= far`
/// in tier order.
class TierPair {
 public:
  constexpr TierPair(Tier a, Tier b) noexcept
      : first_(index_of(a) <= index_of(b) ? a : b), second_(index_of(a) <= index_of(b) ? b : a) {}

  constexpr Tier first() const noexcept { return first_; }
  constexpr Tier second() const noexcept { return second_; }
  constexpr bool contains(Tier t) const noexcept { return first_ == t || second_ == t; }

  /// Canonical config key, e.g. "cloud_to_endpoint".
  std::string key() const {
    std::string out{to_string(first_)};
    out += "_to_";
    out += to_string(second_);
    return out;
  }

  /// Accepts "<tier>_to_<tier>" in either order.
  static std::optional<TierPair> parse(std::string_view key) noexcept {
    constexpr std::string_view sep = "_to_";
    const auto pos = key.find(sep);
    if (pos == std::string_view::npos) return std::nullopt;
    const auto a = parse_tier(key.substr(0, pos));
    const auto b = parse_tier(key.substr(pos + sep.size()));
    if (!a || !b) return std::nullopt;
    return TierPair{*a, *b};
  }

  friend constexpr auto operator<=>(const TierPair& l, const TierPair& r) noexcept {
    return std::pair{index_of(l.first_), index_of(l.second_)} <=>
           std::pair{index_of(r.first_), index_of(r.second_)};
  }
  friend constexpr bool operator==(const TierPair&, const TierPair&) noexcept = default;

 private:
  Tier first_;
  Tier second_;
};

/// All six unordered tier pairs in canonical order.
inline constexpr std::array<TierPair, 6> kTierPairs{
    TierPair{Tier::cloud, Tier::cloud},       TierPair{Tier::cloud, Tier::edge},
    TierPair{Tier::cloud, Tier::endpoint},    TierPair{Tier::edge, Tier::edge},
    TierPair{Tier::edge, Tier::endpoint},     TierPair{Tier::endpoint, Tier::endpoint},
};

}  // namespace continuum
