#pragma once

// Decimal helpers shared by the config renderer and the analytic model.
//
// The analytic model compares demand against capacity with strict inequality,
// so "0.5 <= 0.5" must not flip because of binary rounding. Every double that
// enters the model is lifted to the exact rational value of its shortest
// round-trip decimal form ("0.11" -> 11/100) and all arithmetic happens on
// those rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace continuum {

using Exact = boost::multiprecision::cpp_rational;

/// Shortest text that parses back to exactly `v`.
inline std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Strict parse: the whole string must be consumed and the value finite.
inline std::optional<double> parse_double(std::string_view s) noexcept {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

/// Exact rational of the shortest decimal form of `v`.
inline Exact exact(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value has no exact decimal form");
  const std::string text = shortest(v);

  boost::multiprecision::cpp_int digits = 0;
  bool negative = false;
  int scale = 0;  // value = digits * 10^scale
  bool after_point = false;
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      after_point = true;
    } else if (c == 'e' || c == 'E') {
      scale += std::stoi(text.substr(i + 1));
      break;
    } else {
      digits = digits * 10 + (c - '0');
      if (after_point) --scale;
    }
  }

  const boost::multiprecision::cpp_int ten = 10;
  Exact out = scale >= 0 ? Exact(digits * boost::multiprecision::pow(ten, static_cast<unsigned>(scale)))
                         : Exact(digits, boost::multiprecision::pow(ten, static_cast<unsigned>(-scale)));
  return negative ? Exact(-out) : out;
}

inline double to_double(const Exact& r) { return r.convert_to<double>(); }

}  // namespace continuum
