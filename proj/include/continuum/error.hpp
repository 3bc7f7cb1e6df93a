#pragma once

#include <stdexcept>
#include <string>

namespace continuum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or unusable deployment configuration (unknown preset, failed validation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The configuration is valid but cannot be materialized into devices and links.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// A workload does not describe what an operation needs (e.g. missing tier entry).
class WorkloadError : public Error {
 public:
  using Error::Error;
};

}  // namespace continuum
