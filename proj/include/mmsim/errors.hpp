#pragma once

#include <stdexcept>
#include <string>

namespace mmsim {

/// Invalid or inconsistent configuration. Maps to CLI exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed data that no candidate model can explain. Maps to CLI exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmsim
