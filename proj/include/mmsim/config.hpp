#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mmsim/simulate.hpp"

namespace mmsim {

/// Flat `key = value` settings. Lines starting with '#' and blank lines are ignored.
class KeyValues {
 public:
  KeyValues() = default;

  /// Throws ConfigError on a line without '=' or a duplicated key, naming the line.
  static KeyValues parse(std::string_view text);
  static KeyValues load(const std::string& path);

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  /// Later values override earlier ones.
  void merge_from(const KeyValues& other);
  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
  [[nodiscard]] const std::map<std::string, std::string>& entries() const { return values_; }

  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  [[nodiscard]] std::string require(const std::string& key) const;
  [[nodiscard]] std::optional<double> get_double(const std::string& key) const;
  [[nodiscard]] double require_double(const std::string& key) const;
  [[nodiscard]] std::optional<std::uint64_t> get_u64(const std::string& key) const;
  [[nodiscard]] std::optional<bool> get_bool(const std::string& key) const;

  /// Throws ConfigError naming the first key not contained in `allowed` (comma separated).
  void reject_unknown(std::string_view allowed) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Physical constants shared by every subcommand.
struct PhysicalConstants {
  double light_speed = kSpeedOfLight;
  double wavelength = kDefaultWavelength;
  double ether_velocity = kDefaultEtherVelocity;
  double gate_window = kDefaultGateWindow;
};

/// Reads c, lambda, v, gate-window. `paper-constants = true` sets c = 3.0e8 unless `c` is also given.
PhysicalConstants constants_from(const KeyValues& kv);

/// Builds and validates an ExperimentConfig. Required keys: model, trials, and either
/// phase / phase-deg or long-arm + short-arm; ether additionally requires arm-length.
ExperimentConfig experiment_from(const KeyValues& kv);

/// Keys accepted by experiment_from.
inline constexpr std::string_view kExperimentKeys =
    "model,phase,phase-deg,long-arm,short-arm,lambda,distance,gate-window,c,v,paper-constants,"
    "arm-length,aligned,trials,seed,shards";

/// Canonical key = value text; experiment_from(KeyValues::parse(format_config(c))) == c.
std::string format_config(const ExperimentConfig& config);

/// Shortest "%.17g" rendering; round-trips any finite double.
std::string format_exact(double v);

}  // namespace mmsim
