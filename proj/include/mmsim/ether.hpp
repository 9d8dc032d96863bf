#pragma once

#include "mmsim/models.hpp"

namespace mmsim {

/// Ether-wind interferometer: one arm of length L possibly aligned with the
/// Earth's velocity v relative to the ether.
struct EtherConfig {
  double arm_length = 0.0;  // L, meters
  double velocity = kDefaultEtherVelocity;
  double wavelength = kDefaultWavelength;
  double light_speed = kSpeedOfLight;
  bool aligned = true;

  /// Throws ConfigError unless L >= 0, 0 <= v < c, lambda > 0.
  void validate() const;
  [[nodiscard]] double frequency() const { return light_speed / wavelength; }
};

/// Arm transit-time difference L v^2 / c^3 (zero when not aligned).
double ether_time_difference(const EtherConfig& cfg);

/// Induced phase shift 2*pi * dt * nu = 2*pi L v^2 / (c^2 lambda).
Phase ether_phase_shift(const EtherConfig& cfg);

/// Arm length producing target_shift; inverse of ether_phase_shift.
/// Throws ConfigError for v == 0 or a negative target.
double required_arm_length(double target_shift, double velocity, double light_speed, double wavelength);

/// quantum_joint evaluated at the ether-shifted phase.
OutcomeDistribution ether_joint(Phase phase, const EtherConfig& cfg);

}  // namespace mmsim
