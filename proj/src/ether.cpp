#include "mmsim/ether.hpp"

#include <cmath>

#include "mmsim/errors.hpp"

namespace mmsim {

void EtherConfig::validate() const {
  if (!std::isfinite(arm_length) || arm_length < 0.0) throw ConfigError("arm-length must be a finite length >= 0");
  if (!(light_speed > 0.0) || !std::isfinite(light_speed)) throw ConfigError("c must be > 0");
  if (!(velocity >= 0.0)) throw ConfigError("v must be >= 0");
  if (!(velocity < light_speed)) throw ConfigError("v must be below c");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw ConfigError("lambda must be > 0");
}

double ether_time_difference(const EtherConfig& cfg) {
  cfg.validate();
  if (!cfg.aligned) return 0.0;
  const double c = cfg.light_speed;
  return cfg.arm_length * cfg.velocity * cfg.velocity / (c * c * c);
}

Phase ether_phase_shift(const EtherConfig& cfg) {
  return Phase{kTwoPi * ether_time_difference(cfg) * cfg.frequency()};
}

double required_arm_length(double target_shift, double velocity, double light_speed, double wavelength) {
  if (!(target_shift >= 0.0) || !std::isfinite(target_shift)) throw ConfigError("target-shift must be >= 0");
  if (!(velocity > 0.0)) throw ConfigError("v must be > 0 for a finite arm length");
  EtherConfig probe{0.0, velocity, wavelength, light_speed, true};
  probe.validate();
  return target_shift * light_speed * light_speed * wavelength / (kTwoPi * velocity * velocity);
}

OutcomeDistribution ether_joint(Phase phase, const EtherConfig& cfg) {
  return quantum_joint(phase + ether_phase_shift(cfg));
}

}  // namespace mmsim
