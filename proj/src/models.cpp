#include "mmsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mmsim/errors.hpp"

namespace mmsim {

Phase Phase::canonical() const {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a multiple of 2*pi can round up to 2*pi itself.
  if (r >= kTwoPi) r = 0.0;
  return Phase{r};
}

void OpticalGeometry::validate() const {
  if (!std::isfinite(long_arm) || long_arm < 0.0) throw ConfigError("long-arm must be a finite length >= 0");
  if (!std::isfinite(short_arm) || short_arm < 0.0) throw ConfigError("short-arm must be a finite length >= 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw ConfigError("lambda must be > 0");
  if (!(light_speed > 0.0) || !std::isfinite(light_speed)) throw ConfigError("c must be > 0");
}

void OutcomeDistribution::validate() const {
  for (double p : as_array()) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("outcome probability outside [0, 1]");
  }
  if (std::abs(total() - 1.0) > 1e-12) throw std::invalid_argument("outcome probabilities do not sum to 1");
}

std::string_view to_string(SeparationRegime r) {
  return r == SeparationRegime::Timelike ? "timelike" : "spacelike";
}

std::string_view to_string(ModelId m) {
  switch (m) {
    case ModelId::NonlocalQuantum: return "quantum";
    case ModelId::LocalDetection: return "local";
    case ModelId::Ether: return "ether";
  }
  return "?";
}

std::string_view to_string(JointOutcome o) {
  switch (o) {
    case JointOutcome::PlusOnly: return "PlusOnly";
    case JointOutcome::MinusOnly: return "MinusOnly";
    case JointOutcome::Both: return "Both";
    case JointOutcome::None: return "None";
  }
  return "?";
}

SeparationRegime parse_regime(std::string_view s) {
  if (s == "timelike") return SeparationRegime::Timelike;
  if (s == "spacelike") return SeparationRegime::Spacelike;
  throw ConfigError("unknown regime '" + std::string(s) + "' (expected timelike or spacelike)");
}

ModelId parse_model(std::string_view s) {
  if (s == "quantum") return ModelId::NonlocalQuantum;
  if (s == "local") return ModelId::LocalDetection;
  if (s == "ether") return ModelId::Ether;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected quantum, local or ether)");
}

JointOutcome parse_outcome(std::string_view s) {
  for (JointOutcome o : kAllOutcomes) {
    if (to_string(o) == s) return o;
  }
  throw ConfigError("unknown outcome '" + std::string(s) + "'");
}

Phase phase_from_geometry(const OpticalGeometry& geom) {
  geom.validate();
  return Phase{kTwoPi * (geom.long_arm - geom.short_arm) / geom.wavelength};
}

double single_detector_probability(Phase phase, Detector a) {
  return 0.5 * (1.0 + static_cast<int>(a) * std::cos(phase.radians));
}

double single_detector_probability(Phase phase, int a) {
  if (a != 1 && a != -1) throw std::invalid_argument("detection label must be +1 or -1, got " + std::to_string(a));
  return single_detector_probability(phase, static_cast<Detector>(a));
}

SeparationRegime separation_regime(double distance, double gate_window, double light_speed) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) throw std::invalid_argument("detector distance must be >= 0");
  if (!(gate_window > 0.0)) throw std::invalid_argument("gate window must be > 0");
  if (!(light_speed > 0.0)) throw std::invalid_argument("light speed must be > 0");
  return distance <= light_speed * gate_window ? SeparationRegime::Timelike : SeparationRegime::Spacelike;
}

OutcomeDistribution quantum_joint(Phase phase) {
  const double c = std::cos(phase.radians);
  return {0.5 * (1.0 + c), 0.5 * (1.0 - c), 0.0, 0.0};
}

OutcomeDistribution local_joint(Phase phase, SeparationRegime regime) {
  if (regime == SeparationRegime::Timelike) return quantum_joint(phase);
  const double c = std::cos(phase.radians);
  const double c2 = c * c;
  const double coincident = 0.25 * (1.0 - c2);
  return {0.25 * (1.0 + 2.0 * c + c2), 0.25 * (1.0 - 2.0 * c + c2), coincident, coincident};
}

double coincidence_rate_change(Phase phase) {
  return local_joint(phase, SeparationRegime::Spacelike).p_both -
         local_joint(phase, SeparationRegime::Timelike).p_both;
}

Phase phase_shift_for_rate_change(Phase base_phase, Detector a, double new_rate) {
  if (!(new_rate >= 0.0 && new_rate <= 1.0)) throw std::invalid_argument("new rate must lie in [0, 1]");
  // (1 + a cos x)/2 = r  <=>  cos x = a (2r - 1)
  const double target_cos = std::clamp(static_cast<int>(a) * (2.0 * new_rate - 1.0), -1.0, 1.0);
  const double angle = std::acos(target_cos);
  const double up = std::remainder(angle - base_phase.radians, kTwoPi);
  const double down = std::remainder(-angle - base_phase.radians, kTwoPi);
  constexpr double kTieTolerance = 1e-12;
  if (std::abs(std::abs(up) - std::abs(down)) <= kTieTolerance) return Phase{std::max(up, down)};
  return Phase{std::abs(up) < std::abs(down) ? up : down};
}

}  // namespace mmsim
