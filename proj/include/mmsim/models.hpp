#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace mmsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Vacuum speed of light used unless a caller overrides it.
inline constexpr double kSpeedOfLight = 299'792'458.0;
/// Rounded value the published design numbers (0.75 m threshold, L = 7.5 m) are based on.
inline constexpr double kPaperSpeedOfLight = 3.0e8;
inline constexpr double kDefaultGateWindow = 2.5e-9;
inline constexpr double kDefaultWavelength = 900e-9;
inline constexpr double kDefaultEtherVelocity = 3.0e4;

/// Interferometer phase in radians. Any finite value is accepted.
struct Phase {
  double radians = 0.0;

  constexpr Phase() = default;
  constexpr explicit Phase(double r) : radians(r) {}

  /// Equivalent phase in [0, 2*pi).
  [[nodiscard]] Phase canonical() const;

  friend constexpr Phase operator+(Phase a, Phase b) { return Phase{a.radians + b.radians}; }
  friend constexpr bool operator==(Phase, Phase) = default;
};

struct OpticalGeometry {
  double long_arm = 0.0;   // l, meters
  double short_arm = 0.0;  // s, meters
  double wavelength = kDefaultWavelength;
  double light_speed = kSpeedOfLight;

  void validate() const;
  /// Optical path delay (l - s) / c in seconds.
  [[nodiscard]] double delay() const { return (long_arm - short_arm) / light_speed; }
  /// Angular frequency 2*pi*c / lambda.
  [[nodiscard]] double angular_frequency() const { return kTwoPi * light_speed / wavelength; }
};

enum class SeparationRegime { Timelike, Spacelike };

enum class ModelId { NonlocalQuantum, LocalDetection, Ether };

/// Which detector fired in a gated trial. The order fixes the sampling
/// inversion order and the index into OutcomeDistribution::as_array().
enum class JointOutcome : std::size_t { PlusOnly = 0, MinusOnly = 1, Both = 2, None = 3 };

inline constexpr std::array<JointOutcome, 4> kAllOutcomes = {
    JointOutcome::PlusOnly, JointOutcome::MinusOnly, JointOutcome::Both, JointOutcome::None};

/// Detection label a: +1 for D(+), -1 for D(-).
enum class Detector : int { Plus = +1, Minus = -1 };

/// Exact probabilities over the four joint detector outcomes.
struct OutcomeDistribution {
  double p_plus_only = 0.0;  // P(1,0)
  double p_minus_only = 0.0; // P(0,1)
  double p_both = 0.0;       // P(1,1)
  double p_none = 0.0;       // P(0,0)

  [[nodiscard]] double marginal_plus() const { return p_plus_only + p_both; }
  [[nodiscard]] double marginal_minus() const { return p_minus_only + p_both; }
  [[nodiscard]] double total() const { return p_plus_only + p_minus_only + p_both + p_none; }
  [[nodiscard]] double probability(JointOutcome o) const { return as_array()[static_cast<std::size_t>(o)]; }
  [[nodiscard]] std::array<double, 4> as_array() const { return {p_plus_only, p_minus_only, p_both, p_none}; }

  /// Throws std::invalid_argument if a component leaves [0, 1] or the sum departs from 1 by more than 1e-12.
  void validate() const;

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

std::string_view to_string(SeparationRegime r);
std::string_view to_string(ModelId m);
std::string_view to_string(JointOutcome o);
/// Accepts "timelike"/"spacelike"; throws ConfigError otherwise.
SeparationRegime parse_regime(std::string_view s);
/// Accepts "quantum", "local", "ether"; throws ConfigError otherwise.
ModelId parse_model(std::string_view s);
JointOutcome parse_outcome(std::string_view s);

/// Phi = 2*pi*(l - s)/lambda. Throws ConfigError on invalid geometry.
Phase phase_from_geometry(const OpticalGeometry& geom);

/// Counting probability of a single detector, (1 + a cos Phi)/2.
double single_detector_probability(Phase phase, Detector a);
/// Integer-label overload; throws std::invalid_argument unless a is +1 or -1.
double single_detector_probability(Phase phase, int a);

/// Timelike iff d <= c * gate_window; the boundary itself is timelike.
SeparationRegime separation_regime(double distance, double gate_window, double light_speed);

/// Nonlocal quantum prediction: perfect anticorrelation at every separation.
OutcomeDistribution quantum_joint(Phase phase);

/// Local-at-detection prediction. Timelike separation coincides with quantum_joint;
/// spacelike separation makes the detectors fire independently.
OutcomeDistribution local_joint(Phase phase, SeparationRegime regime);

/// Change in coincidence probability when the detectors move from timelike to spacelike separation.
double coincidence_rate_change(Phase phase);

/// Smallest-magnitude shift Delta with (1 + a cos(Phi + Delta))/2 == new_rate.
/// Ties resolve toward positive Delta. Throws std::invalid_argument if new_rate is outside [0, 1].
Phase phase_shift_for_rate_change(Phase base_phase, Detector a, double new_rate);

}  // namespace mmsim
