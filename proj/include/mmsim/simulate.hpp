#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mmsim/ether.hpp"
#include "mmsim/kernels.hpp"
#include "mmsim/models.hpp"
#include "mmsim/rng.hpp"

namespace mmsim {

/// Full physical and run configuration of one simulated experiment.
/// When both `phase` and `geometry` are set, `phase` wins.
struct ExperimentConfig {
  ModelId model = ModelId::NonlocalQuantum;
  std::optional<Phase> phase;
  std::optional<OpticalGeometry> geometry;
  double detector_distance = 0.0;
  double gate_window = kDefaultGateWindow;
  double light_speed = kSpeedOfLight;
  std::optional<EtherConfig> ether;  // required iff model == Ether
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t shards = 1;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Phase actually used: explicit phase, else the geometry-derived one.
  [[nodiscard]] Phase effective_phase() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

/// FNV-1a 64 over the canonical key = value serialization of the config.
std::uint64_t fingerprint(const ExperimentConfig& config);

/// Aggregated outcome counts of a run (or of a single shard of it).
struct TrialLedger {
  OutcomeCounts counts{};
  std::uint64_t trials = 0;
  std::uint64_t fingerprint = 0;
  std::uint64_t seed = 0;
  std::string rng = std::string(CounterStream::kAlgorithm);

  [[nodiscard]] std::uint64_t count(JointOutcome o) const { return counts[static_cast<std::size_t>(o)]; }

  /// Sum of two ledgers from the same configuration. Commutative and associative.
  /// Throws ConfigError when fingerprints, seeds or generators differ.
  [[nodiscard]] TrialLedger merged(const TrialLedger& other) const;

  friend bool operator==(const TrialLedger&, const TrialLedger&) = default;
};

OutcomeDistribution resolve_distribution(const ExperimentConfig& config);

/// Draws one outcome using exactly one uniform variate from `stream`.
JointOutcome sample_trial(const OutcomeDistribution& dist, CounterStream& stream);

/// Trial range [begin, end) owned by shard `index` of `count` shards over `trials` trials.
struct ShardRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};
ShardRange shard_range(std::uint64_t trials, std::uint64_t count, std::uint64_t index);

enum class Kernel { Serial, Parallel };

/// Ledger of one shard: its trials are drawn from substream derive_stream_key(seed, index).
TrialLedger run_shard(const ExperimentConfig& config, std::uint64_t index, Kernel kernel = Kernel::Parallel);

/// Validates, then runs all config.shards shards and merges them.
/// The result depends only on the configuration, never on the thread count or kernel.
TrialLedger run(const ExperimentConfig& config, Kernel kernel = Kernel::Parallel);

}  // namespace mmsim
