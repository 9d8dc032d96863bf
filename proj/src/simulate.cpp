#include "mmsim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmsim/config.hpp"
#include "mmsim/errors.hpp"

namespace mmsim {

void ExperimentConfig::validate() const {
  if (!phase && !geometry) throw ConfigError("phase: missing (give phase or long-arm/short-arm)");
  if (phase && !std::isfinite(phase->radians)) throw ConfigError("phase: must be finite");
  if (geometry) geometry->validate();
  if (!std::isfinite(detector_distance) || detector_distance < 0.0) throw ConfigError("distance: must be >= 0");
  if (!(gate_window > 0.0) || !std::isfinite(gate_window)) throw ConfigError("gate-window: must be > 0");
  if (!(light_speed > 0.0) || !std::isfinite(light_speed)) throw ConfigError("c: must be > 0");
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (shards < 1) throw ConfigError("shards: must be >= 1");
  if (shards > trials) throw ConfigError("shards: must not exceed trials");
  if (model == ModelId::Ether && !ether) throw ConfigError("arm-length: ether model requires an ether configuration");
  if (model != ModelId::Ether && ether) throw ConfigError("arm-length: ether configuration given for a non-ether model");
  if (ether) ether->validate();
  if ((geometry && geometry->light_speed != light_speed) || (ether && ether->light_speed != light_speed)) {
    throw ConfigError("c: geometry and ether must use the run's light speed");
  }
  if (geometry && ether && geometry->wavelength != ether->wavelength) {
    throw ConfigError("lambda: geometry and ether wavelengths differ");
  }
}

Phase ExperimentConfig::effective_phase() const {
  if (phase) return *phase;
  if (geometry) return phase_from_geometry(*geometry);
  throw ConfigError("phase: missing (give phase or long-arm/short-arm)");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return format_config(a) == format_config(b);
}

std::uint64_t fingerprint(const ExperimentConfig& config) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : format_config(config)) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

TrialLedger TrialLedger::merged(const TrialLedger& other) const {
  if (fingerprint != other.fingerprint || seed != other.seed || rng != other.rng) {
    throw ConfigError("ledger: cannot merge ledgers of different runs");
  }
  TrialLedger out = *this;
  for (std::size_t k = 0; k < counts.size(); ++k) out.counts[k] += other.counts[k];
  out.trials += other.trials;
  return out;
}

OutcomeDistribution resolve_distribution(const ExperimentConfig& config) {
  const Phase phi = config.effective_phase();
  switch (config.model) {
    case ModelId::NonlocalQuantum:
      return quantum_joint(phi);
    case ModelId::LocalDetection:
      return local_joint(phi, separation_regime(config.detector_distance, config.gate_window, config.light_speed));
    case ModelId::Ether:
      if (!config.ether) throw ConfigError("arm-length: ether model requires an ether configuration");
      return ether_joint(phi, *config.ether);
  }
  throw ConfigError("model: unknown");
}

JointOutcome sample_trial(const OutcomeDistribution& dist, CounterStream& stream) {
  return OutcomeSampler(dist)(stream.next_uniform());
}

ShardRange shard_range(std::uint64_t trials, std::uint64_t count, std::uint64_t index) {
  // Even split; the first (trials % count) shards take one extra trial.
  const std::uint64_t base = trials / count;
  const std::uint64_t extra = trials % count;
  const std::uint64_t begin = index * base + std::min(index, extra);
  return {begin, begin + base + (index < extra ? 1 : 0)};
}

TrialLedger run_shard(const ExperimentConfig& config, std::uint64_t index, Kernel kernel) {
  config.validate();
  if (index >= config.shards) throw ConfigError("shards: shard index out of range");
  const OutcomeSampler sampler(resolve_distribution(config));
  const ShardRange range = shard_range(config.trials, config.shards, index);
  const std::uint64_t key = derive_stream_key(config.seed, index);
  const std::uint64_t n = range.end - range.begin;

  TrialLedger ledger;
  ledger.counts = kernel == Kernel::Serial ? count_outcomes_serial(sampler, key, 0, n)
                                           : count_outcomes_parallel(sampler, key, 0, n);
  ledger.trials = n;
  ledger.fingerprint = fingerprint(config);
  ledger.seed = config.seed;
  return ledger;
}

TrialLedger run(const ExperimentConfig& config, Kernel kernel) {
  config.validate();
  TrialLedger total = run_shard(config, 0, kernel);
  for (std::uint64_t s = 1; s < config.shards; ++s) total = total.merged(run_shard(config, s, kernel));
  return total;
}

}  // namespace mmsim
