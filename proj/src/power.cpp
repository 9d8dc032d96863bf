#include <cmath>

#include "mmsim/analysis.hpp"
#include "mmsim/errors.hpp"
#include "mmsim/kernels.hpp"
#include "mmsim/rng.hpp"

namespace mmsim {
namespace {

void check_power_inputs(const OutcomeDistribution& a, const OutcomeDistribution& b, double significance,
                        double power) {
  a.validate();
  b.validate();
  if (a == b) throw ConfigError("hypotheses: identical hypotheses cannot be separated by any sample size");
  if (!(significance > 0.0 && significance < 1.0)) throw ConfigError("significance: must lie in (0, 1)");
  if (!(power > 0.0 && power < 1.0)) throw ConfigError("power: must lie in (0, 1)");
}

/// Smallest n >= 1 with (1 - q)^n <= bound, for q in (0, 1].
std::uint64_t smallest_n_with_survival_below(double q, double bound) {
  if (q >= 1.0) return 1;
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::log(bound) / std::log1p(-q))));
  // Settle the ceiling against the direct inequality; the log ratio can land one off.
  while (n > 1 && std::pow(1.0 - q, static_cast<double>(n - 1)) <= bound) --n;
  while (std::pow(1.0 - q, static_cast<double>(n)) > bound) ++n;
  return n;
}

}  // namespace

double estimated_power(const OutcomeDistribution& a, const OutcomeDistribution& b, double significance,
                       std::uint64_t n, const PowerOptions& options) {
  if (n == 0) return 0.0;
  const OutcomeSampler sampler(a);
  std::uint64_t rejections = 0;
  for (std::uint64_t rep = 0; rep < options.repetitions; ++rep) {
    TrialLedger ledger;
    ledger.counts = count_outcomes_parallel(sampler, derive_stream_key(options.seed, rep), 0, n);
    ledger.trials = n;
    if (discriminate(ledger, a, b, significance).p_value <= significance) ++rejections;
  }
  return static_cast<double>(rejections) / static_cast<double>(options.repetitions);
}

std::uint64_t sample_size_for_power(const OutcomeDistribution& a, const OutcomeDistribution& b, double significance,
                                    double power, const PowerOptions& options) {
  check_power_inputs(a, b, significance, power);

  std::uint64_t n = 0;
  if (a.p_both == 0.0 && b.p_both > 0.0) {
    // Data from a never shows a coincidence; the exact p-value under b is (1 - q)^n with probability one.
    n = smallest_n_with_survival_below(b.p_both, significance);
  } else if (b.p_both == 0.0 && a.p_both > 0.0) {
    // A single coincidence rejects b outright, so the power is 1 - (1 - q)^n.
    n = smallest_n_with_survival_below(a.p_both, 1.0 - power);
  } else {
    if (options.repetitions == 0) throw ConfigError("repetitions: must be >= 1");
    // Repetitions reuse their substreams for every n, so the power curve is estimated with common random numbers.
    const auto reaches = [&](std::uint64_t trials) {
      return estimated_power(a, b, significance, trials, options) >= power;
    };
    std::uint64_t lo = 0;  // largest size known to fall short
    std::uint64_t hi = 1;
    while (!reaches(hi)) {
      if (hi >= options.max_trials) {
        throw ConfigError("max-trials: requested power not reached within " + std::to_string(options.max_trials) +
                          " trials");
      }
      lo = hi;
      hi = std::min(hi * 2, options.max_trials);
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (reaches(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  if (n > options.max_trials) {
    throw ConfigError("max-trials: requested power needs " + std::to_string(n) + " trials");
  }
  return n;
}

}  // namespace mmsim
