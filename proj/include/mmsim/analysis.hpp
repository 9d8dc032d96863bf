#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmsim/ether.hpp"
#include "mmsim/models.hpp"
#include "mmsim/simulate.hpp"

namespace mmsim {

/// Two-sided 95% normal quantile used for every interval.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for `successes` out of `n`. Requires n > 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = kZ95);

struct RateEstimate {
  JointOutcome outcome = JointOutcome::PlusOnly;
  std::uint64_t count = 0;
  std::uint64_t n = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

/// One estimate per outcome, in PlusOnly, MinusOnly, Both, None order.
/// Throws DataError for an empty ledger.
std::array<RateEstimate, 4> estimate_rates(const TrialLedger& ledger);

/// A candidate outcome model with a printable label such as "local:spacelike".
struct Hypothesis {
  std::string label;
  OutcomeDistribution dist;
};

/// `regime` applies to the local model only; `ether` is required for the ether model.
Hypothesis make_hypothesis(ModelId model, Phase phase, SeparationRegime regime = SeparationRegime::Spacelike,
                           const std::optional<EtherConfig>& ether = std::nullopt);

enum class Verdict { FavorsA, FavorsB, Inconclusive };
std::string_view to_string(Verdict v);

enum class TestMethod {
  ExactCoincidence,  // binomial tail on the Both count; one hypothesis forbids coincidences
  LikelihoodRatio,   // multinomial G statistic against a chi-squared reference
};
std::string_view to_string(TestMethod m);

struct DiscriminationReport {
  std::string model_a;
  std::string model_b;
  double llr = 0.0;              // log L(a) - log L(b); infinite only on certain rejection
  double p_value = 1.0;          // under the null hypothesis b
  double p_value_reverse = 1.0;  // under the null hypothesis a
  double significance = 0.05;
  TestMethod method = TestMethod::LikelihoodRatio;
  Verdict verdict = Verdict::Inconclusive;
  bool certain_rejection = false;  // an observed outcome is impossible under one hypothesis
};

/// Compares two hypotheses on observed counts.
///
/// When exactly one hypothesis gives coincidences zero probability the decisive
/// observable is the Both count, and the p-value is its exact binomial tail under
/// the null. Otherwise the p-value comes from G = 2 * sum n_k ln(n_k / (n p_k)),
/// referred to chi-squared with (support size - 1) degrees of freedom.
///
/// A verdict for a needs llr > 0 and p_value <= significance (and symmetrically
/// for b), so swapping the hypotheses negates llr and swaps the verdict.
/// Throws DataError if an observed outcome is impossible under both hypotheses.
DiscriminationReport discriminate(const TrialLedger& ledger, const Hypothesis& a, const Hypothesis& b,
                                  double significance = 0.05);
DiscriminationReport discriminate(const TrialLedger& ledger, const OutcomeDistribution& a,
                                  const OutcomeDistribution& b, double significance = 0.05);

struct SweepRow {
  Phase phase;
  ModelId model = ModelId::NonlocalQuantum;
  SeparationRegime regime = SeparationRegime::Timelike;
  OutcomeDistribution dist;
};

/// `points` phases evenly spaced over [0, 2*pi], both endpoints included.
std::vector<Phase> phase_grid(std::size_t points = 181);

/// Analytic probabilities for every (phase, model, regime) combination, phase
/// outermost. The ether rows use `ether` (its shift does not depend on the regime).
std::vector<SweepRow> sweep_phase(std::span<const ModelId> models, std::span<const SeparationRegime> regimes,
                                  std::span<const Phase> grid, const EtherConfig& ether = {});

inline constexpr const char* kSweepHeader =
    "phase_rad,model,regime,p_plus_only,p_minus_only,p_both,p_none,marginal_plus,marginal_minus";

/// CSV with kSweepHeader and 12 significant digits per number.
std::string format_sweep_csv(std::span<const SweepRow> rows);

struct PowerOptions {
  std::uint64_t seed = 0x5EEDULL;        // Monte Carlo path only
  std::uint64_t repetitions = 400;       // Monte Carlo path only
  std::uint64_t max_trials = 1'000'000;  // search ceiling
};

/// Smallest n for which data drawn from a reject b at `significance` with
/// probability >= `power`. Closed form when exactly one hypothesis forbids
/// coincidences; otherwise a seeded Monte Carlo search whose repetitions run
/// as shards of the sampling kernel. Throws ConfigError for identical hypotheses,
/// parameters outside (0, 1), or a target that needs more than max_trials.
std::uint64_t sample_size_for_power(const OutcomeDistribution& a, const OutcomeDistribution& b, double significance,
                                    double power, const PowerOptions& options = {});

/// Fraction of Monte Carlo repetitions of n trials from a whose p-value under b is <= significance.
double estimated_power(const OutcomeDistribution& a, const OutcomeDistribution& b, double significance,
                       std::uint64_t n, const PowerOptions& options = {});

}  // namespace mmsim
