#include "mmsim/simulate.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <set>

#include "mmsim/errors.hpp"
#include "mmsim/kernels.hpp"
#include "mmsim/ledger_io.hpp"
#include "mmsim/rng.hpp"

using namespace mmsim;

namespace {

ExperimentConfig local_config(double phase, double distance, std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.model = ModelId::LocalDetection;
  c.phase = Phase{phase};
  c.detector_distance = distance;
  c.light_speed = kPaperSpeedOfLight;
  c.trials = trials;
  c.seed = seed;
  return c;
}

double binomial_sigma(double n, double p) { return std::sqrt(n * p * (1.0 - p)); }

}  // namespace

TEST(counter_stream, uniform_range_and_sequencing) {
  CounterStream s(derive_stream_key(42, 0));
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = s.next_uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(u, CounterStream::uniform_at(s.key(), i));
  }
  EXPECT_EQ(s.position(), 10000u);
}

TEST(counter_stream, substreams_differ) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    for (std::uint64_t shard = 0; shard < 16; ++shard) keys.insert(derive_stream_key(seed, shard));
  }
  EXPECT_EQ(keys.size(), 256u);
}

TEST(counter_stream, mean_and_variance) {
  const std::uint64_t key = derive_stream_key(7, 3);
  const int n = 1'000'000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = CounterStream::uniform_at(key, i);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n - mean * mean, 1.0 / 12.0, 1e-3);
}

TEST(resolve_distribution, examples) {
  for (double p : resolve_distribution(local_config(kPi / 2, 1.0, 1, 0)).as_array()) EXPECT_NEAR(p, 0.25, 1e-12);
  EXPECT_EQ(resolve_distribution(local_config(kPi / 2, 0.5, 1, 0)), quantum_joint(Phase{kPi / 2}));
  for (double d : {0.0, 0.5, 0.75, 1.0, 100.0}) {
    ExperimentConfig c = local_config(kPi / 2, d, 1, 0);
    c.model = ModelId::NonlocalQuantum;
    const auto dist = resolve_distribution(c);
    EXPECT_NEAR(dist.p_plus_only, 0.5, 1e-12);
    EXPECT_NEAR(dist.p_minus_only, 0.5, 1e-12);
    EXPECT_EQ(dist.p_both, 0.0);
    EXPECT_EQ(dist.p_none, 0.0);
  }
}

TEST(resolve_distribution, phase_overrides_geometry) {
  ExperimentConfig c = local_config(kPi / 2, 1.0, 1, 0);
  c.geometry = OpticalGeometry{1.0, 1.0, kDefaultWavelength, kPaperSpeedOfLight};
  EXPECT_EQ(c.effective_phase().radians, kPi / 2);
  c.phase.reset();
  EXPECT_EQ(c.effective_phase().radians, 0.0);
  EXPECT_EQ(resolve_distribution(c), (OutcomeDistribution{1.0, 0.0, 0.0, 0.0}));
}

TEST(resolve_distribution, ether_requires_config) {
  ExperimentConfig c = local_config(kPi / 2, 1.0, 1, 0);
  c.model = ModelId::Ether;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(resolve_distribution(c), ConfigError);
  EXPECT_THROW(run(c), ConfigError);
  c.ether = EtherConfig{7.5, 3.0e4, 900e-9, kPaperSpeedOfLight, true};
  EXPECT_NO_THROW(c.validate());
  EXPECT_NEAR(resolve_distribution(c).p_plus_only, 0.25, 1e-12);
}

TEST(experiment_config, validation_names_field) {
  ExperimentConfig c = local_config(kPi / 2, 1.0, 0, 0);
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("trials"), std::string::npos);
  }
  c = local_config(kPi / 2, -1.0, 10, 0);
  EXPECT_THROW(c.validate(), ConfigError);
  c = local_config(kPi / 2, 1.0, 10, 0);
  c.gate_window = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = local_config(kPi / 2, 1.0, 10, 0);
  c.phase.reset();
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(sample_trial, degenerate_distribution) {
  CounterStream s(1);
  for (int i = 0; i < 10000; ++i) EXPECT_EQ(sample_trial({1.0, 0.0, 0.0, 0.0}, s), JointOutcome::PlusOnly);
  for (int i = 0; i < 10000; ++i) EXPECT_EQ(sample_trial({0.0, 0.0, 0.0, 1.0}, s), JointOutcome::None);
  EXPECT_EQ(s.position(), 20000u);
}

TEST(outcome_sampler, inversion_boundaries) {
  const OutcomeSampler sampler({0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(sampler(0.0), JointOutcome::PlusOnly);
  EXPECT_EQ(sampler(0.2499999), JointOutcome::PlusOnly);
  EXPECT_EQ(sampler(0.25), JointOutcome::MinusOnly);
  EXPECT_EQ(sampler(0.5), JointOutcome::Both);
  EXPECT_EQ(sampler(0.75), JointOutcome::None);
  EXPECT_EQ(sampler(std::nextafter(1.0, 0.0)), JointOutcome::None);
  // Trailing zero-probability outcomes are unreachable even for u at the top of [0, 1).
  const OutcomeSampler quantum({0.5, 0.5, 0.0, 0.0});
  EXPECT_EQ(quantum(std::nextafter(1.0, 0.0)), JointOutcome::MinusOnly);
  // A zero in the middle of the order is skipped.
  const OutcomeSampler gap({0.5, 0.0, 0.0, 0.5});
  EXPECT_EQ(gap(0.5), JointOutcome::None);
}

TEST(sample_trial, uniform_distribution_within_4_sigma) {
  const OutcomeSampler sampler({0.25, 0.25, 0.25, 0.25});
  const auto counts = count_outcomes_serial(sampler, derive_stream_key(42, 0), 0, 1'000'000);
  const double bound = 4 * binomial_sigma(1e6, 0.25);
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c), 250'000.0, bound);
}

TEST(kernels, parallel_matches_serial_for_any_thread_count) {
  const OutcomeSampler sampler(local_joint(Phase{1.1}, SeparationRegime::Spacelike));
  const std::uint64_t key = derive_stream_key(5, 2);
  const auto reference = count_outcomes_serial(sampler, key, 123, 200'001);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 4, 7}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(count_outcomes_parallel(sampler, key, 123, 200'001), reference) << threads << " threads";
  }
  omp_set_num_threads(saved);
}

TEST(shard_range, partitions_trials) {
  for (std::uint64_t n : {1u, 7u, 100u, 1001u}) {
    for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(n, 9); ++k) {
      std::uint64_t expected_begin = 0;
      for (std::uint64_t i = 0; i < k; ++i) {
        const ShardRange r = shard_range(n, k, i);
        EXPECT_EQ(r.begin, expected_begin);
        EXPECT_GE(r.end - r.begin, n / k);
        EXPECT_LE(r.end - r.begin, n / k + 1);
        expected_begin = r.end;
      }
      EXPECT_EQ(expected_begin, n);
    }
  }
}

TEST(run, deterministic_and_kernel_independent) {
  ExperimentConfig c = local_config(kPi / 3, 1.0, 100'000, 99);
  c.shards = 3;
  const TrialLedger first = run(c);
  EXPECT_EQ(first, run(c));
  EXPECT_EQ(first, run(c, Kernel::Serial));
  c.seed = 100;
  EXPECT_NE(first.counts, run(c).counts);
}

TEST(run, quantum_never_produces_coincidences) {
  ExperimentConfig c = local_config(kPi / 2, 10.0, 1'000'000, 42);
  c.model = ModelId::NonlocalQuantum;
  const TrialLedger ledger = run(c);
  EXPECT_EQ(ledger.count(JointOutcome::Both), 0u);
  EXPECT_EQ(ledger.count(JointOutcome::None), 0u);
  EXPECT_EQ(ledger.count(JointOutcome::PlusOnly) + ledger.count(JointOutcome::MinusOnly), 1'000'000u);
}

TEST(run, local_spacelike_counts_within_4_sigma) {
  const TrialLedger ledger = run(local_config(kPi / 2, 1.0, 1'000'000, 42));
  std::uint64_t sum = 0;
  for (auto c : ledger.counts) {
    EXPECT_NEAR(static_cast<double>(c), 250'000.0, 1732.0);
    sum += c;
  }
  EXPECT_EQ(sum, 1'000'000u);
}

TEST(run, empirical_rates_track_analytic_distribution) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  const double n = 1e5;
  for (ModelId model : {ModelId::NonlocalQuantum, ModelId::LocalDetection, ModelId::Ether}) {
    for (int i = 0; i < 10; ++i) {
      ExperimentConfig c = local_config(u(rng), 1.0, static_cast<std::uint64_t>(n), 1000 + i);
      c.model = model;
      if (model == ModelId::Ether) c.ether = EtherConfig{7.5, 3.0e4, 900e-9, kPaperSpeedOfLight, true};
      const auto dist = resolve_distribution(c);
      const TrialLedger ledger = run(c);
      for (JointOutcome o : kAllOutcomes) {
        const double p = dist.probability(o);
        if (p == 0.0) {
          EXPECT_EQ(ledger.count(o), 0u);
        } else {
          EXPECT_NEAR(static_cast<double>(ledger.count(o)), n * p, 5 * binomial_sigma(n, p) + 1e-9);
        }
      }
    }
  }
}

TEST(run, shards_merge_commutatively_and_sum_to_n) {
  ExperimentConfig c = local_config(kPi / 2, 1.0, 1'000'000, 42);
  c.shards = 4;
  const TrialLedger l0 = run_shard(c, 0), l1 = run_shard(c, 1), l2 = run_shard(c, 2), l3 = run_shard(c, 3);
  const TrialLedger left = l0.merged(l1).merged(l2).merged(l3);
  const TrialLedger right = l3.merged(l2.merged(l1.merged(l0)));
  EXPECT_EQ(left, right);
  EXPECT_EQ(left, run(c));
  EXPECT_EQ(left.trials, 1'000'000u);
  std::uint64_t sum = 0;
  for (auto k : left.counts) {
    sum += k;
    EXPECT_NEAR(static_cast<double>(k), 250'000.0, 1732.0);
  }
  EXPECT_EQ(sum, 1'000'000u);
  EXPECT_THROW(run_shard(c, 4), ConfigError);
}

TEST(run, merge_rejects_foreign_ledger) {
  const TrialLedger a = run(local_config(kPi / 2, 1.0, 10, 1));
  const TrialLedger b = run(local_config(kPi / 2, 1.0, 10, 2));
  EXPECT_THROW(a.merged(b), ConfigError);
}

TEST(ledger_io, record_round_trip) {
  ExperimentConfig c = local_config(0.7, 1.0, 12345, 77);
  c.shards = 2;
  const TrialLedger ledger = run(c);
  const std::string text = format_ledger(ledger);
  EXPECT_NE(text.find("version = 1"), std::string::npos);
  EXPECT_NE(text.find("rng = splitmix64-counter"), std::string::npos);
  EXPECT_EQ(parse_ledger(text), ledger);
}

TEST(ledger_io, rejects_bad_records) {
  const std::string good = format_ledger(run(local_config(0.7, 1.0, 100, 1)));
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(parse_ledger(replace("version = 1", "version = 9")), ConfigError);
  EXPECT_THROW(parse_ledger(replace("trials = 100", "trials = 101")), DataError);
  EXPECT_THROW(parse_ledger(replace("trials = 100", "trials = x")), ConfigError);
  EXPECT_THROW(parse_ledger(replace("fingerprint = 0x", "fingerprint = zz")), ConfigError);
  EXPECT_THROW(parse_ledger(good + "Extra = 1\n"), ConfigError);
}
