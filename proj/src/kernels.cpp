#include "mmsim/kernels.hpp"

#include "mmsim/rng.hpp"

namespace mmsim {

OutcomeSampler::OutcomeSampler(const OutcomeDistribution& dist) {
  dist.validate();
  const auto p = dist.as_array();
  double running = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    running += p[k];
    cumulative_[k] = running;
    positive_[k] = p[k] > 0.0;
    if (positive_[k]) last_ = k;
  }
}

OutcomeCounts count_outcomes_serial(const OutcomeSampler& sampler, std::uint64_t stream_key, std::uint64_t first,
                                    std::uint64_t count) {
  OutcomeCounts counts{};
  for (std::uint64_t i = first; i < first + count; ++i) {
    ++counts[static_cast<std::size_t>(sampler(CounterStream::uniform_at(stream_key, i)))];
  }
  return counts;
}

OutcomeCounts count_outcomes_parallel(const OutcomeSampler& sampler, std::uint64_t stream_key, std::uint64_t first,
                                      std::uint64_t count) {
  std::uint64_t plus = 0, minus = 0, both = 0, none = 0;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) reduction(+ : plus, minus, both, none)
  for (std::int64_t j = 0; j < n; ++j) {
    switch (sampler(CounterStream::uniform_at(stream_key, first + static_cast<std::uint64_t>(j)))) {
      case JointOutcome::PlusOnly: ++plus; break;
      case JointOutcome::MinusOnly: ++minus; break;
      case JointOutcome::Both: ++both; break;
      case JointOutcome::None: ++none; break;
    }
  }
  return {plus, minus, both, none};
}

}  // namespace mmsim
