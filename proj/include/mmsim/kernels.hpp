#pragma once

#include <array>
#include <cstdint>

#include "mmsim/models.hpp"

namespace mmsim {

using OutcomeCounts = std::array<std::uint64_t, 4>;

/// Cumulative-inversion table in the fixed order PlusOnly, MinusOnly, Both, None.
/// Outcomes with probability exactly zero are unreachable.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const OutcomeDistribution& dist);

  [[nodiscard]] JointOutcome operator()(double u) const {
    for (std::size_t k = 0; k < last_; ++k) {
      if (u < cumulative_[k] && positive_[k]) return static_cast<JointOutcome>(k);
    }
    return static_cast<JointOutcome>(last_);
  }

 private:
  std::array<double, 4> cumulative_{};
  std::array<bool, 4> positive_{};
  std::size_t last_ = 0;  // last outcome with nonzero probability; absorbs rounding in the cumulative sum
};

/// Reference kernel: plain loop over trial indices [first, first + count) of one stream.
OutcomeCounts count_outcomes_serial(const OutcomeSampler& sampler, std::uint64_t stream_key, std::uint64_t first,
                                    std::uint64_t count);

/// OpenMP kernel over the same index range. Result is identical to the serial
/// kernel for any thread count.
OutcomeCounts count_outcomes_parallel(const OutcomeSampler& sampler, std::uint64_t stream_key, std::uint64_t first,
                                      std::uint64_t count);

}  // namespace mmsim
