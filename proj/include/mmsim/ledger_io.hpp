#pragma once

#include <string>
#include <string_view>

#include "mmsim/simulate.hpp"

namespace mmsim {

inline constexpr int kLedgerVersion = 1;

/// Versioned plain-text record:
///
///   # mmsim ledger
///   version = 1
///   rng = splitmix64-counter
///   fingerprint = 0x<16 hex digits>
///   seed = <u64>
///   trials = <u64>
///   PlusOnly = <count>
///   MinusOnly = <count>
///   Both = <count>
///   None = <count>
std::string format_ledger(const TrialLedger& ledger);

/// Inverse of format_ledger. Throws ConfigError on malformed records or an
/// unsupported version, DataError when the counts do not sum to `trials`.
TrialLedger parse_ledger(std::string_view text);
TrialLedger load_ledger(const std::string& path);

}  // namespace mmsim
