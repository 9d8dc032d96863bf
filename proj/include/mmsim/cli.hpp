#pragma once

#include <iosfwd>

namespace mmsim {

/// Exit status: 0 success, 1 configuration error, 2 data inconsistency.
enum ExitStatus : int { kExitOk = 0, kExitConfig = 1, kExitData = 2 };

/// Command-line front end with subcommands simulate, sweep, discriminate, power
/// and ether-design. Every value option can also come from a `--config` file of
/// `key = value` lines whose keys are the long flag names; flags override the file.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmsim
