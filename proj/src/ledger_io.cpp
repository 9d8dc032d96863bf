#include "mmsim/ledger_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmsim/config.hpp"
#include "mmsim/errors.hpp"

namespace mmsim {

std::string format_ledger(const TrialLedger& ledger) {
  char fp[32];
  std::snprintf(fp, sizeof fp, "0x%016" PRIx64, ledger.fingerprint);
  std::ostringstream out;
  out << "# mmsim ledger\n";
  out << "version = " << kLedgerVersion << '\n';
  out << "rng = " << ledger.rng << '\n';
  out << "fingerprint = " << fp << '\n';
  out << "seed = " << ledger.seed << '\n';
  out << "trials = " << ledger.trials << '\n';
  for (JointOutcome o : kAllOutcomes) out << to_string(o) << " = " << ledger.count(o) << '\n';
  return out.str();
}

TrialLedger parse_ledger(std::string_view text) {
  const KeyValues kv = KeyValues::parse(text);
  kv.reject_unknown("version,rng,fingerprint,seed,trials,PlusOnly,MinusOnly,Both,None");
  const auto version = kv.get_u64("version");
  if (!version) throw ConfigError("version: missing required field");
  if (*version != static_cast<std::uint64_t>(kLedgerVersion)) {
    throw ConfigError("version: unsupported ledger version " + std::to_string(*version));
  }

  TrialLedger ledger;
  ledger.rng = kv.require("rng");
  const std::string fp = kv.require("fingerprint");
  char* end = nullptr;
  ledger.fingerprint = std::strtoull(fp.c_str(), &end, 16);
  if (fp.size() < 3 || fp.compare(0, 2, "0x") != 0 || end != fp.c_str() + fp.size()) {
    throw ConfigError("fingerprint: malformed value '" + fp + "'");
  }
  if (!kv.has("seed")) throw ConfigError("seed: missing required field");
  ledger.seed = *kv.get_u64("seed");
  if (!kv.has("trials")) throw ConfigError("trials: missing required field");
  ledger.trials = *kv.get_u64("trials");

  std::uint64_t sum = 0;
  for (JointOutcome o : kAllOutcomes) {
    const std::string key(to_string(o));
    if (!kv.has(key)) throw ConfigError(key + ": missing required field");
    ledger.counts[static_cast<std::size_t>(o)] = *kv.get_u64(key);
    sum += ledger.count(o);
  }
  if (sum != ledger.trials) {
    throw DataError("trials: counts sum to " + std::to_string(sum) + " but trials = " + std::to_string(ledger.trials));
  }
  return ledger;
}

TrialLedger load_ledger(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ledger: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ledger(buf.str());
}

}  // namespace mmsim
