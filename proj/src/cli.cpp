#include "mmsim/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmsim/analysis.hpp"
#include "mmsim/config.hpp"
#include "mmsim/errors.hpp"
#include "mmsim/ether.hpp"
#include "mmsim/ledger_io.hpp"
#include "mmsim/simulate.hpp"

namespace mmsim {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// A subcommand whose options are all captured as raw strings keyed by flag name.
struct Command {
  explicit Command(CLI::App* sub) : app(sub) {}

  CLI::App* app;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::vector<std::pair<std::string, CLI::Option*>> flags;

  void option(const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option("--" + key, values[key], help));
  }
  void flag(const std::string& key, const std::string& help) {
    flags.emplace_back(key, app->add_flag("--" + key, help));
  }

  /// File values first, explicit flags on top. `config` and `out` never come from the file.
  KeyValues collect() const {
    KeyValues kv;
    if (const auto it = values.find("config"); it != values.end() && !it->second.empty()) {
      kv = KeyValues::load(it->second);
      std::string allowed;
      for (const auto& [key, opt] : options) {
        if (key != "config" && key != "out") allowed += key + ",";
      }
      for (const auto& [key, opt] : flags) {
        if (key != "dump-config") allowed += key + ",";
      }
      kv.reject_unknown(allowed);
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0 && key != "config") kv.set(key, values.at(key));
    }
    for (const auto& [key, opt] : flags) {
      if (opt->count() > 0) kv.set(key, "true");
    }
    return kv;
  }
};

void add_constants(Command& cmd) {
  cmd.option("c", "speed of light in m/s (default 299792458)");
  cmd.option("lambda", "photon wavelength in m (default 9e-7)");
  cmd.option("v", "ether velocity in m/s (default 30000)");
  cmd.option("gate-window", "detector gate window in s (default 2.5e-9)");
  cmd.flag("paper-constants", "use c = 3.0e8 m/s unless --c is given");
}

void add_common(Command& cmd) {
  cmd.option("config", "flat key = value settings file; flags override its values");
  cmd.option("out", "output file (default standard output)");
}

/// Removes CLI-only keys before the remainder is interpreted as physics.
KeyValues without(const KeyValues& kv, std::initializer_list<const char*> drop) {
  KeyValues out;
  for (const auto& [key, value] : kv.entries()) {
    bool skip = false;
    for (const char* d : drop) skip |= key == d;
    if (!skip) out.set(key, value);
  }
  return out;
}

void emit(const KeyValues& kv, const std::string& text, std::ostream& out) {
  if (const auto path = kv.get("out"); path && !path->empty()) {
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw ConfigError("out: cannot write '" + *path + "'");
    file << text;
    if (!file) throw ConfigError("out: write to '" + *path + "' failed");
  } else {
    out << text;
  }
}

Phase phase_from(const KeyValues& kv) {
  if (kv.has("phase") && kv.has("phase-deg")) throw ConfigError("phase-deg: conflicts with phase");
  if (auto p = kv.get_double("phase")) return Phase{*p};
  if (auto d = kv.get_double("phase-deg")) return Phase{*d * kPi / 180.0};
  throw ConfigError("phase: missing required field");
}

EtherConfig ether_from(const KeyValues& kv, const PhysicalConstants& pc, double default_length) {
  EtherConfig e{kv.get_double("arm-length").value_or(default_length), pc.ether_velocity, pc.wavelength,
                pc.light_speed, kv.get_bool("aligned").value_or(true)};
  e.validate();
  return e;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

/// quantum | local | local:timelike | local:spacelike | ether. Bare "local" uses the detector distance.
Hypothesis hypothesis_from(const std::string& key, const KeyValues& kv) {
  const std::string spec = kv.require(key);
  const PhysicalConstants pc = constants_from(kv);
  const Phase phi = phase_from(kv);
  const auto colon = spec.find(':');
  const ModelId model = parse_model(spec.substr(0, colon));
  SeparationRegime regime = SeparationRegime::Timelike;
  if (model == ModelId::LocalDetection) {
    if (colon != std::string::npos) {
      regime = parse_regime(spec.substr(colon + 1));
    } else {
      regime = separation_regime(kv.get_double("distance").value_or(0.0), pc.gate_window, pc.light_speed);
    }
  } else if (colon != std::string::npos) {
    throw ConfigError(key + ": only the local model takes a regime suffix");
  }
  std::optional<EtherConfig> ether;
  if (model == ModelId::Ether) {
    if (!kv.has("arm-length")) throw ConfigError("arm-length: missing required field for the ether hypothesis");
    ether = ether_from(kv, pc, 0.0);
  }
  return make_hypothesis(model, phi, regime, ether);
}

void add_hypothesis_options(Command& cmd) {
  cmd.option("hypothesis-a", "quantum | local | local:timelike | local:spacelike | ether");
  cmd.option("hypothesis-b", "quantum | local | local:timelike | local:spacelike | ether");
  cmd.option("phase", "interferometer phase in radians");
  cmd.option("phase-deg", "interferometer phase in degrees");
  cmd.option("distance", "detector distance in m, decides the regime of a bare 'local'");
  cmd.option("arm-length", "ether interferometer arm length in m");
  cmd.option("aligned", "ether: arm aligned with the motion (true/false, default true)");
  cmd.option("significance", "rejection threshold (default 0.05)");
  add_constants(cmd);
}

int run_simulate(const Command& cmd, std::ostream& out) {
  const KeyValues kv = cmd.collect();
  const ExperimentConfig config = experiment_from(without(kv, {"out", "format", "dump-config"}));
  if (kv.get_bool("dump-config").value_or(false)) {
    emit(kv, format_config(config), out);
    return kExitOk;
  }
  const std::string format = kv.get("format").value_or("record");
  if (format != "record" && format != "csv") {
    throw ConfigError("format: malformed value '" + format + "' (expected record or csv)");
  }
  const TrialLedger ledger = run(config);
  if (format == "record") {
    emit(kv, format_ledger(ledger), out);
    return kExitOk;
  }
  std::ostringstream csv;
  csv << "outcome,count,trials,rate,ci_low,ci_high\n";
  for (const RateEstimate& e : estimate_rates(ledger)) {
    csv << to_string(e.outcome) << ',' << e.count << ',' << e.n << ',' << num(e.rate) << ',' << num(e.ci_low) << ','
        << num(e.ci_high) << '\n';
  }
  emit(kv, csv.str(), out);
  return kExitOk;
}

int run_sweep(const Command& cmd, std::ostream& out) {
  const KeyValues kv = cmd.collect();
  const PhysicalConstants pc = constants_from(kv);
  std::vector<ModelId> models;
  for (const auto& m : split_list(kv.get("models").value_or("quantum,local,ether"))) models.push_back(parse_model(m));
  std::vector<SeparationRegime> regimes;
  for (const auto& r : split_list(kv.get("regimes").value_or("timelike,spacelike"))) {
    regimes.push_back(parse_regime(r));
  }
  if (models.empty()) throw ConfigError("models: empty list");
  if (regimes.empty()) throw ConfigError("regimes: empty list");
  const auto points = kv.get_u64("grid").value_or(181);
  const std::vector<Phase> grid = phase_grid(points);
  const EtherConfig ether = ether_from(kv, pc, 7.5);
  emit(kv, format_sweep_csv(sweep_phase(models, regimes, grid, ether)), out);
  return kExitOk;
}

int run_discriminate(const Command& cmd, std::ostream& out) {
  const KeyValues kv = cmd.collect();
  const TrialLedger ledger = load_ledger(kv.require("ledger"));
  const Hypothesis a = hypothesis_from("hypothesis-a", kv);
  const Hypothesis b = hypothesis_from("hypothesis-b", kv);
  const double significance = kv.get_double("significance").value_or(0.05);
  const DiscriminationReport r = discriminate(ledger, a, b, significance);

  std::ostringstream text;
  text << "model_a = " << r.model_a << '\n'
       << "model_b = " << r.model_b << '\n'
       << "trials = " << ledger.trials << '\n'
       << "method = " << to_string(r.method) << '\n'
       << "llr = " << num(r.llr) << '\n'
       << "p_value = " << num(r.p_value) << '\n'
       << "p_value_reverse = " << num(r.p_value_reverse) << '\n'
       << "significance = " << num(r.significance) << '\n'
       << "certain_rejection = " << (r.certain_rejection ? "true" : "false") << '\n'
       << "verdict = " << to_string(r.verdict) << '\n';
  emit(kv, text.str(), out);
  return kExitOk;
}

int run_power(const Command& cmd, std::ostream& out) {
  const KeyValues kv = cmd.collect();
  const Hypothesis a = hypothesis_from("hypothesis-a", kv);
  const Hypothesis b = hypothesis_from("hypothesis-b", kv);
  PowerOptions options;
  options.seed = kv.get_u64("seed").value_or(options.seed);
  options.repetitions = kv.get_u64("repetitions").value_or(options.repetitions);
  options.max_trials = kv.get_u64("max-trials").value_or(options.max_trials);
  const double significance = kv.get_double("significance").value_or(0.05);
  const double power = kv.get_double("power").value_or(0.99);
  const std::uint64_t n = sample_size_for_power(a.dist, b.dist, significance, power, options);
  std::ostringstream text;
  text << "model_a = " << a.label << '\n'
       << "model_b = " << b.label << '\n'
       << "significance = " << num(significance) << '\n'
       << "power = " << num(power) << '\n'
       << "n = " << n << '\n';
  emit(kv, text.str(), out);
  return kExitOk;
}

int run_ether_design(const Command& cmd, std::ostream& out) {
  const KeyValues kv = cmd.collect();
  const PhysicalConstants pc = constants_from(kv);
  const double target = kv.require_double("target-shift");
  const double length = required_arm_length(target, pc.ether_velocity, pc.light_speed, pc.wavelength);
  const EtherConfig at_design{length, pc.ether_velocity, pc.wavelength, pc.light_speed, true};
  char human[64];
  std::snprintf(human, sizeof human, "%.6g", length);
  std::ostringstream text;
  text << "target_shift_rad = " << num(target) << '\n'
       << "L = " << human << " m\n"
       << "arm_length_m = " << num(length) << '\n'
       << "time_difference_s = " << num(ether_time_difference(at_design)) << '\n';
  emit(kv, text.str(), out);
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-photon interferometer outcome models: simulation, sweeps and model discrimination"};
  app.require_subcommand(1, 1);

  Command simulate{app.add_subcommand("simulate", "sample trials under one model and print the ledger")};
  add_common(simulate);
  simulate.option("model", "quantum | local | ether");
  simulate.option("phase", "interferometer phase in radians (overrides the geometry)");
  simulate.option("phase-deg", "interferometer phase in degrees");
  simulate.option("long-arm", "long arm length l in m");
  simulate.option("short-arm", "short arm length s in m");
  simulate.option("distance", "distance of D(-) in m");
  simulate.option("arm-length", "ether interferometer arm length in m");
  simulate.option("aligned", "ether: arm aligned with the motion (true/false, default true)");
  simulate.option("trials", "number of trials");
  simulate.option("seed", "64-bit seed (default 0)");
  simulate.option("shards", "independent substreams (default 1)");
  simulate.option("format", "record | csv (default record)");
  simulate.flag("dump-config", "print the resolved configuration instead of running");
  add_constants(simulate);

  Command sweep{app.add_subcommand("sweep", "tabulate analytic outcome probabilities over a phase grid")};
  add_common(sweep);
  sweep.option("models", "comma-separated models (default quantum,local,ether)");
  sweep.option("regimes", "comma-separated regimes (default timelike,spacelike)");
  sweep.option("grid", "number of phases over [0, 2pi], endpoints included (default 181)");
  sweep.option("arm-length", "ether arm length in m (default 7.5)");
  sweep.option("aligned", "ether: arm aligned with the motion (true/false, default true)");
  add_constants(sweep);

  Command disc{app.add_subcommand("discriminate", "compare two hypotheses on a recorded ledger")};
  add_common(disc);
  disc.option("ledger", "ledger record written by simulate");
  add_hypothesis_options(disc);

  Command power{app.add_subcommand("power", "smallest trial count separating two hypotheses")};
  add_common(power);
  add_hypothesis_options(power);
  power.option("power", "required power (default 0.99)");
  power.option("seed", "Monte Carlo seed");
  power.option("repetitions", "Monte Carlo repetitions per candidate size (default 400)");
  power.option("max-trials", "search ceiling (default 1000000)");

  Command design{app.add_subcommand("ether-design", "arm length giving a target ether phase shift")};
  add_common(design);
  design.option("target-shift", "phase shift in radians");
  add_constants(design);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate.app->parsed()) return run_simulate(simulate, out);
    if (sweep.app->parsed()) return run_sweep(sweep, out);
    if (disc.app->parsed()) return run_discriminate(disc, out);
    if (power.app->parsed()) return run_power(power, out);
    if (design.app->parsed()) return run_ether_design(design, out);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace mmsim
