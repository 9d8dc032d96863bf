#include "mmsim/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmsim/errors.hpp"

namespace mmsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string malformed(const std::string& key, const std::string& value, const char* what) {
  return key + ": malformed value '" + value + "' (expected " + what + ")";
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (kv.has(key)) throw ConfigError(key + ": duplicated on line " + std::to_string(line_no));
    kv.values_[key] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void KeyValues::merge_from(const KeyValues& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValues::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw ConfigError(key + ": missing required field");
  return *v;
}

std::optional<double> KeyValues::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v->c_str(), &end);
  if (v->empty() || end != v->c_str() + v->size() || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError(malformed(key, *v, "a finite number"));
  }
  return d;
}

double KeyValues::require_double(const std::string& key) const {
  if (!has(key)) throw ConfigError(key + ": missing required field");
  return *get_double(key);
}

std::optional<std::uint64_t> KeyValues::get_u64(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ConfigError(malformed(key, *v, "a non-negative integer"));
  }
  return out;
}

std::optional<bool> KeyValues::get_bool(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  if (*v == "true" || *v == "1" || v->empty()) return true;
  if (*v == "false" || *v == "0") return false;
  throw ConfigError(malformed(key, *v, "true or false"));
}

void KeyValues::reject_unknown(std::string_view allowed) const {
  for (const auto& [key, value] : values_) {
    bool found = false;
    std::string_view rest = allowed;
    while (!rest.empty() && !found) {
      const auto comma = rest.find(',');
      found = rest.substr(0, comma) == key;
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!found) throw ConfigError(key + ": unknown key");
  }
}

PhysicalConstants constants_from(const KeyValues& kv) {
  PhysicalConstants pc;
  if (kv.get_bool("paper-constants").value_or(false)) pc.light_speed = kPaperSpeedOfLight;
  pc.light_speed = kv.get_double("c").value_or(pc.light_speed);
  pc.wavelength = kv.get_double("lambda").value_or(pc.wavelength);
  pc.ether_velocity = kv.get_double("v").value_or(pc.ether_velocity);
  pc.gate_window = kv.get_double("gate-window").value_or(pc.gate_window);
  if (!(pc.light_speed > 0.0)) throw ConfigError("c: must be > 0");
  if (!(pc.wavelength > 0.0)) throw ConfigError("lambda: must be > 0");
  if (!(pc.ether_velocity >= 0.0)) throw ConfigError("v: must be >= 0");
  if (!(pc.gate_window > 0.0)) throw ConfigError("gate-window: must be > 0");
  return pc;
}

ExperimentConfig experiment_from(const KeyValues& kv) {
  kv.reject_unknown(kExperimentKeys);
  const PhysicalConstants pc = constants_from(kv);

  ExperimentConfig cfg;
  cfg.model = parse_model(kv.require("model"));
  cfg.light_speed = pc.light_speed;
  cfg.gate_window = pc.gate_window;
  cfg.detector_distance = kv.get_double("distance").value_or(0.0);

  if (kv.has("phase") && kv.has("phase-deg")) throw ConfigError("phase-deg: conflicts with phase");
  if (auto p = kv.get_double("phase")) cfg.phase = Phase{*p};
  if (auto deg = kv.get_double("phase-deg")) cfg.phase = Phase{*deg * kPi / 180.0};
  if (kv.has("long-arm") || kv.has("short-arm")) {
    cfg.geometry = OpticalGeometry{kv.require_double("long-arm"), kv.require_double("short-arm"), pc.wavelength,
                                   pc.light_speed};
  }
  if (!cfg.phase && !cfg.geometry) throw ConfigError("phase: missing required field");

  if (cfg.model == ModelId::Ether) {
    cfg.ether = EtherConfig{kv.require_double("arm-length"), pc.ether_velocity, pc.wavelength, pc.light_speed,
                            kv.get_bool("aligned").value_or(true)};
  } else if (kv.has("arm-length") || kv.has("aligned")) {
    throw ConfigError(std::string(kv.has("arm-length") ? "arm-length" : "aligned") + ": only valid for model = ether");
  }

  const auto trials = kv.get_u64("trials");
  if (!trials) throw ConfigError("trials: missing required field");
  cfg.trials = *trials;
  cfg.seed = kv.get_u64("seed").value_or(0);
  cfg.shards = kv.get_u64("shards").value_or(1);
  cfg.validate();
  return cfg;
}

std::string format_exact(double v) {
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "# mmsim experiment config v1\n";
  out << "model = " << to_string(c.model) << '\n';
  if (c.phase) out << "phase = " << format_exact(c.phase->radians) << '\n';
  if (c.geometry) {
    out << "long-arm = " << format_exact(c.geometry->long_arm) << '\n';
    out << "short-arm = " << format_exact(c.geometry->short_arm) << '\n';
  }
  const double lambda = c.geometry ? c.geometry->wavelength : c.ether ? c.ether->wavelength : kDefaultWavelength;
  out << "lambda = " << format_exact(lambda) << '\n';
  out << "distance = " << format_exact(c.detector_distance) << '\n';
  out << "gate-window = " << format_exact(c.gate_window) << '\n';
  out << "c = " << format_exact(c.light_speed) << '\n';
  if (c.ether) {
    out << "v = " << format_exact(c.ether->velocity) << '\n';
    out << "arm-length = " << format_exact(c.ether->arm_length) << '\n';
    out << "aligned = " << (c.ether->aligned ? "true" : "false") << '\n';
  }
  out << "trials = " << c.trials << '\n';
  out << "seed = " << c.seed << '\n';
  out << "shards = " << c.shards << '\n';
  return out.str();
}

}  // namespace mmsim
