#include "aledg/config.hpp"

#include "aledg/cases.hpp"
#include "aledg/errors.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace aledg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "expected a boolean, got '" + v + "'");
}

template <class F>
auto keyed(const std::string& key, F&& parse) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    if (e.key == key) throw;
    throw ConfigError(key, e.what());
  }
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"case.name", [](RunConfig& c, auto&, auto& v) { c.case_name = v; }},
      {"case.n", [](RunConfig& c, auto& k, auto& v) { c.n = static_cast<int>(to_int(k, v)); }},
      {"case.ny", [](RunConfig& c, auto& k, auto& v) { c.ny = static_cast<int>(to_int(k, v)); }},
      {"case.mesh", [](RunConfig& c, auto&, auto& v) { c.mesh_file = v; }},
      {"case.boost", [](RunConfig& c, auto& k, auto& v) { c.boost = to_double(k, v); }},
      {"case.final_time", [](RunConfig& c, auto& k, auto& v) { c.final_time = to_double(k, v); }},
      {"scheme.degree", [](RunConfig& c, auto& k, auto& v) { c.scheme.degree = static_cast<int>(to_int(k, v)); }},
      {"scheme.cfl", [](RunConfig& c, auto& k, auto& v) { c.scheme.cfl = to_double(k, v); }},
      {"scheme.mode", [](RunConfig& c, auto& k, auto& v) { c.scheme.mode = keyed(k, [&] { return parse_mesh_mode(v); }); }},
      {"scheme.velocity",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.velocity = keyed(k, [&] { return parse_velocity_kind(v); }); }},
      {"scheme.orientation_safety",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.orientation_safety = to_double(k, v); }},
      {"scheme.velocity_noise", [](RunConfig& c, auto& k, auto& v) { c.scheme.velocity_noise = to_double(k, v); }},
      {"scheme.seed", [](RunConfig& c, auto& k, auto& v) { c.scheme.seed = static_cast<std::uint64_t>(to_int(k, v)); }},
      {"scheme.max_steps", [](RunConfig& c, auto& k, auto& v) { c.max_steps = static_cast<int>(to_int(k, v)); }},
      {"flux.kind", [](RunConfig& c, auto& k, auto& v) { c.flux.kind = keyed(k, [&] { return parse_flux_kind(v); }); }},
      {"flux.roe_alpha", [](RunConfig& c, auto& k, auto& v) { c.flux.roe_alpha = to_double(k, v); }},
      {"limiter.kind",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.kind = keyed(k, [&] { return parse_limiter_kind(v); }); }},
      {"limiter.M", [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.M = to_double(k, v); }},
      {"limiter.nu", [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.nu = to_double(k, v); }},
      {"limiter.eps_skip", [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.eps_skip = to_double(k, v); }},
      {"limiter.positivity", [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.positivity = to_bool(k, v); }},
      {"limiter.characteristic",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.limiter.characteristic = to_bool(k, v); }},
      {"smoothing.kind",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.kind = keyed(k, [&] { return parse_smoothing_kind(v); }); }},
      {"smoothing.alpha", [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.alpha = to_double(k, v); }},
      {"smoothing.nsmooth",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.nsmooth = static_cast<int>(to_int(k, v)); }},
      {"smoothing.eps0", [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.eps0 = to_double(k, v); }},
      {"smoothing.delta_l", [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.delta_l = to_double(k, v); }},
      {"smoothing.delta_u", [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.delta_u = to_double(k, v); }},
      {"smoothing.iterations",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.iterations = static_cast<int>(to_int(k, v)); }},
      {"smoothing.fallback_quality",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.smoothing.fallback_quality = to_double(k, v); }},
      {"adapt.h_min", [](RunConfig& c, auto& k, auto& v) { c.scheme.adapt.h_min = to_double(k, v); }},
      {"adapt.h_max", [](RunConfig& c, auto& k, auto& v) { c.scheme.adapt.h_max = to_double(k, v); }},
      {"adapt.swap", [](RunConfig& c, auto& k, auto& v) { c.scheme.adapt.swap = to_bool(k, v); }},
      {"adapt.quality_threshold",
       [](RunConfig& c, auto& k, auto& v) { c.scheme.adapt.quality_threshold = to_double(k, v); }},
      {"adapt.hysteresis", [](RunConfig& c, auto& k, auto& v) { c.scheme.adapt.hysteresis = to_double(k, v); }},
      {"output.dir", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; }},
      {"output.interval",
       [](RunConfig& c, auto& k, auto& v) { c.snapshot_interval = static_cast<int>(to_int(k, v)); }},
  };
  return table;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table = {
      {"case", "case.name"},       {"n", "case.n"},         {"k", "scheme.degree"},   {"degree", "scheme.degree"},
      {"cfl", "scheme.cfl"},       {"mode", "scheme.mode"}, {"flux", "flux.kind"},    {"limiter", "limiter.kind"},
      {"seed", "scheme.seed"},     {"output", "output.dir"}, {"mesh", "case.mesh"},   {"boost", "case.boost"},
  };
  return table;
}

std::string canonical(const std::string& key) {
  const auto a = aliases().find(key);
  return a == aliases().end() ? key : a->second;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

Overrides read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  Overrides entries;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config", where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config", where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config", where + ": empty key");
    entries.emplace_back(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
  }
  return entries;
}

void RunConfig::validate() const {
  if (case_name.empty()) throw ConfigError("case.name", "missing case");
  try {
    get_case(case_name);
  } catch (const LookupError& e) {
    throw ConfigError("case.name", e.what());
  }
  if (n < 0) throw ConfigError("case.n", "must be non-negative");
  if (ny < 0) throw ConfigError("case.ny", "must be non-negative");
  if (!mesh_file.empty() && !std::filesystem::exists(mesh_file))
    throw ConfigError("case.mesh", "file '" + mesh_file + "' does not exist");
  if (snapshot_interval < 0) throw ConfigError("output.interval", "must be non-negative");
  if (max_steps <= 0) throw ConfigError("scheme.max_steps", "must be positive");
  if (scheme.adapt.h_min > 0.0 && scheme.adapt.h_max > 0.0 && scheme.adapt.h_min > scheme.adapt.h_max)
    throw ConfigError("adapt.h_min", "h_min exceeds h_max");
  scheme.validate();
}

RunConfig parse_config(const Overrides& file_entries, const Overrides& flags) {
  RunConfig cfg;
  for (const auto* list : {&file_entries, &flags})
    for (const auto& [raw, value] : *list) {
      const std::string key = canonical(raw);
      const auto it = setters().find(key);
      if (it == setters().end()) throw ConfigError(raw, "unknown key");
      it->second(cfg, key, value);
    }
  cfg.validate();
  return cfg;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream o;
  o.precision(17);
  const auto& s = c.scheme;
  o << "[case]\nname = " << c.case_name << "\nn = " << c.n << "\nny = " << c.ny << "\n";
  if (!c.mesh_file.empty()) o << "mesh = " << c.mesh_file << "\n";
  o << "boost = " << c.boost << "\nfinal_time = " << c.final_time << "\n";
  o << "\n[scheme]\ndegree = " << s.degree << "\ncfl = " << s.cfl << "\nmode = " << to_string(s.mode)
    << "\nvelocity = " << to_string(s.velocity) << "\norientation_safety = " << s.orientation_safety
    << "\nvelocity_noise = " << s.velocity_noise << "\nseed = " << s.seed << "\nmax_steps = " << c.max_steps << "\n";
  o << "\n[flux]\nkind = " << to_string(c.flux.kind) << "\nroe_alpha = " << c.flux.roe_alpha << "\n";
  o << "\n[limiter]\nkind = " << to_string(s.limiter.kind) << "\nM = " << s.limiter.M << "\nnu = " << s.limiter.nu
    << "\neps_skip = " << s.limiter.eps_skip << "\npositivity = " << (s.limiter.positivity ? "true" : "false")
    << "\ncharacteristic = " << (s.limiter.characteristic ? "true" : "false") << "\n";
  o << "\n[smoothing]\nkind = " << to_string(s.smoothing.kind) << "\nalpha = " << s.smoothing.alpha
    << "\nnsmooth = " << s.smoothing.nsmooth << "\neps0 = " << s.smoothing.eps0 << "\ndelta_l = " << s.smoothing.delta_l
    << "\ndelta_u = " << s.smoothing.delta_u << "\niterations = " << s.smoothing.iterations
    << "\nfallback_quality = " << s.smoothing.fallback_quality << "\n";
  o << "\n[adapt]\nh_min = " << s.adapt.h_min << "\nh_max = " << s.adapt.h_max
    << "\nswap = " << (s.adapt.swap ? "true" : "false") << "\nquality_threshold = " << s.adapt.quality_threshold
    << "\nhysteresis = " << s.adapt.hysteresis << "\n";
  o << "\n[output]\n";
  if (!c.output_dir.empty()) o << "dir = " << c.output_dir << "\n";
  o << "interval = " << c.snapshot_interval << "\n";
  return o.str();
}

}  // namespace aledg
