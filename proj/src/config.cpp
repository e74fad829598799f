#include "ctmhd/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ctmhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string& v = value;
  if (key == "problem") problem = v;
  else if (key == "nx") nx = to_int(key, v);
  else if (key == "ny") ny = to_int(key, v);
  else if (key == "nz") nz = to_int(key, v);
  else if (key == "mesh") {
    std::string s = v;
    std::replace(s.begin(), s.end(), 'x', ' ');
    std::istringstream is(s);
    if (!(is >> nx >> ny >> nz)) throw ConfigError("config: mesh expects NXxNYxNZ");
  } else if (key == "scale") scale = to_int(key, v);
  else if (key == "quarter") quarter = to_bool(key, v);
  else if (key == "phi") phi = to_double(key, v);
  else if (key == "theta") theta = to_double(key, v);
  else if (key == "end_time") end_time = to_double(key, v);
  else if (key == "cfl") cfl = to_double(key, v);
  else if (key == "limiter") limiter = parse_limiter(v);
  else if (key == "transverse") transverse = parse_transverse(v);
  else if (key == "second_order") second_order = to_bool(key, v);
  else if (key == "entropy_fix") entropy_fix = to_bool(key, v);
  else if (key == "energy_option") energy = parse_energy_option(v);
  else if (key == "nu") nu = to_double(key, v);
  else if (key == "eps") eps = to_double(key, v);
  else if (key == "gamma") gamma = to_double(key, v);
  else if (key == "output_times") {
    output_times.clear();
    std::string s = v;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) output_times.push_back(to_double(key, tok));
  } else if (key == "output_dir") output_dir = v;
  else if (key == "reference_mode") {
    if (v == "none") reference = ReferenceMode::none;
    else if (v == "1d") reference = ReferenceMode::one_d;
    else if (v == "scalar_a3") reference = ReferenceMode::scalar_a3;
    else throw ConfigError("config: unknown reference_mode '" + v + "'");
  } else if (key == "reference_cells") reference_cells = to_int(key, v);
  else if (key == "max_steps") max_steps = to_int(key, v);
  else if (key == "write_snapshots") write_snapshots = to_bool(key, v);
  else if (key == "seed") seed = std::uint64_t(to_int(key, v));
  else throw ConfigError("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  static const char* known[] = {"alfven", "alfven25", "shock_tube", "orszag_tang", "cloud_shock"};
  if (std::find(std::begin(known), std::end(known), problem) == std::end(known))
    throw ConfigError("config: unknown problem '" + problem + "'");
  if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("config: mesh sizes must be >= 1");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("config: cfl must lie in (0, 1]");
  if (nu && !(*nu >= 0.0 && *nu <= 0.5)) throw ConfigError("config: nu must lie in [0, 1/2]");
  if (!(eps > 0.0)) throw ConfigError("config: eps must be > 0");
  if (!(gamma > 1.0)) throw ConfigError("config: gamma must be > 1");
  if (end_time && !(*end_time >= 0.0)) throw ConfigError("config: end_time must be >= 0");
  if (max_steps < 0) throw ConfigError("config: max_steps must be >= 0");
  if (reference == ReferenceMode::one_d && problem != "shock_tube")
    throw ConfigError("config: reference_mode = 1d applies to shock_tube only");
  if (reference == ReferenceMode::scalar_a3 && nz != 1)
    throw ConfigError("config: reference_mode = scalar_a3 needs nz = 1");
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: line " + std::to_string(lineno) + " lacks '='");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace ctmhd
