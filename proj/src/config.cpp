#include <carbon/config.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace carbon {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("not a number: '" + s + "'");
  return v;
}

long long to_integer(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s) {
  const long long v = to_integer(s);
  if (v < 0) throw ConfigError("expected a non-negative integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_double(p));
  return out;
}

std::vector<std::pair<double, double>> to_pairs(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : split(s, ',')) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw ConfigError("expected 'u:v' pair, got '" + p + "'");
    out.emplace_back(to_double(p.substr(0, colon)), to_double(p.substr(colon + 1)));
  }
  return out;
}

std::string one_of(const std::string& s, std::initializer_list<const char*> allowed) {
  const std::string v = trim(s);
  for (const char* a : allowed)
    if (v == a) return v;
  std::string msg = "'" + v + "' is not one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw ConfigError(msg);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"T", [](RunConfig& c, const std::string& v) { c.horizon = to_double(v); }},
      {"penalty", [](RunConfig& c, const std::string& v) { c.penalty = to_double(v); }},
      {"sigma", [](RunConfig& c, const std::string& v) { c.sigma = to_double(v); }},
      {"sigma_x", [](RunConfig& c, const std::string& v) { c.sigma_x = to_double(v); }},
      {"growth_a", [](RunConfig& c, const std::string& v) { c.growth_a = to_double(v); }},
      {"growth_b", [](RunConfig& c, const std::string& v) { c.growth_b = to_double(v); }},
      {"x0", [](RunConfig& c, const std::string& v) { c.x0 = to_double(v); }},
      {"abatement",
       [](RunConfig& c, const std::string& v) {
         c.abatement = one_of(v, {"linear", "tabulated", "quadratic_cost", "power_cost"});
       }},
      {"abatement_c", [](RunConfig& c, const std::string& v) { c.abatement_c = to_double(v); }},
      {"abatement_table", [](RunConfig& c, const std::string& v) { c.abatement_table = to_pairs(v); }},
      {"cost_c", [](RunConfig& c, const std::string& v) { c.cost_c = to_double(v); }},
      {"cost_k", [](RunConfig& c, const std::string& v) { c.cost_k = to_double(v); }},
      {"cost_p", [](RunConfig& c, const std::string& v) { c.cost_p = to_double(v); }},
      {"cost_cap", [](RunConfig& c, const std::string& v) { c.cost_cap = to_double(v); }},
      {"jump_intensity", [](RunConfig& c, const std::string& v) { c.jump_intensity = to_double(v); }},
      {"jump_dist",
       [](RunConfig& c, const std::string& v) { c.jump_dist = one_of(v, {"normal", "point", "tabulated"}); }},
      {"jump_mean", [](RunConfig& c, const std::string& v) { c.jump_mean = to_double(v); }},
      {"jump_std", [](RunConfig& c, const std::string& v) { c.jump_std = to_double(v); }},
      {"jump_point", [](RunConfig& c, const std::string& v) { c.jump_point = to_double(v); }},
      {"jump_table", [](RunConfig& c, const std::string& v) { c.jump_table = to_pairs(v); }},
      {"jump_map",
       [](RunConfig& c, const std::string& v) { c.jump_map = one_of(v, {"identity", "constant", "scaled"}); }},
      {"jump_map_value", [](RunConfig& c, const std::string& v) { c.jump_map_value = to_double(v); }},
      {"quad_k1", [](RunConfig& c, const std::string& v) { c.quad_k1 = to_double(v); }},
      {"quad_k2", [](RunConfig& c, const std::string& v) { c.quad_k2 = to_double(v); }},
      {"quad_tail", [](RunConfig& c, const std::string& v) { c.quad_tail = to_double(v); }},
      {"grid_l", [](RunConfig& c, const std::string& v) { c.grid_l = to_double(v); }},
      {"grid_dx", [](RunConfig& c, const std::string& v) { c.grid_dx = to_double(v); }},
      {"grid_n", [](RunConfig& c, const std::string& v) { c.grid_n = static_cast<int>(to_integer(v)); }},
      {"grid_dt", [](RunConfig& c, const std::string& v) { c.grid_dt = to_double(v); }},
      {"grid_m", [](RunConfig& c, const std::string& v) { c.grid_m = static_cast<int>(to_integer(v)); }},
      {"eps1", [](RunConfig& c, const std::string& v) { c.eps1 = to_double(v); }},
      {"eps2", [](RunConfig& c, const std::string& v) { c.eps2 = to_double(v); }},
      {"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = trim(v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = to_count(v); }},
      {"slice_times", [](RunConfig& c, const std::string& v) { c.slice_times = to_list(v); }},
      {"strike", [](RunConfig& c, const std::string& v) { c.strike = to_double(v); }},
      {"spot_price", [](RunConfig& c, const std::string& v) { c.spot_price = to_double(v); }},
      {"valuation_time", [](RunConfig& c, const std::string& v) { c.valuation_time = to_double(v); }},
      {"maturities", [](RunConfig& c, const std::string& v) { c.maturities = to_list(v); }},
      {"mc_paths", [](RunConfig& c, const std::string& v) { c.mc_paths = to_count(v); }},
      {"mc_dt", [](RunConfig& c, const std::string& v) { c.mc_dt = to_double(v); }},
      {"path_t_start", [](RunConfig& c, const std::string& v) { c.path_t_start = to_double(v); }},
      {"path_t_end", [](RunConfig& c, const std::string& v) { c.path_t_end = to_double(v); }},
      {"path_x_start", [](RunConfig& c, const std::string& v) { c.path_x_start = to_double(v); }},
      {"compare_pairs", [](RunConfig& c, const std::string& v) { c.compare_pairs = to_pairs(v); }},
      {"compare_time", [](RunConfig& c, const std::string& v) { c.compare_time = to_double(v); }},
  };
  return table;
}

}  // namespace

std::vector<ConfigEntry> parse_key_values(std::istream& in) {
  std::vector<ConfigEntry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    ConfigEntry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    entries.push_back(std::move(e));
  }
  return entries;
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  const auto& table = setters();
  for (const auto& e : parse_key_values(in)) {
    const std::string where = "line " + std::to_string(e.line) + ": ";
    const auto it = table.find(e.key);
    if (it == table.end()) throw ConfigError(where + "unknown key '" + e.key + "'");
    if (!seen.insert(e.key).second) throw ConfigError(where + "key '" + e.key + "' given twice");
    try {
      it->second(cfg, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(where + e.key + ": " + err.what());
    }
  }
  if (cfg.grid_dx && cfg.grid_n) throw ConfigError("give grid_dx or grid_n, not both");
  if (cfg.grid_dt && cfg.grid_m) throw ConfigError("give grid_dt or grid_m, not both");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

ModelParams RunConfig::model() const {
  ModelParams p;
  p.horizon = horizon;
  p.penalty = penalty;
  p.diffusion = sigma_x != 0.0 ? Diffusion::affine_variance(sigma, sigma_x) : Diffusion::constant(sigma);
  if (growth_a) p.diffusion.growth_a = *growth_a;
  if (growth_b) p.diffusion.growth_b = *growth_b;
  p.initial_state = x0;

  if (abatement == "linear") {
    p.abatement = AbatementFunction::linear(abatement_c);
  } else if (abatement == "tabulated") {
    std::vector<double> prices, rates;
    for (const auto& [a, r] : abatement_table) {
      prices.push_back(a);
      rates.push_back(r);
    }
    p.abatement = AbatementFunction::tabulated(std::move(prices), std::move(rates));
  } else if (abatement == "quadratic_cost") {
    p.abatement = AbatementFunction::from_cost(ConvexCost::quadratic(cost_c, cost_cap));
  } else {
    p.abatement = AbatementFunction::from_cost(ConvexCost::power(cost_k, cost_p, cost_cap));
  }

  if (jump_intensity != 0.0) {
    JumpSpec j;
    j.intensity = jump_intensity;
    if (jump_dist == "normal") {
      j.distribution = JumpDistribution::normal(jump_mean, jump_std);
    } else if (jump_dist == "point") {
      j.distribution = JumpDistribution::point_mass(jump_point);
    } else {
      std::vector<double> ys, dens;
      for (const auto& [y, d] : jump_table) {
        ys.push_back(y);
        dens.push_back(d);
      }
      j.distribution = JumpDistribution::tabulated(std::move(ys), std::move(dens));
    }
    const double k = jump_map_value;
    if (jump_map == "constant") {
      j.map = [k](double, double, double) { return k; };
      j.map_is_identity = false;
    } else if (jump_map == "scaled") {
      j.map = [k](double, double, double y) { return k * y; };
      j.map_is_identity = false;
    }
    j.tail_mass = quad_tail;
    if (quad_k1 || quad_k2) {
      if (!(quad_k1 && quad_k2)) throw ConfigError("quad_k1 and quad_k2 must be given together");
      j.terminals = std::make_pair(*quad_k1, *quad_k2);
    }
    p.jumps = std::move(j);
  }
  return p;
}

GridSpec RunConfig::grid() const {
  if (!(grid_l > 0)) throw ConfigError("grid_l must be positive");
  if (!(horizon > 0)) throw ConfigError("T must be positive");
  GridSpec g = GridSpec::from_steps(grid_l, grid_dx.value_or(0.02), horizon, grid_dt.value_or(0.02));
  if (grid_n) g.space_points = *grid_n;
  if (grid_m) g.time_points = *grid_m;
  return g;
}

std::vector<double> RunConfig::slices() const {
  if (!slice_times.empty()) return slice_times;
  std::vector<double> out;
  for (int k = 1; k <= 5; ++k) out.push_back(horizon * k / 5.0);
  return out;
}

}  // namespace carbon
