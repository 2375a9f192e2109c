#pragma once

// Flat key = value run configuration. Blank lines and text after '#' are
// ignored; unknown or repeated keys are errors.
//
// Model:       T, penalty, sigma, sigma_x, growth_a, growth_b, x0
// Abatement:   abatement = linear | tabulated | quadratic_cost | power_cost,
//              abatement_c, abatement_table = "p:r, p:r, ...",
//              cost_c, cost_k, cost_p, cost_cap
// Jumps:       jump_intensity (0 disables), jump_dist = normal | point | tabulated,
//              jump_mean, jump_std, jump_point, jump_table = "y:density, ...",
//              jump_map = identity | constant | scaled, jump_map_value,
//              quad_k1, quad_k2, quad_tail
// Grid:        grid_l, grid_dx | grid_n, grid_dt | grid_m
// Truncation:  eps1, eps2
// Commands:    out_dir, seed, slice_times, strike, spot_price, valuation_time,
//              maturities, mc_paths, mc_dt, path_t_start, path_t_end,
//              path_x_start, compare_pairs = "sigma:lambda, ...", compare_time

#include <carbon/model.hpp>

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace carbon {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double horizon = 1.0;
  double penalty = 1.0;
  double sigma = 1.0;
  double sigma_x = 0.0;
  std::optional<double> growth_a;
  std::optional<double> growth_b;
  double x0 = 0.0;

  std::string abatement = "linear";
  double abatement_c = 1.0;
  std::vector<std::pair<double, double>> abatement_table;
  double cost_c = 1.0;
  double cost_k = 1.0;
  double cost_p = 2.0;
  double cost_cap = std::numeric_limits<double>::infinity();

  double jump_intensity = 0.0;
  std::string jump_dist = "normal";
  double jump_mean = 0.0;
  double jump_std = 1.0;
  double jump_point = 0.0;
  std::vector<std::pair<double, double>> jump_table;
  std::string jump_map = "identity";
  double jump_map_value = 1.0;
  std::optional<double> quad_k1;
  std::optional<double> quad_k2;
  double quad_tail = 1e-6;

  double grid_l = 20.0;
  std::optional<double> grid_dx;
  std::optional<int> grid_n;
  std::optional<double> grid_dt;
  std::optional<int> grid_m;

  double eps1 = 0.05;
  double eps2 = 0.05;

  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::vector<double> slice_times;  // empty: k T / 5, k = 1..5
  double strike = 0.0;
  double spot_price = 0.5;
  double valuation_time = 0.0;
  std::vector<double> maturities;
  std::size_t mc_paths = 10000;
  double mc_dt = 0.02;
  double path_t_start = 0.0;
  std::optional<double> path_t_end;
  std::optional<double> path_x_start;
  std::vector<std::pair<double, double>> compare_pairs;
  double compare_time = 0.8;

  ModelParams model() const;
  GridSpec grid() const;
  std::vector<double> slices() const;
};

/// Raw key/value pairs in file order, with their line numbers.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line;
};
std::vector<ConfigEntry> parse_key_values(std::istream& in);

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace carbon
