// carbon: batch front-end for allowance price surfaces, call prices,
// simulated paths, truncation radii and sensitivity slices.
//
//   carbon solve    --config run.cfg [--out DIR]
//   carbon price    --config run.cfg [--out DIR] [--seed N]
//   carbon simulate --config run.cfg [--out DIR] [--seed N]
//   carbon truncate --config run.cfg [--out DIR]
//   carbon compare  --config run.cfg [--out DIR]

#include <carbon/config.hpp>
#include <carbon/fd_engine.hpp>
#include <carbon/io.hpp>
#include <carbon/mc_engine.hpp>
#include <carbon/option_pricing.hpp>
#include <carbon/truncation.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace carbon;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

RunConfig prepare(const Options& opt) {
  RunConfig cfg = load_config(opt.config);
  if (!opt.out.empty()) cfg.out_dir = opt.out;
  if (opt.seed) cfg.seed = *opt.seed;
  require_valid(cfg.model(), cfg.grid());
  fs::create_directories(cfg.out_dir);
  return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  const fs::path path = fs::path(cfg.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return out;
}

void cmd_solve(const RunConfig& cfg) {
  const PriceSurface alpha = solve_surface(cfg.model(), cfg.grid());
  {
    auto out = open_out(cfg, "alpha_surface.csv");
    write_surface_csv(out, alpha);
  }
  auto out = open_out(cfg, "alpha_slices.csv");
  write_slices_csv(out, alpha, cfg.slices());
}

void cmd_price(const RunConfig& cfg) {
  const ModelParams params = cfg.model();
  const PriceSurface alpha = solve_surface(params, cfg.grid());
  std::vector<double> maturities = cfg.maturities;
  if (maturities.empty()) maturities.push_back(cfg.horizon);

  std::vector<CallPriceRow> rows;
  for (double tau : maturities) {
    const CallSpec spec{cfg.strike, tau, cfg.valuation_time};
    const CallSurface call = solve_call_surface(alpha, spec, params);
    CallPriceRow row{tau, price_call(alpha, call, cfg.valuation_time, cfg.spot_price), std::nullopt};
    if (cfg.mc_paths > 0) row.mc = price_call_mc(alpha, params, spec, cfg.spot_price, cfg.mc_paths, cfg.mc_dt, cfg.seed);
    std::cout << "tau = " << tau << "  pde = " << row.pde_price;
    if (row.mc) std::cout << "  mc = " << row.mc->mean << " +- " << row.mc->half_width_95;
    std::cout << '\n';
    rows.push_back(std::move(row));
  }
  {
    auto out = open_out(cfg, "call_prices.csv");
    write_call_prices_csv(out, rows);
  }
  if (cfg.mc_paths > 0) {
    auto out = open_out(cfg, "mc_estimates.csv");
    write_estimates_csv(out, rows);
  }
}

void cmd_simulate(const RunConfig& cfg) {
  const ModelParams params = cfg.model();
  const PriceSurface alpha = solve_surface(params, cfg.grid());
  PathOptions opt;
  opt.dt = cfg.mc_dt;
  opt.seed = cfg.seed;
  const SimulatedPath path = simulate_path(alpha, params, cfg.path_x_start.value_or(cfg.x0), cfg.path_t_start,
                                           cfg.path_t_end.value_or(cfg.horizon), opt);
  {
    auto out = open_out(cfg, "path.csv");
    write_path_csv(out, path);
  }
  auto out = open_out(cfg, "path_summary.csv");
  write_path_summary_csv(out, path, cfg.seed);
}

void cmd_truncate(const RunConfig& cfg) {
  const TruncationReport rep = truncation_report(TruncationInputs::from_model(cfg.model(), cfg.eps1, cfg.eps2));
  print_truncation_table(std::cout, rep);
  auto out = open_out(cfg, "truncation.csv");
  write_truncation_csv(out, rep);
}

void cmd_compare(const RunConfig& cfg) {
  if (cfg.compare_pairs.empty()) throw ConfigError("compare needs compare_pairs");
  std::vector<ComparisonRow> rows;
  for (const auto& [sigma, lambda] : cfg.compare_pairs) {
    RunConfig c = cfg;
    c.sigma = sigma;
    c.sigma_x = 0.0;
    c.growth_a.reset();
    c.growth_b.reset();
    c.jump_intensity = lambda;
    const PriceSurface alpha = solve_surface(c.model(), c.grid());
    rows.push_back({sigma, lambda, alpha.level(alpha.level_for_time(cfg.compare_time)).transpose()});
  }
  auto out = open_out(cfg, "comparison.csv");
  write_comparison_csv(out, cfg.grid(), rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emission allowance price surfaces and allowance call options"};
  app.require_subcommand(1);

  Options opt;
  struct Command {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&);
    bool seeded;
  };
  const Command commands[] = {
      {"solve", "Solve the allowance price surface; write alpha_surface.csv and alpha_slices.csv", cmd_solve, false},
      {"price", "Price calls over a maturity sweep by PDE and Monte Carlo; write call_prices.csv", cmd_price, true},
      {"simulate", "Simulate one state and price path; write path.csv", cmd_simulate, true},
      {"truncate", "Report the truncation radius; write truncation.csv", cmd_truncate, false},
      {"compare", "Slices alpha(t, .) for several (sigma, lambda); write comparison.csv", cmd_compare, false},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config, "key = value configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory (overrides out_dir)");
    if (c.seeded) sub->add_option("--seed", opt.seed, "Root seed (overrides seed)");
    sub->callback([&opt, run = c.run] { run(prepare(opt)); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "invalid configuration:\n" << e.report().to_string() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
