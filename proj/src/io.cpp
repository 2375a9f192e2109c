#include <carbon/io.hpp>

#include <algorithm>
#include <iomanip>

namespace carbon {

namespace {

struct Precision {
  explicit Precision(std::ostream& out) : out_(out), flags_(out.flags()), prec_(out.precision()) {
    out_ << std::defaultfloat << std::setprecision(17);
  }
  ~Precision() {
    out_.flags(flags_);
    out_.precision(prec_);
  }

 private:
  std::ostream& out_;
  std::ios::fmtflags flags_;
  std::streamsize prec_;
};

void x_header(std::ostream& out, const char* first, const GridSpec& grid) {
  out << first;
  for (int i = 0; i < grid.space_points; ++i) out << ',' << grid.x(i);
  out << '\n';
}

template <typename Row>
void values_row(std::ostream& out, const Row& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) out << ',' << row(i);
  out << '\n';
}

}  // namespace

void write_surface_csv(std::ostream& out, const PriceSurface& surface) {
  Precision p(out);
  const GridSpec& g = surface.grid();
  x_header(out, "tau", g);
  for (int n = surface.first_level(); n <= surface.last_level(); ++n) {
    out << g.tau(n);
    values_row(out, surface.level(n));
  }
}

void write_slices_csv(std::ostream& out, const PriceSurface& surface, const std::vector<double>& times) {
  Precision p(out);
  x_header(out, "t", surface.grid());
  for (double t : times) {
    out << t;
    values_row(out, surface.level(surface.level_for_time(t)));
  }
}

void write_call_prices_csv(std::ostream& out, const std::vector<CallPriceRow>& rows) {
  Precision p(out);
  out << "tau,pde_price,mc_mean,mc_ci_low,mc_ci_high\n";
  for (const auto& r : rows) {
    out << r.maturity << ',' << r.pde_price;
    if (r.mc)
      out << ',' << r.mc->mean << ',' << r.mc->ci_low() << ',' << r.mc->ci_high();
    else
      out << ",,,";
    out << '\n';
  }
}

void write_estimates_csv(std::ostream& out, const std::vector<CallPriceRow>& rows) {
  Precision p(out);
  out << "tau,mean,ci_low,ci_high,n,seed,exits\n";
  for (const auto& r : rows) {
    if (!r.mc) continue;
    out << r.maturity << ',' << r.mc->mean << ',' << r.mc->ci_low() << ',' << r.mc->ci_high() << ','
        << r.mc->n_samples << ',' << r.mc->seed << ',' << r.mc->exits << '\n';
  }
}

void write_path_csv(std::ostream& out, const SimulatedPath& path) {
  Precision p(out);
  out << "t,X,A,jump_flag\n";
  for (std::size_t k = 0; k < path.times.size(); ++k)
    out << path.times[k] << ',' << path.states[k] << ',' << path.prices[k] << ',' << (path.jump_counts[k] > 0 ? 1 : 0)
        << '\n';
}

void write_path_summary_csv(std::ostream& out, const SimulatedPath& path, std::uint64_t seed) {
  Precision p(out);
  const auto [xmin, xmax] = std::minmax_element(path.states.begin(), path.states.end());
  const auto [amin, amax] = std::minmax_element(path.prices.begin(), path.prices.end());
  int jumps = 0, steps_with_jumps = 0;
  for (int c : path.jump_counts) {
    jumps += c;
    steps_with_jumps += c > 0;
  }
  out << "key,value\n"
      << "seed," << seed << '\n'
      << "steps," << path.times.size() - 1 << '\n'
      << "t_start," << path.times.front() << '\n'
      << "t_end," << path.times.back() << '\n'
      << "x_start," << path.states.front() << '\n'
      << "x_end," << path.states.back() << '\n'
      << "x_min," << *xmin << '\n'
      << "x_max," << *xmax << '\n'
      << "a_start," << path.prices.front() << '\n'
      << "a_end," << path.prices.back() << '\n'
      << "a_min," << *amin << '\n'
      << "a_max," << *amax << '\n'
      << "jumps," << jumps << '\n'
      << "steps_with_jumps," << steps_with_jumps << '\n';
}

void write_truncation_csv(std::ostream& out, const TruncationReport& r) {
  Precision p(out);
  out << "kappa_T,zeta_T,l,eps1,eps2\n"
      << r.kappa_T << ',' << r.zeta_T << ',' << r.radius << ',' << r.eps_lower << ',' << r.eps_upper << '\n';
}

void print_truncation_table(std::ostream& out, const TruncationReport& r) {
  Precision p(out);
  out << std::setprecision(12) << std::left;
  out << std::setw(10) << "kappa_T" << r.kappa_T << '\n'
      << std::setw(10) << "zeta_T" << r.zeta_T << '\n'
      << std::setw(10) << "l" << r.radius << '\n'
      << std::setw(10) << "eps1" << r.eps_lower << '\n'
      << std::setw(10) << "eps2" << r.eps_upper << '\n';
  out << std::right;
}

void write_comparison_csv(std::ostream& out, const GridSpec& grid, const std::vector<ComparisonRow>& rows) {
  Precision p(out);
  out << "sigma,lambda";
  for (int i = 0; i < grid.space_points; ++i) out << ',' << grid.x(i);
  out << '\n';
  for (const auto& r : rows) {
    out << r.sigma << ',' << r.intensity;
    values_row(out, r.values);
  }
}

}  // namespace carbon
